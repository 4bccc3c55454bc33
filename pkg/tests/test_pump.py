import pytest

from tilepump.components.atam import Glue, TileType, TileSystem, AssemblySequence, Policy, run, replay, \
    unique_glue_system
from tilepump.components.fractal import NotPierFractalException, validate_generator, stage, scale
from tilepump.components.grid import Point, Direction, Region
from tilepump.components.pump import NO_MATCH_NOTE, PreconditionViolatedException, SpliceInput, RefuterConfig, \
    Refuter, RefutationReport, NoMatchReport, splice, pigeonhole_bound, find_matching_windows, grow, refute, \
    shared_glue_system
from tilepump.components.windows import ClosedWindow, WindowAnchor, AnchorKind, select_anchor

SEED = TileType(name='seed', east=Glue('a', 1))
ROD = TileType(name='rod', west=Glue('a', 1), east=Glue('a', 1))


@pytest.fixture
def rod_system():
    return TileSystem(tiles=[SEED, ROD], seed={Point(0, 0): 'seed'}, temperature=1)


def window(x0: int, x1: int) -> ClosedWindow:
    return ClosedWindow.from_region(Region(x0, 0, x1, 0))


def test_splice_rod_fixed_point(rod_system):
    """
    Testing that splicing a rod across two matching windows gives back the same rod
    """

    sequence = AssemblySequence.from_steps(rod_system, [((x, 0), 'rod') for x in range(1, 10)])
    spliced = splice(SpliceInput(sequence=sequence, w=window(2, 3), w_prime=window(6, 7), c_vec=Point(4, 0)))
    assert spliced.replay_ok
    assert not spliced.mirrored
    assert spliced.result == sequence.result
    assert len(spliced.gamma_steps) == 9


def test_splice_moves_inside(rod_system):
    """
    Testing that the tiles inside the first window replace the tiles inside the second one
    """

    marked = TileType(name='marked', west=Glue('a', 1), east=Glue('a', 1))
    other = TileType(name='other', west=Glue('a', 1), east=Glue('a', 1))
    system = TileSystem(tiles=[SEED, ROD, marked, other], seed={Point(0, 0): 'seed'}, temperature=1)
    names = {2: 'marked', 3: 'marked', 6: 'other', 7: 'other'}
    sequence = AssemblySequence.from_steps(system, [((x, 0), names.get(x, 'rod')) for x in range(1, 10)])

    spliced = splice(SpliceInput(sequence=sequence, w=window(2, 3), w_prime=window(6, 7), c_vec=Point(4, 0)))
    assert spliced.result[(6, 0)] == 'marked'
    assert spliced.result[(7, 0)] == 'marked'
    assert spliced.result[(2, 0)] == 'marked'
    assert spliced.result[(8, 0)] == 'rod'
    assert spliced.result.domain == sequence.result.domain


def test_splice_preconditions(rod_system):
    """
    Testing that each violated precondition is reported with its reason, enclosure first
    """

    sequence = AssemblySequence.from_steps(rod_system, [((x, 0), 'rod') for x in range(1, 10)])

    with pytest.raises(PreconditionViolatedException) as error:
        splice(SpliceInput(sequence=sequence, w=window(2, 3), w_prime=window(7, 8), c_vec=Point(4, 0)))
    assert error.value.reason == PreconditionViolatedException.ENCLOSURE

    with pytest.raises(PreconditionViolatedException) as error:
        splice(SpliceInput(sequence=sequence, w=window(2, 3), w_prime=window(5, 8), c_vec=Point(4, 0)))
    assert error.value.reason == PreconditionViolatedException.MOVIES

    with pytest.raises(PreconditionViolatedException) as error:
        splice(SpliceInput(sequence=sequence, w=window(2, 3), w_prime=window(2, 3), c_vec=Point(0, 0)))
    assert error.value.reason == PreconditionViolatedException.MOVIES

    long_seed = TileSystem(tiles=[ROD], seed={Point(x, 0): 'rod' for x in range(8)}, temperature=1)
    sequence = AssemblySequence.from_steps(long_seed, [((8, 0), 'rod'), ((9, 0), 'rod')])
    with pytest.raises(PreconditionViolatedException) as error:
        splice(SpliceInput(sequence=sequence, w=window(2, 3), w_prime=window(6, 7), c_vec=Point(4, 0)))
    assert error.value.reason == PreconditionViolatedException.SEED


def test_mirrored_splice(rod_system):
    """
    Testing the splice of two windows both holding the seed: the outside of the larger window is pulled back
    """

    anchor = WindowAnchor(pier=Point(0, 0),
                          free_point=Point(0, 0),
                          pier_direction=Direction.W,
                          bridge_point=Point(1, 0))
    sequence = run(rod_system, step_cap=5)

    search = find_matching_windows(sequence, anchor, c=1, g=2, s_max=3)
    assert search.match is not None
    assert (search.match.i, search.match.j) == (2, 3)
    assert search.match.c_vec == Point(1, 0)
    assert search.distinct_submovies == 1
    assert search.pigeonhole_bound == 2

    spliced = splice(SpliceInput(sequence=sequence, w=search.match.w, w_prime=search.match.w_prime,
                                 c_vec=search.match.c_vec))
    assert spliced.mirrored
    assert spliced.produced.domain == frozenset(Point(x, 0) for x in range(5))
    assert spliced.produced == replay(rod_system, spliced.gamma_steps)

    # outside of the larger window joined with the inside of the smaller one moved by c
    assert spliced.result.domain == frozenset(Point(x, 0) for x in range(1, 6))
    assert spliced.result == spliced.produced.translate(search.match.c_vec)


def test_splice_domain(sierpinski):
    """
    Testing that the spliced result is the outside of the larger window joined with the moved inside of the
    smaller one, and that the two parts do not overlap
    """

    system = shared_glue_system(sierpinski, 1, 3)
    sequence = grow(system, Region.square(8), target=stage(sierpinski, 3))
    search = find_matching_windows(sequence, select_anchor(sierpinski, 1), c=1, g=2, s_max=3)
    pair = search.match
    spliced = splice(SpliceInput(sequence=sequence, w=pair.w, w_prime=pair.w_prime, c_vec=pair.c_vec))

    alpha = sequence.result
    outside = alpha.exclude(pair.w_prime.inside)
    moved = alpha.restrict(pair.w.inside).translate(pair.c_vec)
    assert outside.domain.isdisjoint(moved.domain)
    assert spliced.result.domain == outside.domain | moved.domain
    assert spliced.result == outside.union(moved)
    assert spliced.produced == spliced.result


def test_pigeonhole_bound(sierpinski):
    """
    Testing the pigeonhole bound on the number of distinct bond-forming submovies
    """

    system = unique_glue_system(stage(sierpinski, 3))
    assert pigeonhole_bound(system, 1) == 26 ** 2 * 2
    assert pigeonhole_bound(system, 2) == 26 ** 4 * 24


def test_grow(rod_system):
    """
    Testing that growth is confined to the region and capped by its area by default
    """

    sequence = grow(rod_system, Region(0, 0, 3, 0), target=frozenset())
    assert len(sequence) == 3
    assert sequence.truncated

    sequence = grow(rod_system, Region(0, 0, 9, 0), target=frozenset(), policy=Policy.RANDOM, attempts=3)
    assert sequence.seed == 2
    assert len(sequence) == 9


def test_shared_glue_system(sierpinski):
    """
    Testing that the anchor contact edges of every stage share one glue label
    """

    unique = unique_glue_system(scale(stage(sierpinski, 3), 1))
    shared = shared_glue_system(sierpinski, 1, 3)
    assert len(shared.tiles) == len(unique.tiles) == 27
    assert len(shared.glue_types()) == 25
    assert Glue('anchor0', 1) in shared.glue_types()


def test_refute_shared_glues(sierpinski):
    """
    Testing that a system reusing glues across stage windows is refuted with a non-empty domain difference
    """

    report = refute(shared_glue_system(sierpinski, 1, 3), sierpinski, c=1, s_max=3)
    assert isinstance(report, RefutationReport)
    assert report.refutes
    assert report.stages == (2, 3)
    assert report.c_vec == Point(2, 1)
    assert report.anchor == select_anchor(sierpinski, 1)
    assert {Point(5, 2), Point(4, 3)}.issubset(report.missing)
    assert not report.spliced.mirrored

    data = report.to_dict()
    assert data['result'] == 'refutation'
    assert data['c_vec'] == [2, 1]
    assert data['replay_ok']
    assert [5, 2] in data['domain_diff']['missing']


@pytest.mark.parametrize('name', ['sierpinski', 'cross', 'mixed_piers'])
@pytest.mark.parametrize('c', [1, 2])
def test_refute_corpus_pier_fractals(load_generator, name, c):
    """
    Testing that every corpus pier fractal, scaled or not, is refuted across its stage 2 and stage 3 windows
    """

    generator = load_generator(name)
    report = refute(shared_glue_system(generator, c, 3), generator, c=c, s_max=3)
    assert isinstance(report, RefutationReport)
    assert report.stages == (2, 3)
    assert report.anchor.kind == AnchorKind.MAIN
    assert report.spliced.replay_ok
    assert report.refutes


def test_refute_pier_like(load_generator):
    """
    Testing that a generator without piers is refuted through its north-pointing pier-like block
    """

    ladder = load_generator('ladder')
    report = refute(shared_glue_system(ladder, 1, 3), ladder, c=1, s_max=3)
    assert isinstance(report, RefutationReport)
    assert report.anchor.kind == AnchorKind.PIER_LIKE
    assert report.anchor.pier == Point(3, 3)
    assert report.stages == (2, 3)
    assert report.c_vec == Point(19, 18)
    assert report.refutes
    assert not report.spliced.mirrored


def test_refute_unique_glues(sierpinski):
    """
    Testing that the unique-glue system yields no match and an explicit note
    """

    system = unique_glue_system(scale(stage(sierpinski, 3), 1))
    report = refute(system, sierpinski, c=1, s_max=3, jobs=2)
    assert isinstance(report, NoMatchReport)
    assert report.note == NO_MATCH_NOTE
    assert report.distinct_submovies == 2
    assert report.submovies == 2
    assert report.pigeonhole_bound == pigeonhole_bound(system, 1)

    data = report.to_dict()
    assert data['result'] == 'no-match'
    assert len(data['anchors']) == 1
    assert not data['searches'][0]['matched']


def test_refute_not_pier_fractal(rod_system):
    """
    Testing that generators admitting no anchor are rejected
    """

    with pytest.raises(NotPierFractalException):
        refute(rod_system, validate_generator(2, [(0, 0), (1, 1)]), c=1, s_max=3)


def test_refuter_component(sierpinski):
    """
    Testing that the refuter component forwards its configuration
    """

    config = RefuterConfig.get_default()
    config.validate()
    refuter = Refuter(config=config)
    assert isinstance(refuter.run(shared_glue_system(sierpinski, 1, 3), sierpinski), RefutationReport)

    refuter = Refuter(config=config.get_delta_copy(params={'policy': 'random', 'attempts': 2}))
    assert refuter.attempts == 2
    assert refuter.policy == 'random'
