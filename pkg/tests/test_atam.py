from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from tilepump.components.atam import Glue, TileType, Assembly, TileSystem, Policy, HaltReason, Step, \
    AssemblySequence, InvalidTileSystemException, UnstableSeedException, InvalidStepException, NULL_GLUE, \
    SimulatorConfig, Simulator, VerifierConfig, SelfAssemblyVerifier, run, replay, frontier, is_stable, \
    min_cut_weight, strictly_self_assembles, unique_glue_system, tile_name, save_tile_system, load_tile_system
from tilepump.components.fractal import validate_generator, stage
from tilepump.components.grid import Point, Region, Direction, GridEdge

SEED = TileType(name='seed', east=Glue('a', 1))
ROD = TileType(name='rod', west=Glue('a', 1), east=Glue('a', 1))
CAP = TileType(name='cap', west=Glue('a', 1))
BLOCK = TileType(name='block', north=Glue('g', 1), east=Glue('g', 1), south=Glue('g', 1), west=Glue('g', 1))


@pytest.fixture
def line_system():
    return TileSystem(tiles=[SEED, ROD], seed={Point(0, 0): 'seed'}, temperature=1)


def block(width: int, height: int) -> Assembly:
    return Assembly({(x, y): 'block' for x in range(width) for y in range(height)}, {'block': BLOCK})


def test_glue_binding():
    """
    Testing that glues bind iff equal with positive strength
    """

    assert Glue('a', 1).binds(Glue('a', 1))
    assert not Glue('a', 1).binds(Glue('a', 2))
    assert not Glue('a', 1).binds(Glue('b', 1))
    assert not NULL_GLUE.binds(NULL_GLUE)


def test_tile_type_dict():
    """
    Testing that null sides are omitted from the tile type schema
    """

    assert SEED.to_dict() == {'name': 'seed', 'east': {'label': 'a', 'strength': 1}}
    assert TileType.from_dict(ROD.to_dict()) == ROD
    with pytest.raises(InvalidTileSystemException):
        TileType.from_dict({'name': 'bad', 'north': {'label': 'a', 'strength': -1}})


def test_invalid_tile_systems():
    """
    Testing tile system validation: unique names, positive temperature, known seed tiles
    """

    with pytest.raises(InvalidTileSystemException):
        TileSystem(tiles=[SEED, SEED], seed={Point(0, 0): 'seed'}, temperature=1)
    with pytest.raises(InvalidTileSystemException):
        TileSystem(tiles=[SEED], seed={Point(0, 0): 'seed'}, temperature=0)
    with pytest.raises(InvalidTileSystemException):
        TileSystem(tiles=[SEED], seed={Point(0, 0): 'other'}, temperature=1)
    with pytest.raises(InvalidTileSystemException):
        TileSystem.from_dict({'tiles': []})


def test_unstable_seed():
    """
    Testing that a two-tile seed held by a strength-1 bond is unstable at temperature 2
    """

    left = TileType(name='left', east=Glue('b', 1))
    right = TileType(name='right', west=Glue('b', 1))
    seed = {Point(0, 0): 'left', Point(1, 0): 'right'}
    with pytest.raises(UnstableSeedException):
        TileSystem(tiles=[left, right], seed=seed, temperature=2)
    assert len(TileSystem(tiles=[left, right], seed=seed, temperature=1).seed) == 2


def test_min_cut():
    """
    Testing minimum cuts on blocks below and above the exhaustive limit, and on a rod
    """

    assert min_cut_weight(block(2, 2)) == 2
    assert min_cut_weight(block(4, 5)) == 2
    assert min_cut_weight(block(5, 5)) == 2
    assert min_cut_weight(block(30, 1)) == 1
    assert is_stable(block(3, 3), 2)
    assert not is_stable(block(3, 3), 3)
    assert is_stable(block(1, 1), 5)


def test_lex_run(line_system):
    """
    Testing a rod growing east under a step cap
    """

    sequence = run(line_system, step_cap=10)
    assert len(sequence) == 10
    assert [s.position for s in sequence.steps] == [Point(x, 0) for x in range(1, 11)]
    assert sequence.halt_reason == HaltReason.STEP_CAP
    assert sequence.truncated
    assert sequence.dump().splitlines()[0] == '1 0 rod'
    assert sequence.placement_index(Point(0, 0)) == -1
    assert sequence.placement_index(Point(3, 0)) == 2
    assert sequence.placement_index(Point(0, 5)) is None


def test_placement_index_concurrent_reads(line_system):
    """
    Testing that placement indices are complete for readers on several threads from the start
    """

    sequence = run(line_system, step_cap=50)
    with ThreadPoolExecutor(max_workers=8) as executor:
        found = list(executor.map(sequence.placement_index, [Point(x, 0) for x in range(52)]))
    assert found == [-1] + list(range(50)) + [None]


def random_system(
        rng: np.random.Generator
) -> TileSystem:
    def glue() -> Glue:
        strength = int(rng.integers(3))
        return Glue(str(rng.choice(['a', 'b', 'c'])), strength) if strength else NULL_GLUE

    tiles = [TileType(name=f't{index}', north=glue(), east=glue(), south=glue(), west=glue()) for index in range(4)]
    return TileSystem(tiles=tiles, seed={Point(0, 0): 't0'}, temperature=int(rng.integers(1, 3)))


def test_random_runs_replay_and_are_stable():
    """
    Testing on random tile systems that every run replays step by step and ends in a stable assembly
    """

    rng = np.random.default_rng(7)
    for index in range(60):
        system = random_system(rng)
        sequence = run(system, policy=Policy.RANDOM, step_cap=30, region=Region(-4, -4, 4, 4), seed=index)
        assert replay(system, sequence.steps) == sequence.result
        assert is_stable(sequence.result, system.temperature)
        assert len(sequence.result) == len(sequence) + 1


def test_region_and_terminal_runs(line_system):
    """
    Testing that region-limited runs halt with a non-empty frontier and terminal runs halt without one
    """

    sequence = run(line_system, region=Region(0, 0, 4, 0))
    assert len(sequence) == 4
    assert sequence.halt_reason == HaltReason.REGION
    assert sequence.truncated

    terminal = TileSystem(tiles=[SEED, CAP], seed={Point(0, 0): 'seed'}, temperature=1)
    sequence = run(terminal)
    assert len(sequence) == 1
    assert sequence.halt_reason == HaltReason.TERMINAL
    assert not sequence.truncated
    assert frontier(sequence.result, terminal) == {}


def test_random_run_determinism():
    """
    Testing that random runs with the same seed are identical
    """

    system = unique_glue_system(stage(validate_generator(2, [(0, 0), (1, 0), (0, 1)]), 3))
    first = run(system, policy=Policy.RANDOM, seed=3)
    second = run(system, policy='random', seed=3)
    assert first.steps == second.steps
    assert first.result.domain == run(system).result.domain


def test_replay(line_system):
    """
    Testing replay on valid steps and on each kind of invalid step
    """

    steps = [Step(Point(1, 0), 'rod'), Step(Point(2, 0), 'rod')]
    assert replay(line_system, steps).domain == {Point(0, 0), Point(1, 0), Point(2, 0)}

    with pytest.raises(InvalidStepException) as error:
        replay(line_system, [(Point(1, 0), 'missing')])
    assert error.value.reason == InvalidStepException.UNKNOWN_TILE

    with pytest.raises(InvalidStepException) as error:
        replay(line_system, [(Point(0, 0), 'rod')])
    assert error.value.reason == InvalidStepException.OCCUPIED

    with pytest.raises(InvalidStepException) as error:
        replay(line_system, [(Point(1, 0), 'rod'), (Point(5, 0), 'rod')])
    assert error.value.reason == InvalidStepException.INSUFFICIENT_STRENGTH
    assert error.value.index == 1


def test_sequence_from_steps(line_system):
    """
    Testing that explicit steps are validated and flagged as truncated when growth could continue
    """

    sequence = AssemblySequence.from_steps(line_system, [((1, 0), 'rod'), ((2, 0), 'rod')])
    assert len(sequence) == 2
    assert sequence.truncated
    assert sequence.result[(2, 0)] == 'rod'


def test_unique_glue_system():
    """
    Testing that the unique-glue system of a stage strictly self-assembles it under lex and random runs
    """

    points = stage(validate_generator(2, [(0, 0), (1, 0), (0, 1)]), 3)
    system = unique_glue_system(points)
    assert system.temperature == 1
    assert len(system.tiles) == 27
    assert len(system.glue_types()) == 26

    verdict = strictly_self_assembles(system, points, Region.square(8),
                                      runs=[(Policy.LEX, None), (Policy.RANDOM, 0), (Policy.RANDOM, 1)])
    assert verdict.consistent
    assert verdict.runs == 3
    assert verdict.truncated_runs == 0


def test_unique_glue_labels():
    """
    Testing that explicit labels override the per-edge glue labels
    """

    edge = GridEdge.of((0, 0), (1, 0))
    system = unique_glue_system({(0, 0), (1, 0), (0, 1)}, labels={edge: 'shared'})
    assert system.tile_types[tile_name(Point(0, 0))].side(Direction.E) == Glue('shared', 1)
    assert system.tile_types[tile_name(Point(1, 0))].side(Direction.W) == Glue('shared', 1)
    assert system.tile_types[tile_name(Point(0, 0))].side(Direction.N) == Glue('0_0__0_1', 1)


def test_verifier_counterexamples(line_system):
    """
    Testing that the verifier reports missing and extra points against a wrong target
    """

    verifier = SelfAssemblyVerifier(config=VerifierConfig.get_default())
    verdict = verifier.run(line_system, target={(0, 0), (1, 0), (0, 1)}, region=Region(0, 0, 2, 1))
    assert not verdict.consistent
    assert verdict.runs == 5
    counterexample = verdict.counterexamples[0]
    assert counterexample.missing == {Point(0, 1)}
    assert counterexample.extra == {Point(2, 0)}
    assert counterexample.to_dict()['policy'] == 'lex'


def test_simulator_component(line_system):
    """
    Testing that the simulator component runs with its configured policy and cap
    """

    simulator = Simulator(config=SimulatorConfig.get_default().get_delta_copy(params={'step_cap': 3}))
    sequence = simulator.run(line_system)
    assert len(sequence) == 3
    assert sequence.policy == Policy.LEX


def test_tile_system_file(line_system, tmp_path):
    """
    Testing that tile system files are written as plain JSON and read back unchanged
    """

    path = tmp_path.joinpath('line.json')
    save_tile_system(path, line_system)
    loaded = load_tile_system(path)
    assert loaded.to_dict() == line_system.to_dict()

    save_tile_system(tmp_path.joinpath('again.json'), loaded)
    assert path.read_text() == tmp_path.joinpath('again.json').read_text()
    assert 'py/object' not in path.read_text()
