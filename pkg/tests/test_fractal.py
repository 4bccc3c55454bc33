import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tilepump.components.fractal import Generator, BridgeKind, PierKind, InvalidGeneratorException, \
    ResourceCapExceededException, NOT_APPLICABLE, CAP_ENV_VARIABLE, validate_generator, stage, scale, in_fractal, \
    bridges, bridge_counts, piers, classify, find_free_point_witnesses, equivalent_columns, \
    equivalent_vertical_cuts, pier_like_subconfigurations, stage_tree_predicate, enumerate_generators, \
    random_generator, point_cap
from tilepump.components.grid import Point, Direction


def test_validate_generator():
    """
    Testing the generator validity rules: origin, proper subset, no empty row or column, g >= 2
    """

    assert validate_generator(2, [(0, 0), (1, 0), (0, 1)]).g == 2

    with pytest.raises(InvalidGeneratorException):
        validate_generator(2, [(1, 0), (0, 1)])
    with pytest.raises(InvalidGeneratorException):
        validate_generator(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    with pytest.raises(InvalidGeneratorException):
        validate_generator(3, [(0, 0), (1, 1), (1, 0)])
    with pytest.raises(InvalidGeneratorException):
        validate_generator(1, [(0, 0)])
    with pytest.raises(InvalidGeneratorException):
        validate_generator(2, [(0, 0), (2, 1)])
    with pytest.raises(InvalidGeneratorException):
        Generator.from_dict({'g': 2})


def test_generator_dict(sierpinski):
    """
    Testing that the generator file schema is written back unchanged
    """

    data = sierpinski.to_dict()
    assert data == {'name': 'sierpinski', 'g': 2, 'points': [[0, 0], [0, 1], [1, 0]]}
    assert Generator.from_dict(data) == sierpinski


def test_stage_sizes(sierpinski):
    """
    Testing that stage s has |G|^s points and that scaling multiplies by c^2
    """

    assert stage(sierpinski, 1) == sierpinski.points
    assert len(stage(sierpinski, 3)) == 27
    assert len(scale(stage(sierpinski, 2), 2)) == 36
    assert Point(2, 0) in stage(sierpinski, 2)
    assert Point(3, 3) not in stage(sierpinski, 2)

    with pytest.raises(ValueError):
        stage(sierpinski, 0)


def test_point_cap(sierpinski, monkeypatch):
    """
    Testing the point budget: explicit cap, then environment variable, then default
    """

    monkeypatch.setenv(CAP_ENV_VARIABLE, '10')
    assert point_cap() == 10
    assert point_cap(100) == 100
    with pytest.raises(ResourceCapExceededException):
        stage(sierpinski, 3)
    assert len(stage(sierpinski, 3, cap=27)) == 27

    monkeypatch.delenv(CAP_ENV_VARIABLE)
    assert len(stage(sierpinski, 3)) == 27


@pytest.mark.parametrize('name', ['sierpinski', 'mixed_piers', 'cross', 'twin_columns'])
def test_membership_matches_stages(load_generator, name):
    """
    Testing that the membership oracle agrees with the explicit stage on its whole square, scaled and not
    """

    gen = load_generator(name)
    for c in (1, 2):
        points = scale(stage(gen, 2), c)
        side = c * gen.g ** 2
        for x in range(side):
            for y in range(side):
                assert in_fractal(gen, (x, y), c) == (Point(x, y) in points)
    assert not in_fractal(gen, (-1, 0))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3))
def test_scale_composition(a, b):
    """
    Testing that scaling by a then by b equals scaling by ab
    """

    points = stage(validate_generator(3, [(0, 0), (1, 0), (2, 0), (1, 1), (1, 2)]), 2)
    assert scale(scale(points, a), b) == scale(points, a * b)


def test_bridges(load_generator):
    """
    Testing bridges of the mixed-pier generator: one h-bridge on row 0, one v-bridge on column 4
    """

    found = bridges(load_generator('mixed_piers').points)
    assert [(bridge.kind, bridge.index) for bridge in found] == [(BridgeKind.HORIZONTAL, 0),
                                                                 (BridgeKind.VERTICAL, 4)]
    assert found[0].endpoints == (Point(0, 0), Point(4, 0))
    assert found[1].endpoints == (Point(4, 0), Point(4, 4))
    assert bridge_counts(load_generator('triple_bridge').points) == (3, 1)


def test_pier_kinds(load_generator):
    """
    Testing pier detection and pier kinds: real, orthogonal, parallel and double-bridge
    """

    found = {pier.location: (pier.kind, pier.pointing) for pier in piers(load_generator('mixed_piers'))}
    assert found == {
        Point(0, 0): (PierKind.ORTHOGONAL, Direction.S),
        Point(1, 4): (PierKind.REAL, Direction.N),
        Point(4, 0): (PierKind.DOUBLE, Direction.E),
        Point(4, 4): (PierKind.PARALLEL, Direction.N)
    }


def test_classify_sierpinski(sierpinski):
    """
    Testing that the Sierpinski triangle is a pier, tree and pinch-point fractal
    """

    fractal_class = classify(sierpinski)
    assert fractal_class.is_pier_fractal
    assert fractal_class.is_tree_fractal
    assert fractal_class.is_pinch_point_fractal
    assert (fractal_class.nhb, fractal_class.nvb) == (1, 1)
    assert fractal_class.to_dict()['piers'] == [{'location': [0, 1], 'pointing': 'N', 'kind': 'parallel-single-bridge'},
                                                {'location': [1, 0], 'pointing': 'E', 'kind': 'parallel-single-bridge'}]


def test_classify_multiple_bridges(load_generator):
    """
    Testing that three h-bridges and one v-bridge with a north-pointing pier satisfy the multiple-bridges variant
    """

    fractal_class = classify(load_generator('triple_bridge'))
    assert not fractal_class.is_pier_fractal
    assert fractal_class.satisfies_cor_multiple_bridges


def test_classify_equivalent_columns(load_generator):
    """
    Testing equivalent columns and cuts of the twin-columns generator
    """

    gen = load_generator('twin_columns')
    assert equivalent_columns(gen) == [(2, 3)]
    assert equivalent_vertical_cuts(gen) == [(1, 2), (1, 3), (2, 3)]
    fractal_class = classify(gen)
    assert not fractal_class.is_pier_fractal
    assert fractal_class.satisfies_cor_equiv_columns


def test_classify_disconnected():
    """
    Testing that a disconnected generator satisfies no class
    """

    fractal_class = classify(validate_generator(2, [(0, 0), (1, 1)]))
    assert not fractal_class.connected
    assert not any([fractal_class.is_pier_fractal,
                    fractal_class.is_tree_fractal,
                    fractal_class.is_pinch_point_fractal,
                    fractal_class.satisfies_cor_multiple_bridges,
                    fractal_class.satisfies_cor_pier_like,
                    fractal_class.satisfies_cor_equiv_columns,
                    fractal_class.satisfies_cor_equiv_rows])


def test_free_point_witnesses():
    """
    Testing the free-point scans on a generator with a floating top-right component
    """

    gen = validate_generator(4, [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (2, 3), (3, 3), (3, 2)])
    witnesses = find_free_point_witnesses(gen, {(2, 3), (3, 3), (3, 2)})
    assert witnesses.x_n == Point(3, 0)
    assert witnesses.x_ne == NOT_APPLICABLE
    assert witnesses.x_e == NOT_APPLICABLE

    with pytest.raises(ValueError):
        find_free_point_witnesses(gen, {(2, 3)})


def test_pier_like(sierpinski):
    """
    Testing that single-edge attachments are found, single pier points included
    """

    found = pier_like_subconfigurations(sierpinski)
    singles = {(item.attachment, item.pointing) for item in found if len(item.points) == 1}
    assert (Point(1, 0), Direction.E) in singles
    assert (Point(0, 1), Direction.N) in singles


def test_enumerate_generators():
    """
    Testing that there are four valid generators of side 2
    """

    assert len(list(enumerate_generators(2))) == 4


def test_tree_characterization():
    """
    Testing that the tree flag agrees with the explicit stage predicate on every g = 2 generator and on
    random g = 3 generators
    """

    rng = np.random.default_rng(0)
    generators = list(enumerate_generators(2)) + [random_generator(3, rng) for _ in range(100)]
    for gen in generators:
        is_tree = classify(gen).is_tree_fractal
        for s in (1, 2, 3):
            assert stage_tree_predicate(gen, s) == is_tree


def test_pier_fractals_have_usable_piers():
    """
    Testing on every generator of side 2 and 3 that a pier fractal has a pier outside the double-bridge kind
    """

    for g in (2, 3):
        for gen in enumerate_generators(g):
            fractal_class = classify(gen)
            if fractal_class.is_pier_fractal:
                assert any(pier.kind != PierKind.DOUBLE for pier in fractal_class.piers), gen.points


def test_tree_and_pinch_point_fractals_are_pier_fractals():
    """
    Testing that tree fractals and pinch-point fractals are pier fractals, on every g = 2 generator and on
    random g = 3 generators
    """

    rng = np.random.default_rng(1)
    generators = list(enumerate_generators(2)) + [random_generator(3, rng) for _ in range(200)]
    for gen in generators:
        fractal_class = classify(gen)
        if fractal_class.is_tree_fractal or fractal_class.is_pinch_point_fractal:
            assert fractal_class.is_pier_fractal, gen.points


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3), st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
def test_stages_grow(g, seed, s):
    """
    Testing that every stage contains the previous one, scaled or not
    """

    gen = random_generator(g, np.random.default_rng(seed))
    assert stage(gen, s).issubset(stage(gen, s + 1))
    assert scale(stage(gen, s), 2).issubset(scale(stage(gen, s + 1), 2))
