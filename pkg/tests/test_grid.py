import pytest
from hypothesis import given, strategies as st

from tilepump.components.grid import Point, Direction, GridEdge, Region, EmptyPointSetException, \
    PointNotInSetException, extents, is_connected, connected_components, simple_path_exists, is_acyclic, cut_edges, \
    translate, transpose, full_grid_graph

point_sets = st.frozensets(st.tuples(st.integers(0, 6), st.integers(0, 6)).map(lambda p: Point(*p)),
                           min_size=1,
                           max_size=20)


def test_extents():
    """
    Testing bounding extents of a point set
    """

    box = extents([(1, 2), (4, 0), (3, 5)])
    assert (box.l, box.r, box.b, box.t) == (1, 4, 0, 5)
    assert box.width == 4
    assert box.height == 6

    with pytest.raises(EmptyPointSetException):
        extents([])


def test_connectivity():
    """
    Testing connectivity, components and paths of the full grid graph
    """

    l_shape = {(0, 0), (1, 0), (0, 1)}
    assert is_connected(l_shape)
    assert not is_connected({(0, 0), (1, 1)})
    assert connected_components({(3, 3), (0, 0), (0, 1)}) == [frozenset({(0, 0), (0, 1)}), frozenset({(3, 3)})]

    assert simple_path_exists(l_shape, (1, 0), (0, 1))
    assert not simple_path_exists({(0, 0), (2, 0)}, (0, 0), (2, 0))
    with pytest.raises(PointNotInSetException):
        simple_path_exists(l_shape, (0, 0), (5, 5))
    with pytest.raises(EmptyPointSetException):
        is_connected(set())


def test_acyclicity():
    """
    Testing the forest criterion: a 2x2 block has a cycle, an L shape does not
    """

    assert is_acyclic({(0, 0), (1, 0), (0, 1)})
    assert not is_acyclic({(0, 0), (1, 0), (0, 1), (1, 1)})
    assert is_acyclic({(0, 0), (5, 5)})


def test_full_grid_graph():
    """
    Testing that only unit-distance pairs are joined
    """

    graph = full_grid_graph({(0, 0), (1, 0), (1, 1), (3, 3)})
    assert graph.number_of_nodes() == 4
    assert graph.number_of_edges() == 2


def test_cut_edges():
    """
    Testing the cut of a single cell and of a 2x2 square
    """

    assert len(cut_edges({Point(0, 0)})) == 4
    square = Region(0, 0, 1, 1).points()
    edges = cut_edges(square)
    assert len(edges) == 8
    assert GridEdge.of((1, 0), (2, 0)) in edges
    assert GridEdge.of((0, -1), (0, 0)) in edges


def test_grid_edge_normalization():
    """
    Testing that grid edges store the smaller endpoint first and reject non-adjacent endpoints
    """

    assert GridEdge.of((1, 0), (0, 0)) == GridEdge(Point(0, 0), Point(1, 0))
    assert GridEdge.of((0, 1), (0, 0)).is_horizontal is False
    with pytest.raises(ValueError):
        GridEdge.of((0, 0), (1, 1))


def test_directions():
    """
    Testing direction vectors, inverses and the lexicographic order W, S, N, E
    """

    assert Direction.N.vector == Point(0, 1)
    assert Direction.E.inverse == Direction.W
    assert Direction.from_vector((0, -1)) == Direction.S
    assert Direction.lexicographic() == [Direction.W, Direction.S, Direction.N, Direction.E]


def test_region_parse():
    """
    Testing region parsing and membership
    """

    region = Region.parse('1,2,3,4')
    assert (2, 3) in region
    assert (0, 3) not in region
    assert len(region.points()) == 9
    assert Region.square(4) == Region(0, 0, 3, 3)

    with pytest.raises(ValueError):
        Region.parse('1,2,3')
    with pytest.raises(ValueError):
        Region.parse('3,0,1,0')


@given(point_sets)
def test_components_partition(points):
    """
    Testing that connected components partition the point set into connected, mutually non-adjacent pieces
    """

    components = connected_components(points)
    assert frozenset().union(*components) == points
    assert sum(len(component) for component in components) == len(points)
    for component in components:
        assert is_connected(component)
    for index, component in enumerate(components):
        for other in components[index + 1:]:
            assert not any(abs(p.x - q.x) + abs(p.y - q.y) == 1 for p in component for q in other)


@given(point_sets, st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_translation_invariance(points, vector):
    """
    Testing that translation and transposition preserve connectivity and cut size
    """

    moved = translate(points, vector)
    assert is_connected(moved) == is_connected(points)
    assert len(cut_edges(moved)) == len(cut_edges(points))
    assert is_acyclic(transpose(points)) == is_acyclic(points)
