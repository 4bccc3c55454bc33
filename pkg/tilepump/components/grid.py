"""
Integer lattice geometry: points, the four directions, full grid graphs, connectivity and cuts.
"""

from __future__ import annotations

from enum import Enum
from typing import AbstractSet, Iterable, List, NamedTuple, FrozenSet, Set

import networkx as nx


class EmptyPointSetException(Exception):

    def __init__(
            self,
            operation: str
    ):
        super().__init__(f'{operation} requires a non-empty point set')


class PointNotInSetException(Exception):

    def __init__(
            self,
            point: Point
    ):
        super().__init__(f'Point {tuple(point)} does not belong to the given point set')


class Point(NamedTuple):
    x: int
    y: int

    def __add__(
            self,
            other: Iterable[int]
    ) -> Point:
        ox, oy = other
        return Point(self.x + ox, self.y + oy)

    def __sub__(
            self,
            other: Iterable[int]
    ) -> Point:
        ox, oy = other
        return Point(self.x - ox, self.y - oy)

    def __neg__(
            self
    ) -> Point:
        return Point(-self.x, -self.y)

    def scaled(
            self,
            factor: int
    ) -> Point:
        return Point(self.x * factor, self.y * factor)

    def transposed(
            self
    ) -> Point:
        return Point(self.y, self.x)


ORIGIN = Point(0, 0)


class Direction(Enum):
    N = (0, 1)
    E = (1, 0)
    S = (0, -1)
    W = (-1, 0)

    @property
    def vector(
            self
    ) -> Point:
        return Point(*self.value)

    @property
    def inverse(
            self
    ) -> Direction:
        return _INVERSES[self]

    @property
    def is_vertical(
            self
    ) -> bool:
        return self in (Direction.N, Direction.S)

    @classmethod
    def from_vector(
            cls,
            vector: Iterable[int]
    ) -> Direction:
        return cls(tuple(vector))

    @classmethod
    def lexicographic(
            cls
    ) -> List[Direction]:
        """
        Directions sorted by their unit vector, x first then y: W, S, N, E.
        """
        return sorted(cls, key=lambda direction: direction.value)


_INVERSES = {
    Direction.N: Direction.S,
    Direction.S: Direction.N,
    Direction.E: Direction.W,
    Direction.W: Direction.E
}


def step(
        p: Point,
        d: Direction
) -> Point:
    """
    Returns the neighbor of ``p`` in direction ``d``.
    """
    return Point(p[0] + d.value[0], p[1] + d.value[1])


def neighbors(
        p: Point
) -> List[Point]:
    return [step(p, d) for d in Direction]


class GridEdge(NamedTuple):
    """
    A unit-length edge of the lattice, stored with the lexicographically smaller endpoint first.
    """

    a: Point
    b: Point

    @classmethod
    def of(
            cls,
            u: Iterable[int],
            v: Iterable[int]
    ) -> GridEdge:
        u, v = Point(*u), Point(*v)
        if abs(u.x - v.x) + abs(u.y - v.y) != 1:
            raise ValueError(f'{tuple(u)} and {tuple(v)} are not adjacent')
        return cls(u, v) if u <= v else cls(v, u)

    def translate(
            self,
            vector: Iterable[int]
    ) -> GridEdge:
        return GridEdge(self.a + vector, self.b + vector)

    @property
    def is_horizontal(
            self
    ) -> bool:
        return self.a.y == self.b.y


class BoundingExtents(NamedTuple):
    l: int
    r: int
    b: int
    t: int

    @property
    def width(
            self
    ) -> int:
        return self.r - self.l + 1

    @property
    def height(
            self
    ) -> int:
        return self.t - self.b + 1


class Region(NamedTuple):
    """
    An axis-aligned box of lattice points, bounds included.
    """

    x0: int
    y0: int
    x1: int
    y1: int

    def __contains__(
            self,
            item
    ) -> bool:
        x, y = item
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def points(
            self
    ) -> FrozenSet[Point]:
        return frozenset(Point(x, y) for x in range(self.x0, self.x1 + 1) for y in range(self.y0, self.y1 + 1))

    @classmethod
    def square(
            cls,
            side: int
    ) -> Region:
        """
        The box {0, ..., side - 1}^2.
        """
        return cls(0, 0, side - 1, side - 1)

    @classmethod
    def parse(
            cls,
            text: str
    ) -> Region:
        """
        Parses ``x0,y0,x1,y1``.

        Raises:
            ``ValueError``: if the text is malformed or the box is empty.
        """
        parts = [int(part) for part in text.split(',')]
        if len(parts) != 4:
            raise ValueError(f'Expected x0,y0,x1,y1, got {text}')
        region = cls(*parts)
        if region.x0 > region.x1 or region.y0 > region.y1:
            raise ValueError(f'Empty region {text}')
        return region


def extents(
        v: Iterable[Iterable[int]]
) -> BoundingExtents:
    """
    Computes the bounding extents l, r, b, t of a finite non-empty point set.

    Raises:
        ``EmptyPointSetException``: if ``v`` is empty.
    """
    points = [Point(*p) for p in v]
    if not points:
        raise EmptyPointSetException(operation='extents')
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return BoundingExtents(l=min(xs), r=max(xs), b=min(ys), t=max(ys))


def as_points(
        v: Iterable[Iterable[int]]
) -> FrozenSet[Point]:
    return frozenset(Point(*p) for p in v)


def full_grid_graph(
        v: Iterable[Iterable[int]]
) -> nx.Graph:
    """
    Builds the full grid graph of ``v``: an edge joins every pair of points at unit distance.

    Args:
        v: a finite point set

    Returns:
        The undirected graph whose nodes are the points of ``v``
    """
    points = as_points(v)
    graph = nx.Graph()
    graph.add_nodes_from(sorted(points))
    for p in points:
        for d in (Direction.E, Direction.N):
            q = step(p, d)
            if q in points:
                graph.add_edge(p, q)
    return graph


def is_connected(
        v: Iterable[Iterable[int]]
) -> bool:
    """
    Returns True iff the full grid graph of ``v`` is connected.

    Raises:
        ``EmptyPointSetException``: if ``v`` is empty.
    """
    graph = full_grid_graph(v)
    if graph.number_of_nodes() == 0:
        raise EmptyPointSetException(operation='is_connected')
    return nx.is_connected(graph)


def connected_components(
        v: Iterable[Iterable[int]]
) -> List[FrozenSet[Point]]:
    """
    Partitions ``v`` into maximal connected subsets, ordered by their lexicographically smallest member.
    """
    graph = full_grid_graph(v)
    components = [frozenset(component) for component in nx.connected_components(graph)]
    return sorted(components, key=min)


def simple_path_exists(
        v: Iterable[Iterable[int]],
        a: Iterable[int],
        b: Iterable[int]
) -> bool:
    """
    Returns True iff ``a`` and ``b`` lie in the same connected component of the full grid graph of ``v``.

    Raises:
        ``PointNotInSetException``: if ``a`` or ``b`` is not in ``v``.
    """
    graph = full_grid_graph(v)
    a, b = Point(*a), Point(*b)
    for endpoint in (a, b):
        if endpoint not in graph:
            raise PointNotInSetException(point=endpoint)
    return nx.has_path(graph, a, b)


def is_acyclic(
        v: Iterable[Iterable[int]]
) -> bool:
    """
    Forest criterion: the full grid graph of ``v`` has no cycle iff |edges| = |vertices| - components.
    """
    graph = full_grid_graph(v)
    return graph.number_of_edges() == graph.number_of_nodes() - nx.number_connected_components(graph)


def cut_edges(
        inside: AbstractSet[Point]
) -> List[GridEdge]:
    """
    All grid edges with exactly one endpoint in ``inside``, sorted.
    """
    edges: Set[GridEdge] = set()
    for p in inside:
        for q in neighbors(p):
            if q not in inside:
                edges.add(GridEdge.of(p, q))
    return sorted(edges)


def translate(
        v: Iterable[Iterable[int]],
        vector: Iterable[int]
) -> FrozenSet[Point]:
    dx, dy = vector
    return frozenset(Point(p[0] + dx, p[1] + dy) for p in v)


def transpose(
        v: Iterable[Iterable[int]]
) -> FrozenSet[Point]:
    return frozenset(Point(p[1], p[0]) for p in v)


__all__ = [
    'Point',
    'ORIGIN',
    'Direction',
    'GridEdge',
    'BoundingExtents',
    'Region',
    'EmptyPointSetException',
    'PointNotInSetException',
    'step',
    'neighbors',
    'extents',
    'as_points',
    'full_grid_graph',
    'is_connected',
    'connected_components',
    'simple_path_exists',
    'is_acyclic',
    'cut_edges',
    'translate',
    'transpose'
]
