"""
Discrete self-similar fractals: generators, stages, scaling, bridges, piers and the classification predicates.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union, Any

import networkx as nx
import numpy as np

from tilepump.components.grid import Point, Direction, step, extents, as_points, full_grid_graph, \
    is_connected, is_acyclic, connected_components, transpose
from tilepump.utility import logging_utility
from tilepump.utility.printing_utility import prettify_statistics

DEFAULT_POINT_CAP = 10 ** 6
CAP_ENV_VARIABLE = 'TILEPUMP_CAP'
NOT_APPLICABLE = 'not applicable'


class InvalidGeneratorException(Exception):

    def __init__(
            self,
            reason: str
    ):
        super().__init__(f'Invalid generator: {reason}')
        self.reason = reason


class ResourceCapExceededException(Exception):

    def __init__(
            self,
            requested: int,
            cap: int
    ):
        super().__init__(f'Requested {requested} points, which exceeds the configured cap of {cap} points '
                         f'(set {CAP_ENV_VARIABLE} or --cap to raise it)')
        self.requested = requested
        self.cap = cap


class NotPierFractalException(Exception):

    def __init__(
            self,
            details: str = ''
    ):
        super().__init__(f'The generator does not define a pier fractal{": " + details if details else ""}')


class AnchorNotFoundException(Exception):

    def __init__(
            self,
            details: str
    ):
        super().__init__(f'Could not find a window anchor: {details}')


def point_cap(
        cap: Optional[int] = None
) -> int:
    """
    Resolves the point budget: an explicit ``cap`` wins, then the ``TILEPUMP_CAP`` environment variable,
    then ``DEFAULT_POINT_CAP``.
    """
    if cap is not None:
        return cap
    env_cap = os.environ.get(CAP_ENV_VARIABLE)
    if env_cap is not None and env_cap.strip():
        return int(env_cap)
    return DEFAULT_POINT_CAP


@dataclass(frozen=True)
class Generator:
    """
    A validated generator: a proper subset of the g x g grid containing the origin and hitting every row and column.
    Built through ``validate_generator``.
    """

    g: int
    points: FrozenSet[Point]
    name: Optional[str] = field(default=None, compare=False)

    def __contains__(
            self,
            item
    ) -> bool:
        return Point(*item) in self.points

    def __len__(
            self
    ) -> int:
        return len(self.points)

    def __iter__(
            self
    ) -> Iterator[Point]:
        return iter(sorted(self.points))

    def column(
            self,
            x: int
    ) -> FrozenSet[int]:
        return frozenset(p.y for p in self.points if p.x == x)

    def row(
            self,
            y: int
    ) -> FrozenSet[int]:
        return frozenset(p.x for p in self.points if p.y == y)

    def transposed(
            self
    ) -> Generator:
        return Generator(g=self.g, points=transpose(self.points), name=self.name)

    def to_dict(
            self
    ) -> Dict[str, Any]:
        data = {'g': self.g, 'points': [[p.x, p.y] for p in sorted(self.points)]}
        if self.name is not None:
            data = {'name': self.name, **data}
        return data

    @classmethod
    def from_dict(
            cls,
            data: Dict[str, Any]
    ) -> Generator:
        if not isinstance(data, dict) or 'g' not in data or 'points' not in data:
            raise InvalidGeneratorException(reason='expected an object with "g" and "points"')
        try:
            points = [Point(int(x), int(y)) for x, y in data['points']]
        except (TypeError, ValueError):
            raise InvalidGeneratorException(reason='points must be [x, y] integer pairs')
        return validate_generator(g=data['g'], points=points, name=data.get('name'))


def validate_generator(
        g: int,
        points: Iterable[Iterable[int]],
        name: Optional[str] = None
) -> Generator:
    """
    Validates a candidate generator.

    Args:
        g: side length of the generator grid
        points: candidate points; a list with repeated points is rejected
        name: optional display name

    Returns:
        The validated ``Generator``

    Raises:
        ``InvalidGeneratorException``: if g <= 1, the origin is missing, a point lies outside the g x g grid,
        the points fill the whole grid, a row or column is empty, or a point is repeated.
    """
    if not isinstance(g, int) or isinstance(g, bool) or g <= 1:
        raise InvalidGeneratorException(reason=f'g must be an integer greater than 1, got {g}')

    point_list = [Point(*p) for p in points]
    point_set = frozenset(point_list)
    if len(point_set) != len(point_list):
        raise InvalidGeneratorException(reason='duplicate points')
    if Point(0, 0) not in point_set:
        raise InvalidGeneratorException(reason='origin missing')

    outside = sorted(p for p in point_set if not (0 <= p.x < g and 0 <= p.y < g))
    if outside:
        raise InvalidGeneratorException(reason=f'points outside the {g}x{g} grid: {[tuple(p) for p in outside]}')
    if len(point_set) == g * g:
        raise InvalidGeneratorException(reason='the generator must be a proper subset of the grid')

    empty_rows = sorted(set(range(g)) - {p.y for p in point_set})
    empty_columns = sorted(set(range(g)) - {p.x for p in point_set})
    if empty_rows or empty_columns:
        raise InvalidGeneratorException(reason=f'empty rows {empty_rows} and columns {empty_columns}')

    return Generator(g=g, points=point_set, name=name)


def stage(
        gen: Generator,
        s: int,
        cap: Optional[int] = None
) -> FrozenSet[Point]:
    """
    Builds the stage X_s, where X_1 = G and X_{i+1} = X_i + g^i G.

    Args:
        gen: the generator
        s: the stage index (s >= 1)
        cap: maximum number of points (see ``point_cap``)

    Returns:
        The |G|^s points of X_s

    Raises:
        ``ValueError``: if s < 1.

        ``ResourceCapExceededException``: if |G|^s exceeds the cap.
    """
    if s < 1:
        raise ValueError(f'Stage index must be positive, got {s}')

    requested = len(gen) ** s
    budget = point_cap(cap)
    if requested > budget:
        raise ResourceCapExceededException(requested=requested, cap=budget)

    current = set(gen.points)
    for i in range(1, s):
        offset = gen.g ** i
        current = {Point(x.x + offset * p.x, x.y + offset * p.y) for x in current for p in gen.points}
    return frozenset(current)


def scale(
        x: Iterable[Iterable[int]],
        c: int
) -> FrozenSet[Point]:
    """
    Replaces every point of ``x`` with a c x c block of points.
    """
    if c < 1:
        raise ValueError(f'Scale factor must be positive, got {c}')
    return frozenset(Point(c * p[0] + dx, c * p[1] + dy) for p in x for dx in range(c) for dy in range(c))


def in_fractal(
        gen: Generator,
        point: Iterable[int],
        c: int = 1
) -> bool:
    """
    Membership test for the infinite c-scaled fractal: every pair of base-g digits of the block coordinates
    must be a generator point.
    """
    x, y = point
    if x < 0 or y < 0:
        return False
    x, y = x // c, y // c
    while x > 0 or y > 0:
        if Point(x % gen.g, y % gen.g) not in gen.points:
            return False
        x, y = x // gen.g, y // gen.g
    return True


class BridgeKind(str, Enum):
    HORIZONTAL = 'horizontal'
    VERTICAL = 'vertical'


@dataclass(frozen=True)
class Bridge:
    kind: BridgeKind
    index: int
    endpoints: Tuple[Point, Point]
    connected: bool

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'kind': self.kind.value,
                'index': self.index,
                'endpoints': [list(p) for p in self.endpoints],
                'connected': self.connected}


def bridges(
        s: Iterable[Iterable[int]]
) -> List[Bridge]:
    """
    Finds all h-bridges {(l,y),(r,y)} and v-bridges {(x,b),(x,t)} of a finite non-empty point set,
    h-bridges first, each group sorted by index.
    """
    points = as_points(s)
    ext = extents(points)
    component_of = {p: index for index, component in enumerate(connected_components(points)) for p in component}

    found = []
    for y in range(ext.b, ext.t + 1):
        left, right = Point(ext.l, y), Point(ext.r, y)
        if left in points and right in points:
            found.append(Bridge(kind=BridgeKind.HORIZONTAL,
                                index=y,
                                endpoints=(left, right),
                                connected=component_of[left] == component_of[right]))
    for x in range(ext.l, ext.r + 1):
        bottom, top = Point(x, ext.b), Point(x, ext.t)
        if bottom in points and top in points:
            found.append(Bridge(kind=BridgeKind.VERTICAL,
                                index=x,
                                endpoints=(bottom, top),
                                connected=component_of[bottom] == component_of[top]))
    return found


def bridge_counts(
        s: Iterable[Iterable[int]]
) -> Tuple[int, int]:
    """
    Returns (nhb, nvb).
    """
    found = bridges(s)
    nhb = sum(1 for bridge in found if bridge.kind == BridgeKind.HORIZONTAL)
    return nhb, len(found) - nhb


class PierKind(str, Enum):
    REAL = 'real'
    PARALLEL = 'parallel-single-bridge'
    ORTHOGONAL = 'orthogonal-single-bridge'
    DOUBLE = 'double-bridge'


@dataclass(frozen=True)
class Pier:
    location: Point
    pointing: Direction
    kind: PierKind

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'location': list(self.location), 'pointing': self.pointing.name, 'kind': self.kind.value}


def free_directions(
        points: FrozenSet[Point],
        p: Point
) -> List[Direction]:
    return [d for d in Direction if step(p, d) not in points]


def piers(
        gen: Generator
) -> List[Pier]:
    """
    Finds every pier of the generator (a point free in exactly three directions) in lexicographic order.
    A pier points away from its only neighbor; its kind follows from how many bridges it belongs to.
    """
    found_bridges = bridges(gen.points)
    found = []
    for p in gen:
        occupied = [d for d in Direction if step(p, d) in gen.points]
        if len(occupied) != 1:
            continue

        pointing = occupied[0].inverse
        memberships = [bridge for bridge in found_bridges if p in bridge.endpoints]
        if not memberships:
            kind = PierKind.REAL
        elif len(memberships) > 1:
            kind = PierKind.DOUBLE
        else:
            along_bridge = (memberships[0].kind == BridgeKind.VERTICAL) == pointing.is_vertical
            kind = PierKind.PARALLEL if along_bridge else PierKind.ORTHOGONAL
        found.append(Pier(location=p, pointing=pointing, kind=kind))
    return found


def pinch_point_conditions(
        gen: Generator
) -> List[bool]:
    """
    Evaluates the four pinch-point conditions: corner points present, empty top row and empty right column
    (apart from the corners), connectivity.
    """
    last = gen.g - 1
    return [
        {Point(0, 0), Point(0, last), Point(last, 0)}.issubset(gen.points),
        not any(Point(x, last) in gen.points for x in range(1, gen.g)),
        not any(Point(last, y) in gen.points for y in range(1, gen.g)),
        is_connected(gen.points)
    ]


def stage_tree_predicate(
        gen: Generator,
        s: int,
        cap: Optional[int] = None
) -> bool:
    """
    Evaluates on the explicit stage X_s whether it is a tree with exactly one h-bridge and one v-bridge.
    """
    points = stage(gen, s, cap=cap)
    return is_connected(points) and is_acyclic(points) and bridge_counts(points) == (1, 1)


@dataclass(frozen=True)
class FreePointWitnesses:
    """
    Witnesses of the free-point lemmas for a disconnected generator, or ``NOT_APPLICABLE``.
    """

    x_n: Union[Point, str]
    x_ne: Union[Point, str]
    x_e: Union[Point, str]


def _first_connected_bridge_component(
        gen: Generator,
        kind: BridgeKind
) -> Optional[FrozenSet[Point]]:
    for bridge in bridges(gen.points):
        if bridge.kind == kind and bridge.connected:
            for component in connected_components(gen.points):
                if bridge.endpoints[0] in component:
                    return component
    return None


def find_free_point_witnesses(
        gen: Generator,
        component: Iterable[Iterable[int]]
) -> FreePointWitnesses:
    """
    Runs the scans of the free-point lemmas for a connected component C of a generator.

    - x_N: C touches the top row but not the left column, and some h-bridge is connected (its component is pi).
      Take the bottommost point of C; x_N is the topmost point of pi in that column below C.
    - x_NE: C touches the top row and the right column but not the bottom row, and some v-bridge is connected.
      x_NE is the rightmost point of pi in the top row.
    - x_E: C touches the right column but not the bottom row, and some v-bridge is connected.
      Take the leftmost point of C; x_E is the rightmost point of pi in that row left of C.

    Args:
        gen: the generator
        component: a connected component of ``gen.points``

    Returns:
        The three witnesses, each either a point or ``NOT_APPLICABLE``

    Raises:
        ``ValueError``: if ``component`` is not a connected component of the generator.
    """
    component = as_points(component)
    if component not in connected_components(gen.points):
        raise ValueError('The given point set is not a connected component of the generator')

    last = gen.g - 1
    ext = extents(component)
    touches_top, touches_right = ext.t == last, ext.r == last
    touches_left, touches_bottom = ext.l == 0, ext.b == 0

    x_n: Union[Point, str] = NOT_APPLICABLE
    h_component = _first_connected_bridge_component(gen, BridgeKind.HORIZONTAL)
    if touches_top and not touches_left and h_component is not None and h_component != component:
        bottommost = min((p for p in component if p.y == ext.b), key=lambda p: p.x)
        below = [p for p in h_component if p.x == bottommost.x and p.y < ext.b]
        if below:
            x_n = max(below, key=lambda p: p.y)

    x_ne: Union[Point, str] = NOT_APPLICABLE
    x_e: Union[Point, str] = NOT_APPLICABLE
    v_component = _first_connected_bridge_component(gen, BridgeKind.VERTICAL)
    if touches_right and not touches_bottom and v_component is not None and v_component != component:
        if touches_top:
            top_row = [p for p in v_component if p.y == last]
            if top_row:
                x_ne = max(top_row, key=lambda p: p.x)

        leftmost = min((p for p in component if p.x == ext.l), key=lambda p: p.y)
        left_of = [p for p in v_component if p.y == leftmost.y and p.x < ext.l]
        if left_of:
            x_e = max(left_of, key=lambda p: p.x)

    return FreePointWitnesses(x_n=x_n, x_ne=x_ne, x_e=x_e)


def _equivalent_pairs(
        sets: List[FrozenSet[int]]
) -> List[Tuple[int, int]]:
    return [(i, j) for i, j in combinations(range(len(sets)), 2) if sets[i] == sets[j]]


def equivalent_columns(
        gen: Generator
) -> List[Tuple[int, int]]:
    """
    Pairs (i, j), i < j, of columns with identical occupied y-sets.
    """
    return _equivalent_pairs([gen.column(x) for x in range(gen.g)])


def equivalent_vertical_cuts(
        gen: Generator
) -> List[Tuple[int, int]]:
    """
    Pairs (k1, k2), k1 < k2, of vertical cuts crossed by edges at identical y-sets.
    Cut k lies between columns k and k + 1.
    """
    return _equivalent_pairs([gen.column(k) & gen.column(k + 1) for k in range(gen.g - 1)])


def equivalent_rows(
        gen: Generator
) -> List[Tuple[int, int]]:
    return equivalent_columns(gen.transposed())


def equivalent_horizontal_cuts(
        gen: Generator
) -> List[Tuple[int, int]]:
    return equivalent_vertical_cuts(gen.transposed())


def cuts_on_same_side_of_bridges(
        gen: Generator,
        k1: int,
        k2: int,
        kind: BridgeKind = BridgeKind.VERTICAL
) -> bool:
    """
    True iff every bridge of the given kind lies west (south) of both cuts or east (north) of both cuts.
    """
    low, high = min(k1, k2), max(k1, k2)
    indices = [bridge.index for bridge in bridges(gen.points) if bridge.kind == kind]
    return all(index <= low or index >= high + 1 for index in indices)


@dataclass(frozen=True)
class PierLike:
    """
    A connected subset of the generator attached to the rest of it through a single adjacency.
    It points away from the attachment.
    """

    points: FrozenSet[Point]
    attachment: Point
    pointing: Direction

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'points': [list(p) for p in sorted(self.points)],
                'attachment': list(self.attachment),
                'pointing': self.pointing.name}


def pier_like_subconfigurations(
        gen: Generator
) -> List[PierLike]:
    """
    Finds every connected subset S of the generator with exactly one grid edge between S and the rest of the
    generator. Such an edge is a bridge edge of the full grid graph and S is one of the two sides it separates,
    so both sides of every bridge edge are reported. Sorted by size, then by points.
    """
    graph = full_grid_graph(gen.points)
    found = []
    for u, v in nx.bridges(graph):
        reduced = graph.copy()
        reduced.remove_edge(u, v)
        for attachment, other in ((u, v), (v, u)):
            side = frozenset(nx.node_connected_component(reduced, attachment))
            pointing = Direction.from_vector(attachment - other)
            found.append(PierLike(points=side, attachment=attachment, pointing=pointing))
    return sorted(found, key=lambda item: (len(item.points), sorted(item.points)))


@dataclass
class FractalClass:
    is_pier_fractal: bool
    is_tree_fractal: bool
    is_pinch_point_fractal: bool
    satisfies_cor_multiple_bridges: bool
    satisfies_cor_pier_like: bool
    satisfies_cor_equiv_columns: bool
    satisfies_cor_equiv_rows: bool
    connected: bool
    acyclic: bool
    nhb: int
    nvb: int
    bridges: List[Bridge]
    piers: List[Pier]
    pinch_point_conditions: List[bool]
    equivalent_columns: List[Tuple[int, int]]
    equivalent_vertical_cuts: List[Tuple[int, int]]
    equivalent_rows: List[Tuple[int, int]]
    equivalent_horizontal_cuts: List[Tuple[int, int]]
    pier_like: List[PierLike]

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {
            'is_pier_fractal': self.is_pier_fractal,
            'is_tree_fractal': self.is_tree_fractal,
            'is_pinch_point_fractal': self.is_pinch_point_fractal,
            'satisfies_cor_multiple_bridges': self.satisfies_cor_multiple_bridges,
            'satisfies_cor_pier_like': self.satisfies_cor_pier_like,
            'satisfies_cor_equiv_columns': self.satisfies_cor_equiv_columns,
            'satisfies_cor_equiv_rows': self.satisfies_cor_equiv_rows,
            'connected': self.connected,
            'acyclic': self.acyclic,
            'nhb': self.nhb,
            'nvb': self.nvb,
            'bridges': [bridge.to_dict() for bridge in self.bridges],
            'piers': [pier.to_dict() for pier in self.piers],
            'pinch_point_conditions': list(self.pinch_point_conditions),
            'equivalent_columns': [list(pair) for pair in self.equivalent_columns],
            'equivalent_vertical_cuts': [list(pair) for pair in self.equivalent_vertical_cuts],
            'equivalent_rows': [list(pair) for pair in self.equivalent_rows],
            'equivalent_horizontal_cuts': [list(pair) for pair in self.equivalent_horizontal_cuts],
            'pier_like': [item.to_dict() for item in self.pier_like]
        }


def _has_equivalent_lines(
        gen: Generator,
        lines: List[Tuple[int, int]],
        cuts: List[Tuple[int, int]],
        kind: BridgeKind
) -> bool:
    return len(lines) > 0 and any(cuts_on_same_side_of_bridges(gen, k1, k2, kind=kind) for k1, k2 in cuts)


def classify(
        gen: Generator
) -> FractalClass:
    """
    Computes every classification flag of the generator together with its witnesses.
    The tree flag uses the characterization (connected, acyclic, one h-bridge and one v-bridge),
    not explicit stages.
    """
    connected = is_connected(gen.points)
    acyclic = is_acyclic(gen.points)
    found_bridges = bridges(gen.points)
    nhb = sum(1 for bridge in found_bridges if bridge.kind == BridgeKind.HORIZONTAL)
    nvb = len(found_bridges) - nhb
    found_piers = piers(gen)
    conditions = pinch_point_conditions(gen)
    pier_like = pier_like_subconfigurations(gen)

    columns, vertical_cuts = equivalent_columns(gen), equivalent_vertical_cuts(gen)
    rows, horizontal_cuts = equivalent_rows(gen), equivalent_horizontal_cuts(gen)

    vertical_pointing = any(pier.pointing.is_vertical for pier in found_piers)
    horizontal_pointing = any(not pier.pointing.is_vertical for pier in found_piers)
    vertical_pier_like = any(item.pointing.is_vertical for item in pier_like)
    horizontal_pier_like = any(not item.pointing.is_vertical for item in pier_like)

    fractal_class = FractalClass(
        is_pier_fractal=connected and nhb == 1 and nvb == 1 and len(found_piers) > 0,
        is_tree_fractal=connected and acyclic and nhb == 1 and nvb == 1,
        is_pinch_point_fractal=all(conditions),
        satisfies_cor_multiple_bridges=connected and ((nvb == 1 and vertical_pointing)
                                                      or (nhb == 1 and horizontal_pointing)),
        satisfies_cor_pier_like=connected and ((nvb == 1 and vertical_pier_like)
                                               or (nhb == 1 and horizontal_pier_like)),
        satisfies_cor_equiv_columns=connected and _has_equivalent_lines(gen, columns, vertical_cuts,
                                                                        kind=BridgeKind.VERTICAL),
        satisfies_cor_equiv_rows=connected and _has_equivalent_lines(gen, rows, horizontal_cuts,
                                                                     kind=BridgeKind.HORIZONTAL),
        connected=connected,
        acyclic=acyclic,
        nhb=nhb,
        nvb=nvb,
        bridges=found_bridges,
        piers=found_piers,
        pinch_point_conditions=conditions,
        equivalent_columns=columns,
        equivalent_vertical_cuts=vertical_cuts,
        equivalent_rows=rows,
        equivalent_horizontal_cuts=horizontal_cuts,
        pier_like=pier_like
    )

    logging_utility.build_logger().debug(f'Classified generator {gen.name or ""}{os.linesep}' + prettify_statistics({
        'g': gen.g,
        'points': len(gen),
        'nhb': nhb,
        'nvb': nvb,
        'piers': len(found_piers),
        'pier': fractal_class.is_pier_fractal,
        'tree': fractal_class.is_tree_fractal,
        'pinch': fractal_class.is_pinch_point_fractal
    }))
    return fractal_class


def is_valid_generator(
        g: int,
        points: Iterable[Iterable[int]]
) -> bool:
    try:
        validate_generator(g=g, points=points)
    except InvalidGeneratorException:
        return False
    return True


def enumerate_generators(
        g: int
) -> Iterator[Generator]:
    """
    Yields every valid generator of side ``g`` (2^(g*g - 1) candidates are scanned).
    """
    cells = [Point(x, y) for x in range(g) for y in range(g) if (x, y) != (0, 0)]
    for mask in range(2 ** len(cells)):
        points = [Point(0, 0)] + [cell for index, cell in enumerate(cells) if mask >> index & 1]
        if is_valid_generator(g=g, points=points):
            yield validate_generator(g=g, points=points)


def random_generator(
        g: int,
        rng: np.random.Generator,
        density: float = 0.5
) -> Generator:
    """
    Draws a random valid generator of side ``g``, each cell kept with probability ``density``.
    """
    while True:
        mask = rng.random((g, g)) < density
        mask[0, 0] = True
        points = [Point(int(x), int(y)) for x, y in zip(*np.nonzero(mask))]
        if is_valid_generator(g=g, points=points):
            return validate_generator(g=g, points=points)


__all__ = [
    'DEFAULT_POINT_CAP',
    'CAP_ENV_VARIABLE',
    'NOT_APPLICABLE',
    'InvalidGeneratorException',
    'ResourceCapExceededException',
    'NotPierFractalException',
    'AnchorNotFoundException',
    'point_cap',
    'Generator',
    'validate_generator',
    'stage',
    'scale',
    'in_fractal',
    'BridgeKind',
    'Bridge',
    'bridges',
    'bridge_counts',
    'PierKind',
    'Pier',
    'free_directions',
    'piers',
    'pinch_point_conditions',
    'stage_tree_predicate',
    'FreePointWitnesses',
    'find_free_point_witnesses',
    'equivalent_columns',
    'equivalent_vertical_cuts',
    'equivalent_rows',
    'equivalent_horizontal_cuts',
    'cuts_on_same_side_of_bridges',
    'PierLike',
    'pier_like_subconfigurations',
    'FractalClass',
    'classify',
    'is_valid_generator',
    'enumerate_generators',
    'random_generator'
]
