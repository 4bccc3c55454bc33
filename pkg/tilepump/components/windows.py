"""
Closed windows over the lattice, window arithmetic across fractal stages, window movies and window anchors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from tilepump.components.atam import Assembly, AssemblySequence, Glue
from tilepump.components.fractal import Generator, BridgeKind, PierKind, Pier, PierLike, bridges, classify, \
    in_fractal, piers, equivalent_vertical_cuts, cuts_on_same_side_of_bridges, \
    NotPierFractalException, AnchorNotFoundException
from tilepump.components.grid import Point, Direction, GridEdge, Region, step, cut_edges, extents, \
    connected_components, transpose
from tilepump.utility import logging_utility

ANCHOR_CHECK_STAGES = (2, 3)


class InvalidWindowException(Exception):

    def __init__(
            self,
            reason: str
    ):
        super().__init__(f'Invalid window: {reason}')
        self.reason = reason


class InvalidParameterException(Exception):

    def __init__(
            self,
            name: str,
            value: Any,
            constraint: str
    ):
        super().__init__(f'Parameter {name} = {value} violates {constraint}')
        self.name = name
        self.value = value


def _is_hole_free(
        inside: FrozenSet[Point]
) -> bool:
    ext = extents(inside)
    frame = Region(ext.l - 1, ext.b - 1, ext.r + 1, ext.t + 1)
    complement = frame.points() - inside
    return len(connected_components(complement)) == 1


@dataclass(frozen=True)
class ClosedWindow:
    """
    A closed window: the cut separating a finite inside from the infinite rest of the lattice.
    Square windows keep their ``Region`` for constant-time membership.
    """

    inside: FrozenSet[Point]
    square: Optional[Region] = field(default=None, compare=False)

    @classmethod
    def from_region(
            cls,
            region: Region
    ) -> ClosedWindow:
        if region.x0 > region.x1 or region.y0 > region.y1:
            raise InvalidWindowException(reason=f'empty region {tuple(region)}')
        return cls(inside=region.points(), square=region)

    @classmethod
    def from_points(
            cls,
            points: Iterable[Iterable[int]]
    ) -> ClosedWindow:
        """
        Builds a window from an arbitrary finite inside.

        Raises:
            ``InvalidWindowException``: if the inside is empty or encloses a hole (the cut would then bound
            more than one finite part).
        """
        inside = frozenset(Point(*p) for p in points)
        if not inside:
            raise InvalidWindowException(reason='the inside must be non-empty')
        if not _is_hole_free(inside):
            raise InvalidWindowException(reason='the inside must not enclose holes')
        return cls(inside=inside)

    def __contains__(
            self,
            item
    ) -> bool:
        if self.square is not None:
            return item in self.square
        return Point(*item) in self.inside

    def __len__(
            self
    ) -> int:
        return len(self.inside)

    @cached_property
    def cut(
            self
    ) -> List[GridEdge]:
        return cut_edges(self.inside)

    @property
    def sw_corner(
            self
    ) -> Point:
        ext = extents(self.inside)
        return Point(ext.l, ext.b)

    def translate(
            self,
            vector: Iterable[int]
    ) -> ClosedWindow:
        dx, dy = vector
        if self.square is not None:
            return ClosedWindow.from_region(Region(self.square.x0 + dx, self.square.y0 + dy,
                                                   self.square.x1 + dx, self.square.y1 + dy))
        return ClosedWindow(inside=frozenset(Point(p.x + dx, p.y + dy) for p in self.inside))

    def transposed(
            self
    ) -> ClosedWindow:
        if self.square is not None:
            return ClosedWindow.from_region(Region(self.square.y0, self.square.x0, self.square.y1, self.square.x1))
        return ClosedWindow(inside=transpose(self.inside))

    def to_dict(
            self
    ) -> Dict[str, Any]:
        if self.square is not None:
            return {'region': list(self.square)}
        return {'inside': [list(p) for p in sorted(self.inside)]}


class MovieEvent(NamedTuple):
    """
    One glue appearing on a window cut: the cut edge is identified by its inside endpoint and by the unit vector
    pointing from the placed tile toward the cut.
    """

    step_index: int
    position: Point
    orientation: Point
    glue: Glue
    tile_position: Point

    def shift(
            self,
            vector: Iterable[int]
    ) -> MovieEvent:
        return self._replace(position=self.position + vector, tile_position=self.tile_position + vector)

    def dump(
            self
    ) -> str:
        return '\t'.join(str(value) for value in (self.step_index,
                                                  self.position.x, self.position.y,
                                                  self.orientation.x, self.orientation.y,
                                                  self.glue.label, self.glue.strength))


@dataclass(frozen=True)
class WindowMovie:
    events: Tuple[MovieEvent, ...] = ()

    def __len__(
            self
    ) -> int:
        return len(self.events)

    def __iter__(
            self
    ) -> Iterator[MovieEvent]:
        return iter(self.events)

    def __getitem__(
            self,
            item
    ) -> MovieEvent:
        return self.events[item]

    def shift(
            self,
            vector: Iterable[int]
    ):
        vector = Point(*vector)
        return type(self)(events=tuple(event.shift(vector) for event in self.events))

    def signature(
            self
    ) -> Tuple[Tuple[Point, Point, Glue], ...]:
        return tuple((event.position, event.orientation, event.glue) for event in self.events)

    def canonical_signature(
            self
    ) -> Tuple[Tuple[Point, Point, Glue], ...]:
        """
        The signature translated so that the first event sits at the origin: equal canonical signatures
        mean equal movies up to translation.
        """
        if not self.events:
            return ()
        return self.shift(-self.events[0].position).signature()

    def dump(
            self
    ) -> str:
        return ''.join(f'{event.dump()}{os.linesep}' for event in self.events)


@dataclass(frozen=True)
class BondFormingSubmovie(WindowMovie):
    pass


class MovieMatch(NamedTuple):
    vector: Optional[Point]

    @property
    def indeterminate(
            self
    ) -> bool:
        return self.vector is None


def _check_window_parameters(
        c: int,
        s: int,
        g: int,
        **indices: int
):
    if c < 1:
        raise InvalidParameterException(name='c', value=c, constraint='c >= 1')
    if s < 2:
        raise InvalidParameterException(name='s', value=s, constraint='s >= 2')
    if g < 2:
        raise InvalidParameterException(name='g', value=g, constraint='g >= 2')
    for name, value in indices.items():
        if not 0 <= value < g:
            raise InvalidParameterException(name=name, value=value, constraint=f'0 <= {name} < {g}')


def _check_stage_pair(
        i: int,
        j: int
):
    if not 1 < i < j:
        raise InvalidParameterException(name='(i, j)', value=(i, j), constraint='1 < i < j')


def square_region(
        c: int,
        s: int,
        g: int,
        e: int,
        f: int,
        p: int,
        q: int
) -> Region:
    """
    The box {0, ..., cg^(s-2) - 1}^2 + cg^(s-1)(e, f) + cg^(s-2)(p, q).

    Raises:
        ``InvalidParameterException``: if c < 1, s < 2, g < 2 or an index lies outside {0, ..., g - 1}.
    """
    _check_window_parameters(c, s, g, e=e, f=f, p=p, q=q)
    side = c * g ** (s - 2)
    block = c * g ** (s - 1)
    x0, y0 = block * e + side * p, block * f + side * q
    return Region(x0, y0, x0 + side - 1, y0 + side - 1)


def square_inside(
        c: int,
        s: int,
        g: int,
        e: int,
        f: int,
        p: int,
        q: int
) -> FrozenSet[Point]:
    return square_region(c, s, g, e, f, p, q).points()


def closed_window(
        c: int,
        s: int,
        g: int,
        e: int,
        f: int,
        p: int,
        q: int
) -> ClosedWindow:
    return ClosedWindow.from_region(square_region(c, s, g, e, f, p, q))


def stage_translation(
        c: int,
        g: int,
        i: int,
        j: int,
        e: int,
        f: int,
        p: int,
        q: int
) -> Point:
    """
    The vector joining the south-west corner of the stage-i square window to the south-west corner of the
    stage-j one.
    """
    _check_stage_pair(i, j)
    _check_window_parameters(c, i, g, e=e, f=f, p=p, q=q)
    block_delta = c * (g ** (j - 1) - g ** (i - 1))
    sub_delta = c * (g ** (j - 2) - g ** (i - 2))
    return Point(block_delta * e + sub_delta * p, block_delta * f + sub_delta * q)


def alignment_offset(
        direction: Direction,
        a_or_b: int,
        c: int,
        g: int,
        i: int,
        j: int
) -> Point:
    """
    The extra translation aligning the bond-forming line of the stage-i window with the stage-j one,
    for a pier pointing in ``direction`` and the bridge coordinate ``a_or_b``.
    """
    _check_stage_pair(i, j)
    _check_window_parameters(c, i, g, a_or_b=a_or_b)
    along = a_or_b * c * sum(g ** k for k in range(i - 2, j - 2))
    across = c * (g ** (j - 2) - g ** (i - 2))
    return {
        Direction.N: Point(along, 0),
        Direction.E: Point(0, along),
        Direction.S: Point(along, across),
        Direction.W: Point(across, along)
    }[direction]


def geometric_enclosure(
        c: int,
        g: int,
        i: int,
        j: int,
        offset: Iterable[int],
        e: int = 0,
        f: int = 0,
        p: int = 0,
        q: int = 0
) -> bool:
    """
    Direct check that the stage-i square window, moved by the stage translation plus ``offset``,
    lies inside the stage-j square window.
    """
    small = square_region(c, i, g, e, f, p, q)
    large = square_region(c, j, g, e, f, p, q)
    t = stage_translation(c, g, i, j, e, f, p, q) + offset
    return large.x0 <= small.x0 + t.x and small.x1 + t.x <= large.x1 \
        and large.y0 <= small.y0 + t.y and small.y1 + t.y <= large.y1


def enclosure_holds(
        c: int,
        g: int,
        i: int,
        j: int,
        offset: Iterable[int],
        e: int = 0,
        f: int = 0,
        p: int = 0,
        q: int = 0
) -> bool:
    """
    Enclosure test for aligned square windows: x <= m and y <= m with m = c(g^(j-2) - g^(i-2)).
    The formula only covers non-negative offsets. The geometric inclusion is evaluated as well and a disagreement
    (negative offsets) is logged; use ``geometric_enclosure`` for the exact answer there.
    """
    _check_stage_pair(i, j)
    x, y = offset
    m = c * (g ** (j - 2) - g ** (i - 2))
    by_formula = x <= m and y <= m
    if by_formula != geometric_enclosure(c, g, i, j, (x, y), e, f, p, q):
        logging_utility.build_logger().warning(f'Enclosure formula and geometry disagree for offset {(x, y)}')
    return by_formula


def is_enclosed(
        w: ClosedWindow,
        w_outer: ClosedWindow
) -> bool:
    if w.square is not None and w_outer.square is not None:
        return w_outer.square.x0 <= w.square.x0 and w.square.x1 <= w_outer.square.x1 \
            and w_outer.square.y0 <= w.square.y0 and w.square.y1 <= w_outer.square.y1
    return w.inside.issubset(w_outer.inside)


def extract_movie(
        seq: AssemblySequence,
        w: ClosedWindow
) -> WindowMovie:
    """
    Records, in placement order, every tile side landing on the cut of ``w``.
    Seed tiles come first with step index -1; the sides of a single tile are listed by unit vector
    (x first, then y).
    """
    placements = [(-1, p, name) for p, name in sorted(seq.system.seed.tiles.items())]
    placements += [(index, s.position, s.tile) for index, s in enumerate(seq.steps)]
    directions = Direction.lexicographic()

    events = []
    for index, p, name in placements:
        tile = seq.system.tile_types[name]
        inside = p in w
        for d in directions:
            q = step(p, d)
            if (q in w) != inside:
                events.append(MovieEvent(step_index=index,
                                         position=p if inside else q,
                                         orientation=d.vector,
                                         glue=tile.side(d),
                                         tile_position=p))
    return WindowMovie(events=tuple(events))


def bond_forming(
        movie: WindowMovie,
        final: Assembly
) -> BondFormingSubmovie:
    """
    Keeps the events whose glue forms a positive-strength bond in ``final``.
    """
    return BondFormingSubmovie(events=tuple(
        event for event in movie
        if final.bond_strength(event.tile_position, Direction.from_vector(event.orientation)) > 0))


def movies_equal_up_to(
        m1: WindowMovie,
        m2: WindowMovie
) -> Optional[MovieMatch]:
    """
    Checks whether ``m2`` is ``m1`` translated.

    Returns:
        None if the movies differ, a ``MovieMatch`` with the translation otherwise.
        Two empty movies match with an indeterminate translation.
    """
    if len(m1) != len(m2):
        return None
    if not len(m1):
        return MovieMatch(vector=None)

    vector = m2[0].position - m1[0].position
    for a, b in zip(m1, m2):
        if a.position + vector != b.position or a.orientation != b.orientation or a.glue != b.glue:
            return None
    return MovieMatch(vector=vector)


def shift(
        movie: WindowMovie,
        vector: Iterable[int]
) -> WindowMovie:
    return movie.shift(vector)


class Symmetry(NamedTuple):
    """
    A symmetry of the g x g grid: x' = M x + t, where t has g - 1 on the rows of M holding a negative entry.
    """

    name: str
    matrix: Tuple[Tuple[int, int], Tuple[int, int]]

    def _translation(
            self,
            g: int
    ) -> Point:
        return Point(*[(g - 1) if min(row) < 0 else 0 for row in self.matrix])

    def _linear(
            self,
            v: Iterable[int]
    ) -> Point:
        x, y = v
        (a, b), (c, d) = self.matrix
        return Point(a * x + b * y, c * x + d * y)

    def apply(
            self,
            p: Iterable[int],
            g: int
    ) -> Point:
        return self._linear(p) + self._translation(g)

    def invert(
            self,
            p: Iterable[int],
            g: int
    ) -> Point:
        x, y = Point(*p) - self._translation(g)
        (a, b), (c, d) = self.matrix
        return Point(a * x + c * y, b * x + d * y)

    def apply_direction(
            self,
            d: Direction
    ) -> Direction:
        return Direction.from_vector(self._linear(d.vector))


SYMMETRIES = [
    Symmetry('identity', ((1, 0), (0, 1))),
    Symmetry('flip_h', ((-1, 0), (0, 1))),
    Symmetry('flip_v', ((1, 0), (0, -1))),
    Symmetry('rot180', ((-1, 0), (0, -1))),
    Symmetry('transpose', ((0, 1), (1, 0))),
    Symmetry('rot90', ((0, -1), (1, 0))),
    Symmetry('rot270', ((0, 1), (-1, 0))),
    Symmetry('anti_transpose', ((0, -1), (-1, 0)))
]


class AnchorKind(str, Enum):
    MAIN = 'main'
    MULTIPLE_BRIDGES = 'multiple_bridges'
    PIER_LIKE = 'pier_like'
    EQUIVALENT_COLUMNS = 'equivalent_columns'
    EQUIVALENT_ROWS = 'equivalent_rows'


@dataclass(frozen=True)
class WindowAnchor:
    """
    Where the windows of every stage are placed.

    Pier-based anchors (main, multiple bridges, pier-like) place at stage s the window made of the cells
    ``cells`` of the sub-block grid of block ``free_point``; ``pier`` is the cell attached to the rest of the
    fractal and ``bridge_point`` the bridge endpoint fixing the bond line.

    Equivalent-line anchors place two same-size square windows per stage, one past each of the two equivalent
    cuts ``cuts``, in block ``free_point``, extending toward ``pier_direction``.
    """

    pier: Optional[Point]
    free_point: Point
    pier_direction: Direction
    bridge_point: Optional[Point]
    kind: AnchorKind = AnchorKind.MAIN
    cells: Tuple[Point, ...] = ()
    cuts: Optional[Tuple[int, int]] = None

    @property
    def is_equivalent_lines(
            self
    ) -> bool:
        return self.kind in (AnchorKind.EQUIVALENT_COLUMNS, AnchorKind.EQUIVALENT_ROWS)

    @property
    def window_cells(
            self
    ) -> Tuple[Point, ...]:
        return self.cells if self.cells else ((self.pier,) if self.pier is not None else ())

    @property
    def bridge_coordinate(
            self
    ) -> int:
        """
        The bridge coordinate a (north/south-pointing) or b (east/west-pointing).
        """
        return self.bridge_point.x if self.pier_direction.is_vertical else self.bridge_point.y

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'kind': self.kind.value,
                'pier': list(self.pier) if self.pier is not None else None,
                'free_point': list(self.free_point),
                'pier_direction': self.pier_direction.name,
                'bridge_point': list(self.bridge_point) if self.bridge_point is not None else None,
                'cells': [list(p) for p in self.window_cells],
                'cuts': list(self.cuts) if self.cuts is not None else None}


def bridge_point(
        gen: Generator,
        pointing: Direction
) -> Optional[Point]:
    """
    The bridge endpoint on the side a window meets the fractal: north-pointing (a, 0), south-pointing (a, g-1),
    east-pointing (0, b), west-pointing (g-1, b). None unless the needed bridge is unique.
    """
    kind = BridgeKind.VERTICAL if pointing.is_vertical else BridgeKind.HORIZONTAL
    found = [bridge for bridge in bridges(gen.points) if bridge.kind == kind]
    if len(found) != 1:
        return None
    index, last = found[0].index, gen.g - 1
    return {
        Direction.N: Point(index, 0),
        Direction.S: Point(index, last),
        Direction.E: Point(0, index),
        Direction.W: Point(last, index)
    }[pointing]


def anchor_window(
        anchor: WindowAnchor,
        c: int,
        g: int,
        s: int
) -> ClosedWindow:
    """
    The stage-s window of a pier-based anchor.
    """
    e, f = anchor.free_point
    regions = [square_region(c, s, g, e, f, p, q) for p, q in anchor.window_cells]
    if len(regions) == 1:
        return ClosedWindow.from_region(regions[0])
    return ClosedWindow.from_points(frozenset().union(*(region.points() for region in regions)))


def anchor_translation(
        anchor: WindowAnchor,
        c: int,
        g: int,
        i: int,
        j: int
) -> Point:
    """
    c = stage translation of the attached cell plus the alignment offset of the bond line.
    """
    e, f = anchor.free_point
    p, q = anchor.pier
    return stage_translation(c, g, i, j, e, f, p, q) + alignment_offset(anchor.pier_direction,
                                                                        anchor.bridge_coordinate,
                                                                        c, g, i, j)


def equivalent_line_windows(
        anchor: WindowAnchor,
        c: int,
        g: int,
        s: int
) -> Tuple[ClosedWindow, ClosedWindow, Point]:
    """
    The two same-size square windows of an equivalent-line anchor at stage s, and the vector moving the first
    onto the second.

    Each window has the side of a whole block and starts right past one of the two cuts; windows extending
    west end right before the cut instead.
    """
    k1, k2 = anchor.cuts
    e, f = anchor.free_point
    _check_window_parameters(c, s, g, e=e, f=f, k1=k1, k2=k2)
    block, sub = c * g ** (s - 1), c * g ** (s - 2)
    x_origin, y_origin = block * e, block * f
    if anchor.kind == AnchorKind.EQUIVALENT_ROWS:
        x_origin, y_origin = y_origin, x_origin

    shift_length = sub * (k2 - k1)
    if anchor.pier_direction in (Direction.E, Direction.N):
        x0 = x_origin + sub * (k1 + 1)
    else:
        x0 = x_origin + sub * (k1 + 1) - block
    first = Region(x0, y_origin, x0 + block - 1, y_origin + block - 1)
    second = Region(x0 + shift_length, y_origin, x0 + shift_length + block - 1, y_origin + block - 1)
    vector = Point(shift_length, 0)

    if anchor.kind == AnchorKind.EQUIVALENT_ROWS:
        return (ClosedWindow.from_region(first).transposed(),
                ClosedWindow.from_region(second).transposed(),
                vector.transposed())
    return ClosedWindow.from_region(first), ClosedWindow.from_region(second), vector


def contact_edges(
        gen: Generator,
        c: int,
        w: ClosedWindow
) -> List[GridEdge]:
    """
    The cut edges of ``w`` whose endpoints both belong to the c-scaled fractal.
    """
    return [edge for edge in w.cut if in_fractal(gen, edge.a, c) and in_fractal(gen, edge.b, c)]


def _inside_endpoint(
        edge: GridEdge,
        w: ClosedWindow
) -> Point:
    return edge.a if edge.a in w else edge.b


def _bond_line_start(
        anchor: WindowAnchor,
        c: int,
        g: int,
        s: int
) -> Point:
    e, f = anchor.free_point
    p, q = anchor.pier
    cell = square_region(c, s, g, e, f, p, q)
    along = anchor.bridge_coordinate * c * sum(g ** k for k in range(0, s - 2))
    side = cell.x1 - cell.x0
    return {
        Direction.N: Point(cell.x0 + along, cell.y0),
        Direction.S: Point(cell.x0 + along, cell.y0 + side),
        Direction.E: Point(cell.x0, cell.y0 + along),
        Direction.W: Point(cell.x0 + side, cell.y0 + along)
    }[anchor.pier_direction]


def verify_anchor(
        gen: Generator,
        c: int,
        anchor: WindowAnchor,
        stages: Iterable[int] = ANCHOR_CHECK_STAGES
) -> bool:
    """
    Checks with the membership oracle that, for every stage in ``stages``, the anchor windows meet the fractal
    only along the expected side.

    For pier-based anchors the contacts must form one straight line of c edges on the side facing the attached
    cell, starting where the bridge coordinate predicts. For equivalent-line anchors both windows must meet the
    fractal only across their cut, in the same places up to the window translation.
    """
    for s in stages:
        if anchor.is_equivalent_lines:
            first, second, vector = equivalent_line_windows(anchor, c, gen.g, s)
            first_contacts = contact_edges(gen, c, first)
            second_contacts = contact_edges(gen, c, second)
            across = anchor.pier_direction.inverse
            if not first_contacts or len(first_contacts) != len(second_contacts):
                return False
            if sorted(edge.translate(vector) for edge in first_contacts) != sorted(second_contacts):
                return False
            for edge in first_contacts:
                inner = _inside_endpoint(edge, first)
                outer = edge.b if inner == edge.a else edge.a
                if outer - inner != across.vector:
                    return False
            continue

        w = anchor_window(anchor, c, gen.g, s)
        contacts = contact_edges(gen, c, w)
        if len(contacts) != c:
            return False

        e, f = anchor.free_point
        p, q = anchor.pier
        cell = square_region(c, s, gen.g, e, f, p, q)
        facing = anchor.pier_direction.inverse.vector
        inner_points = []
        for edge in contacts:
            inner = _inside_endpoint(edge, w)
            outer = edge.b if inner == edge.a else edge.a
            if outer - inner != facing or inner not in cell:
                return False
            inner_points.append(inner)

        start = _bond_line_start(anchor, c, gen.g, s)
        along = Direction.E.vector if anchor.pier_direction.is_vertical else Direction.N.vector
        expected = sorted(start + along.scaled(k) for k in range(c))
        if sorted(inner_points) != expected:
            return False
    return True


_PIER_KIND_ORDER = [PierKind.REAL, PierKind.PARALLEL, PierKind.ORTHOGONAL]


def _is_corner(
        p: Point,
        g: int
) -> bool:
    return p.x in (0, g - 1) and p.y in (0, g - 1)


def ordered_piers(
        gen: Generator
) -> List[Pier]:
    """
    Piers usable for anchors: real first, then parallel single-bridge, then orthogonal single-bridge
    (double-bridge piers are skipped); non-corner piers first within a kind, then lexicographic.
    """
    usable = [pier for pier in piers(gen) if pier.kind in _PIER_KIND_ORDER]
    return sorted(usable, key=lambda pier: (_PIER_KIND_ORDER.index(pier.kind),
                                            _is_corner(pier.location, gen.g),
                                            pier.location))


def _north_free_in_column(
        points: FrozenSet[Point],
        x: int,
        y_limit: int
) -> Optional[Point]:
    found = sorted(p for p in points if p.x == x and p.y < y_limit and Point(p.x, p.y + 1) not in points)
    return found[0] if found else None


def constructive_free_point(
        gen: Generator,
        pier: Pier
) -> Optional[Point]:
    """
    The block suggested by the case analysis on the pier kind.

    A real pier uses its own location. A single-bridge pier is brought by a grid symmetry to a canonical pose
    (parallel: north-pointing on the top row; orthogonal: east-pointing on the top row), a north-free point is
    picked there and mapped back.
    """
    if pier.kind == PierKind.REAL:
        return pier.location

    g, last = gen.g, gen.g - 1
    target = Direction.N if pier.kind == PierKind.PARALLEL else Direction.E
    for symmetry in SYMMETRIES:
        if symmetry.apply_direction(pier.pointing) != target:
            continue
        location = symmetry.apply(pier.location, g)
        if location.y != last:
            continue
        points = frozenset(symmetry.apply(p, g) for p in gen.points)

        if pier.kind == PierKind.PARALLEL:
            column = 1 if location.x == 0 else location.x - 1
            candidate = _north_free_in_column(points, column, y_limit=last)
        elif location.x < last:
            candidate = _north_free_in_column(points, location.x, y_limit=last - 1)
        else:
            candidate = _north_free_in_column(points, 0, y_limit=last)

        if candidate is not None:
            return symmetry.invert(candidate, g)
    return None


def _search_free_point(
        gen: Generator,
        c: int,
        pier: Point,
        pointing: Direction,
        kind: AnchorKind,
        cells: Tuple[Point, ...] = (),
        preferred: Optional[Point] = None
) -> Optional[WindowAnchor]:
    bridge = bridge_point(gen, pointing)
    if bridge is None:
        return None

    candidates = ([preferred] if preferred is not None else []) + [p for p in gen if p != preferred]
    for free_point in candidates:
        anchor = WindowAnchor(pier=pier,
                              free_point=free_point,
                              pier_direction=pointing,
                              bridge_point=bridge,
                              kind=kind,
                              cells=cells)
        if verify_anchor(gen, c, anchor):
            if preferred is not None and free_point != preferred:
                logging_utility.build_logger().debug(f'Block {tuple(preferred)} rejected for pier {tuple(pier)}, '
                                                     f'using {tuple(free_point)}')
            return anchor
    return None


def select_anchor(
        gen: Generator,
        c: int
) -> WindowAnchor:
    """
    Picks the pier and the block whose windows meet the fractal on a single side at every stage.

    Args:
        gen: a pier-fractal generator
        c: the scale factor

    Returns:
        The selected ``WindowAnchor``

    Raises:
        ``NotPierFractalException``: if the generator does not define a pier fractal.

        ``AnchorNotFoundException``: if no pier admits a verified block.
    """
    fractal_class = classify(gen)
    if not fractal_class.is_pier_fractal:
        raise NotPierFractalException(details=f'connected={fractal_class.connected}, nhb={fractal_class.nhb}, '
                                              f'nvb={fractal_class.nvb}, piers={len(fractal_class.piers)}')

    for pier in ordered_piers(gen):
        anchor = _search_free_point(gen, c,
                                    pier=pier.location,
                                    pointing=pier.pointing,
                                    kind=AnchorKind.MAIN,
                                    preferred=constructive_free_point(gen, pier))
        if anchor is not None:
            return anchor

    raise AnchorNotFoundException(details=f'no pier of {gen.name or "the generator"} admits a verified block')


def _pier_like_anchor(
        gen: Generator,
        c: int,
        item: PierLike
) -> Optional[WindowAnchor]:
    # a holed sub-configuration leaves holes in every stage window
    if not _is_hole_free(item.points):
        logging_utility.build_logger().debug(f'Pier-like sub-configuration attached at {tuple(item.attachment)} '
                                             f'encloses a hole, skipped')
        return None
    return _search_free_point(gen, c,
                              pier=item.attachment,
                              pointing=item.pointing,
                              kind=AnchorKind.PIER_LIKE,
                              cells=tuple(sorted(item.points)))


def _equivalent_line_anchors(
        gen: Generator,
        c: int,
        kind: AnchorKind
) -> List[WindowAnchor]:
    lines_gen = gen if kind == AnchorKind.EQUIVALENT_COLUMNS else gen.transposed()
    forward, backward = (Direction.E, Direction.W) if kind == AnchorKind.EQUIVALENT_COLUMNS \
        else (Direction.N, Direction.S)

    found = []
    for k1, k2 in equivalent_vertical_cuts(lines_gen):
        if not cuts_on_same_side_of_bridges(lines_gen, k1, k2):
            continue
        for direction in (forward, backward):
            for free_point in gen:
                anchor = WindowAnchor(pier=None,
                                      free_point=free_point,
                                      pier_direction=direction,
                                      bridge_point=None,
                                      kind=kind,
                                      cuts=(k1, k2))
                if verify_anchor(gen, c, anchor):
                    found.append(anchor)
                    break
    return found


def anchor_variants(
        gen: Generator,
        c: int
) -> List[WindowAnchor]:
    """
    Every anchor backed by the pier argument or one of its generalizations, tagged with its kind.

    - main: the selected anchor of a pier fractal;
    - multiple bridges: for generators with more than one h-bridge or v-bridge, one anchor per pier pointing
      along the axis whose bridge is unique;
    - pier-like: one anchor per multi-cell pier-like sub-configuration, when no pier-based anchor exists;
    - equivalent columns (rows): one anchor per pair of equivalent cuts lying on the same side of the bridges,
      when the generator also has equivalent columns (rows).

    Returns:
        The anchors, main first; empty when nothing applies
    """
    fractal_class = classify(gen)
    anchors: List[WindowAnchor] = []

    def append(anchor: Optional[WindowAnchor]):
        if anchor is None:
            return
        identity = (anchor.pier, anchor.free_point, anchor.window_cells, anchor.cuts, anchor.pier_direction)
        if all(identity != (a.pier, a.free_point, a.window_cells, a.cuts, a.pier_direction) for a in anchors):
            anchors.append(anchor)

    if fractal_class.is_pier_fractal:
        try:
            append(select_anchor(gen, c))
        except AnchorNotFoundException as error:
            logging_utility.build_logger().warning(str(error))
    elif fractal_class.satisfies_cor_multiple_bridges:
        for pier in ordered_piers(gen):
            append(_search_free_point(gen, c,
                                      pier=pier.location,
                                      pointing=pier.pointing,
                                      kind=AnchorKind.MULTIPLE_BRIDGES))

    if not anchors and fractal_class.satisfies_cor_pier_like:
        for item in fractal_class.pier_like:
            if len(item.points) > 1:
                append(_pier_like_anchor(gen, c, item))

    if fractal_class.satisfies_cor_equiv_columns:
        for anchor in _equivalent_line_anchors(gen, c, AnchorKind.EQUIVALENT_COLUMNS):
            append(anchor)
    if fractal_class.satisfies_cor_equiv_rows:
        for anchor in _equivalent_line_anchors(gen, c, AnchorKind.EQUIVALENT_ROWS):
            append(anchor)

    logging_utility.build_logger().debug(f'Found {len(anchors)} anchors: {[a.kind.value for a in anchors]}')
    return anchors


def anchor_contact_edges(
        gen: Generator,
        c: int,
        anchor: WindowAnchor,
        s: int
) -> List[List[GridEdge]]:
    """
    The contact edges of the anchor windows at stage s, each list sorted along its line.
    Pier-based anchors have one window; equivalent-line anchors have two.
    """
    if anchor.is_equivalent_lines:
        first, second, _ = equivalent_line_windows(anchor, c, gen.g, s)
        return [sorted(contact_edges(gen, c, first)), sorted(contact_edges(gen, c, second))]
    return [sorted(contact_edges(gen, c, anchor_window(anchor, c, gen.g, s)))]


__all__ = [
    'ANCHOR_CHECK_STAGES',
    'InvalidWindowException',
    'InvalidParameterException',
    'ClosedWindow',
    'MovieEvent',
    'WindowMovie',
    'BondFormingSubmovie',
    'MovieMatch',
    'square_region',
    'square_inside',
    'closed_window',
    'stage_translation',
    'alignment_offset',
    'geometric_enclosure',
    'enclosure_holds',
    'is_enclosed',
    'extract_movie',
    'bond_forming',
    'movies_equal_up_to',
    'shift',
    'Symmetry',
    'SYMMETRIES',
    'AnchorKind',
    'WindowAnchor',
    'bridge_point',
    'anchor_window',
    'anchor_translation',
    'equivalent_line_windows',
    'contact_edges',
    'verify_anchor',
    'ordered_piers',
    'constructive_free_point',
    'select_anchor',
    'anchor_variants',
    'anchor_contact_edges'
]
