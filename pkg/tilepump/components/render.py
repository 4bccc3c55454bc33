"""
SVG rendering of lattice point sets, assemblies and window overlays.
Every lattice cell is drawn as exactly one rect; windows are drawn as the line segments of their cut.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import AnyStr, Dict, Iterable, List, Optional, Union

import drawsvg as draw

from tilepump.components.atam import Assembly
from tilepump.components.grid import Point, as_points, extents, cut_edges
from tilepump.components.windows import ClosedWindow

TILE_FILL = '#4c72b0'
MISSING_FILL = '#dd8452'
EXTRA_FILL = '#c44e52'
WINDOW_STROKES = ('#55a868', '#8172b3')
CELL_STROKE = '#ffffff'


@dataclass(frozen=True)
class Layer:
    points: frozenset
    fill: str
    name: str = ''


@dataclass(frozen=True)
class Overlay:
    window: ClosedWindow
    stroke: str
    stroke_width: float = 2.0
    name: str = ''


@dataclass
class RenderSpec:
    """
    What to draw: point-set layers (later layers paint over earlier ones) and window overlays.
    """

    cell_size: int = 10
    layers: List[Layer] = field(default_factory=list)
    overlays: List[Overlay] = field(default_factory=list)

    def __post_init__(
            self
    ):
        if self.cell_size < 1:
            raise ValueError(f'Cell size must be at least 1, got {self.cell_size}')

    def add_layer(
            self,
            points: Iterable[Iterable[int]],
            fill: str,
            name: str = ''
    ) -> RenderSpec:
        self.layers.append(Layer(points=as_points(points), fill=fill, name=name))
        return self

    def add_overlay(
            self,
            window: ClosedWindow,
            stroke: str,
            name: str = ''
    ) -> RenderSpec:
        self.overlays.append(Overlay(window=window, stroke=stroke, name=name))
        return self

    def cell_colors(
            self
    ) -> Dict[Point, str]:
        colors: Dict[Point, str] = {}
        for layer in self.layers:
            for p in layer.points:
                colors[p] = layer.fill
        return colors


def render(
        spec: RenderSpec
) -> draw.Drawing:
    """
    Draws ``spec`` with the lattice y axis pointing up.

    Args:
        spec: the layers and overlays to draw

    Returns:
        The drawsvg drawing
    """
    colors = spec.cell_colors()
    size = spec.cell_size

    bounds = list(colors)
    for overlay in spec.overlays:
        bounds.extend(overlay.window.inside)
    if not bounds:
        return draw.Drawing(size, size)

    box = extents(bounds)
    # one cell of margin so that overlay lines on the border stay visible
    width = (box.width + 2) * size
    height = (box.height + 2) * size

    def corner(x: int, y: int):
        return (x - box.l + 1) * size, (box.t - y + 1) * size

    d = draw.Drawing(width, height)
    for p in sorted(colors):
        x, y = corner(p.x, p.y + 1)
        d.append(draw.Rectangle(x, y, size, size, fill=colors[p], stroke=CELL_STROKE, stroke_width=0.5))

    for overlay in spec.overlays:
        group = draw.Group(stroke=overlay.stroke, stroke_width=overlay.stroke_width)
        for edge in cut_edges(overlay.window.inside):
            if edge.is_horizontal:
                # the shared side of two horizontally adjacent cells is vertical
                x, y = corner(edge.b.x, edge.b.y + 1)
                group.append(draw.Line(x, y, x, y + size))
            else:
                x, y = corner(edge.b.x, edge.b.y)
                group.append(draw.Line(x, y, x + size, y))
        d.append(group)

    return d


def render_svg(
        spec: RenderSpec
) -> str:
    return render(spec).as_svg()


def save_svg(
        spec: RenderSpec,
        path: Union[AnyStr, Path]
):
    path = Path(path) if type(path) != Path else path
    path.write_text(render_svg(spec), encoding='utf-8')


def points_spec(
        points: Iterable[Iterable[int]],
        cell_size: int = 10
) -> RenderSpec:
    return RenderSpec(cell_size=cell_size).add_layer(points, fill=TILE_FILL, name='points')


def assembly_spec(
        assembly: Assembly,
        cell_size: int = 10,
        windows: Optional[Iterable[ClosedWindow]] = None
) -> RenderSpec:
    spec = points_spec(assembly.domain, cell_size=cell_size)
    for index, window in enumerate(windows or []):
        spec.add_overlay(window, stroke=WINDOW_STROKES[index % len(WINDOW_STROKES)], name=f'window{index}')
    return spec


def diff_spec(
        assembly: Assembly,
        target: Iterable[Iterable[int]],
        windows: Iterable[ClosedWindow],
        cell_size: int = 10
) -> RenderSpec:
    """
    The assembly domain, the target points it misses and the points it adds outside the target,
    each in its own colour, with the given windows on top.
    """
    target = as_points(target)
    spec = assembly_spec(assembly, cell_size=cell_size, windows=windows)
    spec.add_layer(target - assembly.domain, fill=MISSING_FILL, name='missing')
    spec.add_layer(assembly.domain - target, fill=EXTRA_FILL, name='extra')
    return spec


__all__ = [
    'TILE_FILL',
    'MISSING_FILL',
    'EXTRA_FILL',
    'WINDOW_STROKES',
    'Layer',
    'Overlay',
    'RenderSpec',
    'render',
    'render_svg',
    'save_svg',
    'points_spec',
    'assembly_spec',
    'diff_spec'
]
