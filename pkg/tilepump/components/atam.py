"""
The abstract Tile Assembly Model: glues, tile types, assemblies, tile systems, assembly sequences and
their validation.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from types import MappingProxyType
from typing import Any, AnyStr, Container, Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, \
    Sequence, Tuple, Union

import networkx as nx
import numpy as np

from tilepump.components.grid import Point, Direction, GridEdge, ORIGIN, step, neighbors, is_connected
from tilepump.core.component import Component
from tilepump.core.configuration import Configuration
from tilepump.utility import logging_utility
from tilepump.utility.json_utility import load_json, save_json
from tilepump.utility.printing_utility import prettify_table

EXHAUSTIVE_CUT_LIMIT = 20
DEFAULT_STEP_CAP = 10_000


class InvalidTileSystemException(Exception):

    def __init__(
            self,
            reason: str
    ):
        super().__init__(f'Invalid tile system: {reason}')
        self.reason = reason


class UnstableSeedException(Exception):

    def __init__(
            self,
            temperature: int
    ):
        super().__init__(f'The seed assembly is not stable at temperature {temperature}')


class InvalidStepException(Exception):
    OCCUPIED = 'occupied'
    INSUFFICIENT_STRENGTH = 'insufficient-strength'
    UNKNOWN_TILE = 'unknown-tile'

    def __init__(
            self,
            index: int,
            reason: str
    ):
        super().__init__(f'Invalid assembly step {index}: {reason}')
        self.index = index
        self.reason = reason


class Glue(NamedTuple):
    label: str = ''
    strength: int = 0

    def binds(
            self,
            other: Glue
    ) -> bool:
        """
        Two abutting glues bond iff they are equal in label and strength and the strength is positive.
        """
        return self.strength > 0 and self == other

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'label': self.label, 'strength': self.strength}

    @classmethod
    def from_dict(
            cls,
            data: Optional[Dict[str, Any]]
    ) -> Glue:
        if data is None:
            return NULL_GLUE
        label, strength = data.get('label', ''), data.get('strength', 0)
        if not isinstance(label, str) or not isinstance(strength, int) or isinstance(strength, bool) \
                or strength < 0:
            raise InvalidTileSystemException(reason=f'malformed glue {data}')
        return cls(label=label, strength=strength)


NULL_GLUE = Glue()

_SIDE_NAMES = {
    Direction.N: 'north',
    Direction.E: 'east',
    Direction.S: 'south',
    Direction.W: 'west'
}


@dataclass(frozen=True)
class TileType:
    name: str
    north: Glue = NULL_GLUE
    east: Glue = NULL_GLUE
    south: Glue = NULL_GLUE
    west: Glue = NULL_GLUE

    def side(
            self,
            d: Direction
    ) -> Glue:
        return getattr(self, _SIDE_NAMES[d])

    def to_dict(
            self
    ) -> Dict[str, Any]:
        data: Dict[str, Any] = {'name': self.name}
        for d in (Direction.N, Direction.E, Direction.S, Direction.W):
            if self.side(d) != NULL_GLUE:
                data[_SIDE_NAMES[d]] = self.side(d).to_dict()
        return data

    @classmethod
    def from_dict(
            cls,
            data: Dict[str, Any]
    ) -> TileType:
        if not isinstance(data, dict) or not isinstance(data.get('name'), str):
            raise InvalidTileSystemException(reason=f'malformed tile type {data}')
        return cls(name=data['name'], **{side: Glue.from_dict(data.get(side)) for side in _SIDE_NAMES.values()})


class Assembly:
    """
    A partial tiling of the lattice: positions mapped to tile type names of a backing tile set.
    Assemblies are immutable; every operation returns a new instance.
    """

    def __init__(
            self,
            tiles: Mapping[Point, str],
            tile_types: Mapping[str, TileType],
            check: bool = True
    ):
        """
        Args:
            tiles: positions mapped to tile type names
            tile_types: the backing tile set, by name
            check: if True, the assembly must be non-empty, connected and use known tile types.
            Partial configurations (e.g. the part of an assembly inside a window) are built with ``check=False``.

        Raises:
            ``InvalidTileSystemException``: if ``check`` is enabled and a condition does not hold.
        """
        self._tiles = {Point(*p): name for p, name in sorted(tiles.items())}
        self._tile_types = tile_types

        if check:
            if not self._tiles:
                raise InvalidTileSystemException(reason='an assembly must be non-empty')
            unknown = sorted({name for name in self._tiles.values() if name not in tile_types})
            if unknown:
                raise InvalidTileSystemException(reason=f'unknown tile types {unknown}')
            if not is_connected(self._tiles):
                raise InvalidTileSystemException(reason='an assembly must be connected')

    @property
    def tiles(
            self
    ) -> Mapping[Point, str]:
        return MappingProxyType(self._tiles)

    @property
    def tile_types(
            self
    ) -> Mapping[str, TileType]:
        return self._tile_types

    @property
    def domain(
            self
    ) -> FrozenSet[Point]:
        return frozenset(self._tiles)

    def __len__(
            self
    ) -> int:
        return len(self._tiles)

    def __contains__(
            self,
            item
    ) -> bool:
        return Point(*item) in self._tiles

    def __getitem__(
            self,
            item
    ) -> str:
        return self._tiles[Point(*item)]

    def __eq__(
            self,
            other
    ) -> bool:
        return isinstance(other, Assembly) and self._tiles == other._tiles

    def __repr__(
            self
    ) -> str:
        return f'Assembly({len(self)} tiles)'

    def get(
            self,
            p: Point
    ) -> Optional[str]:
        return self._tiles.get(p)

    def glue(
            self,
            p: Point,
            d: Direction
    ) -> Glue:
        """
        The glue on side ``d`` of the tile at ``p`` (the null glue on empty positions).
        """
        name = self._tiles.get(p)
        return NULL_GLUE if name is None else self._tile_types[name].side(d)

    def bond_strength(
            self,
            p: Point,
            d: Direction
    ) -> int:
        """
        Strength of the bond between the tile at ``p`` and its neighbor in direction ``d`` (0 if none).
        """
        facing = self.glue(p, d)
        q = step(p, d)
        if p not in self._tiles or q not in self._tiles:
            return 0
        return facing.strength if facing.binds(self.glue(q, d.inverse)) else 0

    def restrict(
            self,
            points: Container[Point]
    ) -> Assembly:
        return Assembly({p: name for p, name in self._tiles.items() if p in points}, self._tile_types, check=False)

    def exclude(
            self,
            points: Container[Point]
    ) -> Assembly:
        return Assembly({p: name for p, name in self._tiles.items() if p not in points}, self._tile_types,
                        check=False)

    def translate(
            self,
            vector: Iterable[int]
    ) -> Assembly:
        return Assembly({p + vector: name for p, name in self._tiles.items()}, self._tile_types, check=False)

    def union(
            self,
            other: Assembly
    ) -> Assembly:
        return Assembly({**self._tiles, **other._tiles}, self._tile_types, check=False)

    def to_list(
            self
    ) -> List[Dict[str, Any]]:
        return [{'x': p.x, 'y': p.y, 'tile': name} for p, name in self._tiles.items()]


class TileSystem:
    """
    A tile assembly system: a tile set, a stable seed assembly and a temperature.
    """

    def __init__(
            self,
            tiles: Iterable[TileType],
            seed: Mapping[Point, str],
            temperature: int
    ):
        """
        Raises:
            ``InvalidTileSystemException``: if tile names repeat, the temperature is not a positive integer or the
            seed is not a valid assembly over the tile set.

            ``UnstableSeedException``: if the seed is not stable at ``temperature``.
        """
        tiles = tuple(tiles)
        names = [tile.name for tile in tiles]
        if len(set(names)) != len(names):
            raise InvalidTileSystemException(reason='tile type names must be unique')
        if not isinstance(temperature, int) or isinstance(temperature, bool) or temperature < 1:
            raise InvalidTileSystemException(reason=f'temperature must be a positive integer, got {temperature}')

        self.tiles = tiles
        self.temperature = temperature
        self.tile_types: Mapping[str, TileType] = MappingProxyType({tile.name: tile for tile in tiles})
        self.seed = Assembly(seed, self.tile_types)

        if not is_stable(self.seed, temperature):
            raise UnstableSeedException(temperature=temperature)

        index: Dict[Tuple[Direction, Glue], List[str]] = defaultdict(list)
        for tile in sorted(tiles, key=lambda t: t.name):
            for d in Direction:
                if tile.side(d).strength > 0:
                    index[(d, tile.side(d))].append(tile.name)
        self._glue_index = dict(index)

    def tiles_with_glue(
            self,
            d: Direction,
            glue: Glue
    ) -> List[str]:
        """
        Names (sorted) of the tile types exposing ``glue`` on side ``d``.
        """
        return self._glue_index.get((d, glue), [])

    def glue_types(
            self
    ) -> FrozenSet[Glue]:
        """
        The distinct non-null glues of the tile set.
        """
        return frozenset(tile.side(d) for tile in self.tiles for d in Direction if tile.side(d).strength > 0)

    def assembly(
            self,
            tiles: Mapping[Point, str],
            check: bool = False
    ) -> Assembly:
        return Assembly(tiles, self.tile_types, check=check)

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'temperature': self.temperature,
                'tiles': [tile.to_dict() for tile in self.tiles],
                'seed': self.seed.to_list()}

    @classmethod
    def from_dict(
            cls,
            data: Dict[str, Any]
    ) -> TileSystem:
        if not isinstance(data, dict) or not {'temperature', 'tiles', 'seed'}.issubset(data):
            raise InvalidTileSystemException(reason='expected an object with "temperature", "tiles" and "seed"')
        tiles = [TileType.from_dict(item) for item in data['tiles']]
        seed: Dict[Point, str] = {}
        for item in data['seed']:
            try:
                position = Point(int(item['x']), int(item['y']))
                name = item['tile']
            except (KeyError, TypeError, ValueError):
                raise InvalidTileSystemException(reason=f'malformed seed entry {item}')
            if position in seed:
                raise InvalidTileSystemException(reason=f'duplicate seed position {tuple(position)}')
            seed[position] = name
        return cls(tiles=tiles, seed=seed, temperature=data['temperature'])


def load_tile_system(
        filepath: Union[AnyStr, Path]
) -> TileSystem:
    return TileSystem.from_dict(load_json(filepath))


def save_tile_system(
        filepath: Union[AnyStr, Path],
        system: TileSystem
):
    save_json(filepath, system.to_dict(), plain=True)


def binding_graph(
        a: Assembly
) -> nx.Graph:
    """
    The binding graph of an assembly: an edge of weight w joins adjacent tiles whose abutting glues bond with
    strength w.
    """
    graph = nx.Graph()
    graph.add_nodes_from(a.tiles)
    for p in a.tiles:
        for d in (Direction.E, Direction.N):
            strength = a.bond_strength(p, d)
            if strength > 0:
                graph.add_edge(p, step(p, d), weight=strength)
    return graph


def _exhaustive_min_cut(
        graph: nx.Graph
) -> int:
    nodes = list(graph.nodes)
    position = {node: index for index, node in enumerate(nodes)}
    # the last node always stays on side 0, so every bipartition is visited once
    masks = np.arange(1, 2 ** (len(nodes) - 1), dtype=np.int64)
    totals = np.zeros_like(masks)
    for u, v, weight in graph.edges(data='weight'):
        i, j = position[u], position[v]
        totals += weight * (((masks >> i) ^ (masks >> j)) & 1)
    return int(totals.min())


def min_cut_weight(
        a: Assembly
) -> int:
    """
    Weight of the global minimum cut of the binding graph: exhaustive bipartitions up to
    ``EXHAUSTIVE_CUT_LIMIT`` tiles, Stoer-Wagner beyond.

    Raises:
        ``ValueError``: for single-tile assemblies, which have no cut.
    """
    graph = binding_graph(a)
    if graph.number_of_nodes() < 2:
        raise ValueError('A single-tile assembly has no cut')
    if not nx.is_connected(graph):
        return 0
    if graph.number_of_nodes() <= EXHAUSTIVE_CUT_LIMIT:
        return _exhaustive_min_cut(graph)
    cut_value, _ = nx.stoer_wagner(graph)
    return int(cut_value)


def is_stable(
        a: Assembly,
        tau: int
) -> bool:
    """
    True iff every cut of the binding graph has weight at least ``tau``; single tiles are always stable.
    """
    if len(a) < 2:
        return True
    return min_cut_weight(a) >= tau


def _attachable_tiles(
        tiles: Mapping[Point, str],
        p: Point,
        system: TileSystem
) -> List[str]:
    totals: Dict[str, int] = defaultdict(int)
    for d in Direction:
        name = tiles.get(step(p, d))
        if name is None:
            continue
        facing = system.tile_types[name].side(d.inverse)
        if facing.strength <= 0:
            continue
        for candidate in system.tiles_with_glue(d, facing):
            totals[candidate] += facing.strength
    return sorted(name for name, total in totals.items() if total >= system.temperature)


def frontier(
        a: Assembly,
        system: TileSystem
) -> Dict[Point, FrozenSet[str]]:
    """
    Every empty position adjacent to ``a`` where some tile type attaches with total matched strength
    at least the temperature, mapped to those tile types.
    """
    found = {}
    for p in sorted({q for p in a.tiles for q in neighbors(p) if q not in a}):
        names = _attachable_tiles(a.tiles, p, system)
        if names:
            found[p] = frozenset(names)
    return found


class Policy(str, Enum):
    LEX = 'lex'
    RANDOM = 'random'


class Step(NamedTuple):
    position: Point
    tile: str


class HaltReason(str, Enum):
    TERMINAL = 'terminal'
    STEP_CAP = 'step-cap'
    REGION = 'region'


@dataclass(frozen=True)
class AssemblySequence:
    """
    An assembly sequence of a tile system: the ordered single-tile attachments starting from the seed.
    ``truncated`` is set when tiles could still attach when the run stopped.
    """

    system: TileSystem
    steps: Tuple[Step, ...]
    result: Assembly
    halt_reason: HaltReason
    truncated: bool
    policy: Policy = Policy.LEX
    seed: Optional[int] = None
    _placements: Dict[Point, int] = field(init=False, compare=False, repr=False)

    def __post_init__(
            self
    ):
        placements = {position: -1 for position in self.system.seed.tiles}
        placements.update({s.position: index for index, s in enumerate(self.steps)})
        object.__setattr__(self, '_placements', placements)

    def __len__(
            self
    ) -> int:
        return len(self.steps)

    @classmethod
    def from_steps(
            cls,
            system: TileSystem,
            steps: Iterable[Tuple[Iterable[int], str]]
    ) -> AssemblySequence:
        """
        Builds a sequence from explicit steps, validated through ``replay``.

        Raises:
            ``InvalidStepException``: if a step is not a valid attachment.
        """
        steps = tuple(Step(position=Point(*position), tile=name) for position, name in steps)
        result = replay(system, steps)
        truncated = len(frontier(result, system)) > 0
        return cls(system=system,
                   steps=steps,
                   result=result,
                   halt_reason=HaltReason.STEP_CAP if truncated else HaltReason.TERMINAL,
                   truncated=truncated)

    def placement_index(
            self,
            p: Point
    ) -> Optional[int]:
        """
        Index of the step placing the tile at ``p``; -1 for seed tiles and None for empty positions.
        """
        return self._placements.get(p)

    def dump(
            self
    ) -> str:
        """
        One ``x y tile`` line per step.
        """
        return ''.join(f'{s.position.x} {s.position.y} {s.tile}{os.linesep}' for s in self.steps)


def run(
        system: TileSystem,
        policy: Union[Policy, str] = Policy.LEX,
        step_cap: int = DEFAULT_STEP_CAP,
        region: Optional[Container[Point]] = None,
        seed: Optional[int] = None
) -> AssemblySequence:
    """
    Grows the seed one tile at a time.
    The lex policy picks the lexicographically smallest frontier position, then the smallest tile name;
    the random policy draws both uniformly with a numpy generator seeded by ``seed``.

    Args:
        system: the tile system
        policy: the attachment policy
        step_cap: maximum number of attachments
        region: if given, only positions inside it are used
        seed: random seed of the random policy

    Returns:
        The produced ``AssemblySequence``
    """
    policy = Policy(policy)
    rng = np.random.default_rng(seed) if policy == Policy.RANDOM else None

    tiles: Dict[Point, str] = dict(system.seed.tiles)
    attachable: Dict[Point, List[str]] = {}

    def refresh(p: Point):
        names = [] if p in tiles else _attachable_tiles(tiles, p, system)
        if names:
            attachable[p] = names
        else:
            attachable.pop(p, None)

    for p in list(tiles):
        for q in neighbors(p):
            refresh(q)

    steps: List[Step] = []
    while True:
        candidates = sorted(p for p in attachable if region is None or p in region)
        if not candidates:
            halt_reason = HaltReason.REGION if attachable else HaltReason.TERMINAL
            break
        if len(steps) >= step_cap:
            halt_reason = HaltReason.STEP_CAP
            break

        if rng is None:
            position = candidates[0]
            name = attachable[position][0]
        else:
            position = candidates[int(rng.integers(len(candidates)))]
            names = attachable[position]
            name = names[int(rng.integers(len(names)))]

        tiles[position] = name
        steps.append(Step(position=position, tile=name))
        refresh(position)
        for q in neighbors(position):
            refresh(q)

    truncated = len(attachable) > 0
    if truncated:
        logging_utility.build_logger().debug(f'Run stopped with non-empty frontier ({halt_reason.value}) '
                                             f'after {len(steps)} steps')

    return AssemblySequence(system=system,
                            steps=tuple(steps),
                            result=Assembly(tiles, system.tile_types, check=False),
                            halt_reason=halt_reason,
                            truncated=truncated,
                            policy=policy,
                            seed=seed)


def replay(
        system: TileSystem,
        steps: Sequence[Tuple[Point, str]]
) -> Assembly:
    """
    Applies ``steps`` to the seed, checking that every step attaches a known tile type at an empty position with
    matched strength at least the temperature.

    Returns:
        The final assembly

    Raises:
        ``InvalidStepException``: on the first invalid step, with its index and the reason.
    """
    tiles: Dict[Point, str] = dict(system.seed.tiles)
    for index, (position, name) in enumerate(steps):
        position = Point(*position)
        if name not in system.tile_types:
            raise InvalidStepException(index=index, reason=InvalidStepException.UNKNOWN_TILE)
        if position in tiles:
            raise InvalidStepException(index=index, reason=InvalidStepException.OCCUPIED)

        tile = system.tile_types[name]
        strength = 0
        for d in Direction:
            neighbor = tiles.get(step(position, d))
            if neighbor is not None and tile.side(d).binds(system.tile_types[neighbor].side(d.inverse)):
                strength += tile.side(d).strength
        if strength < system.temperature:
            raise InvalidStepException(index=index, reason=InvalidStepException.INSUFFICIENT_STRENGTH)
        tiles[position] = name

    return Assembly(tiles, system.tile_types, check=False)


@dataclass(frozen=True)
class Counterexample:
    policy: Policy
    seed: Optional[int]
    missing: FrozenSet[Point]
    extra: FrozenSet[Point]
    truncated: bool

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'policy': self.policy.value,
                'seed': self.seed,
                'missing': [list(p) for p in sorted(self.missing)],
                'extra': [list(p) for p in sorted(self.extra)],
                'truncated': self.truncated}


@dataclass(frozen=True)
class Verdict:
    consistent: bool
    runs: int
    counterexamples: Tuple[Counterexample, ...]
    truncated_runs: int


def strictly_self_assembles(
        system: TileSystem,
        target: Iterable[Iterable[int]],
        region: Container[Point],
        runs: Optional[Iterable[Tuple[Union[Policy, str], Optional[int]]]] = None,
        step_cap: int = DEFAULT_STEP_CAP
) -> Verdict:
    """
    Desk-scale strict self-assembly check: every run of the batch is grown inside ``region`` and its domain is
    compared with the target, both restricted to the region.

    Args:
        system: the tile system
        target: the target point set
        region: the finite region where runs grow
        runs: (policy, seed) pairs; a single lex run by default
        step_cap: per-run attachment cap

    Returns:
        A ``Verdict`` listing every run whose domain differs from the target within the region
    """
    runs = list(runs) if runs is not None else [(Policy.LEX, None)]
    expected = frozenset(p for p in (Point(*q) for q in target) if p in region)

    counterexamples = []
    truncated_runs = 0
    for policy, seed in runs:
        sequence = run(system, policy=policy, step_cap=step_cap, region=region, seed=seed)
        truncated_runs += sequence.halt_reason == HaltReason.STEP_CAP
        produced = frozenset(p for p in sequence.result.domain if p in region)
        if produced != expected:
            counterexamples.append(Counterexample(policy=Policy(policy),
                                                  seed=seed,
                                                  missing=expected - produced,
                                                  extra=produced - expected,
                                                  truncated=sequence.truncated))

    return Verdict(consistent=not counterexamples,
                   runs=len(runs),
                   counterexamples=tuple(counterexamples),
                   truncated_runs=truncated_runs)


def tile_name(
        p: Point
) -> str:
    return f'tile_{p.x:04d}_{p.y:04d}'


def _edge_label(
        edge: GridEdge
) -> str:
    return f'{edge.a.x}_{edge.a.y}__{edge.b.x}_{edge.b.y}'


def unique_glue_system(
        points: Iterable[Iterable[int]],
        seed_point: Point = ORIGIN,
        labels: Optional[Mapping[GridEdge, str]] = None
) -> TileSystem:
    """
    A temperature-1 tile system with one tile type per point: every adjacency of ``points`` gets its own
    strength-1 glue, unless ``labels`` relabels it.

    Args:
        points: a connected set of non-negative points
        seed_point: position of the single seed tile
        labels: glue labels overriding the per-edge defaults

    Returns:
        The tile system seeded with the tile of ``seed_point``
    """
    points = frozenset(Point(*p) for p in points)
    labels = labels if labels is not None else {}

    tiles = []
    for p in sorted(points):
        sides = {}
        for d in Direction:
            q = step(p, d)
            if q in points:
                edge = GridEdge.of(p, q)
                sides[_SIDE_NAMES[d]] = Glue(label=labels.get(edge, _edge_label(edge)), strength=1)
        tiles.append(TileType(name=tile_name(p), **sides))

    return TileSystem(tiles=tiles, seed={seed_point: tile_name(seed_point)}, temperature=1)


class SimulatorConfig(Configuration):

    @classmethod
    def get_default(
            cls
    ):
        config = super().get_default()

        config.add(name='policy',
                   value=Policy.LEX.value,
                   type_hint=str,
                   allowed_range=lambda value: value in {policy.value for policy in Policy},
                   is_required=True,
                   description='Attachment policy: lex or random')
        config.add(name='seed',
                   value=0,
                   type_hint=int,
                   description='Random seed of the random policy')
        config.add(name='step_cap',
                   value=DEFAULT_STEP_CAP,
                   type_hint=int,
                   allowed_range=lambda value: value >= 0,
                   is_required=True,
                   description='Maximum number of attachments per run')
        return config


class Simulator(Component):
    """
    Runs a tile system according to its configured policy.
    """

    def run(
            self,
            system: TileSystem,
            region: Optional[Container[Point]] = None
    ) -> AssemblySequence:
        sequence = run(system,
                       policy=self.policy,
                       step_cap=self.step_cap,
                       region=region,
                       seed=self.seed if self.policy == Policy.RANDOM.value else None)
        logging_utility.build_logger().info(f'Simulated {len(sequence)} steps with policy {self.policy} '
                                            f'({sequence.halt_reason.value})')
        return sequence


class VerifierConfig(Configuration):

    @classmethod
    def get_default(
            cls
    ):
        config = super().get_default()

        config.add(name='policy',
                   value=Policy.LEX.value,
                   type_hint=str,
                   allowed_range=lambda value: value in {policy.value for policy in Policy},
                   variants=[Policy.LEX.value, Policy.RANDOM.value],
                   description='Attachment policies of the verification batch')
        config.add(name='seed',
                   value=0,
                   type_hint=int,
                   variants=[0, 1, 2, 3],
                   description='Random seeds of the verification batch')
        config.add(name='step_cap',
                   value=DEFAULT_STEP_CAP,
                   type_hint=int,
                   allowed_range=lambda value: value >= 0,
                   is_required=True,
                   description='Maximum number of attachments per run')
        return config


class SelfAssemblyVerifier(Component):
    """
    Checks strict self-assembly on a batch of runs, one per policy/seed variant combination.
    Lex runs ignore the seed, so they are run once.
    """

    def batch(
            self
    ) -> List[Tuple[Policy, Optional[int]]]:
        combinations = self.config.get_variants_combinations()
        if not combinations:
            combinations = [{'policy': self.policy, 'seed': self.seed}]

        batch = []
        for combination in combinations:
            policy = Policy(combination.get('policy', self.policy))
            seed = combination.get('seed', self.seed) if policy == Policy.RANDOM else None
            if (policy, seed) not in batch:
                batch.append((policy, seed))
        return batch

    def run(
            self,
            system: TileSystem,
            target: Iterable[Iterable[int]],
            region: Container[Point]
    ) -> Verdict:
        verdict = strictly_self_assembles(system, target, region, runs=self.batch(), step_cap=self.step_cap)
        logger = logging_utility.build_logger()
        logger.info(f'Verified {verdict.runs} runs: {len(verdict.counterexamples)} counterexamples')
        if verdict.counterexamples:
            logger.info(os.linesep + prettify_table(rows=[{'policy': item.policy.value,
                                                          'seed': item.seed,
                                                          'missing': len(item.missing),
                                                          'extra': len(item.extra),
                                                          'truncated': item.truncated}
                                                         for item in verdict.counterexamples]))
        return verdict


__all__ = [
    'EXHAUSTIVE_CUT_LIMIT',
    'DEFAULT_STEP_CAP',
    'InvalidTileSystemException',
    'UnstableSeedException',
    'InvalidStepException',
    'Glue',
    'NULL_GLUE',
    'TileType',
    'Assembly',
    'TileSystem',
    'load_tile_system',
    'save_tile_system',
    'binding_graph',
    'min_cut_weight',
    'is_stable',
    'frontier',
    'Policy',
    'Step',
    'HaltReason',
    'AssemblySequence',
    'run',
    'replay',
    'Counterexample',
    'Verdict',
    'strictly_self_assembles',
    'tile_name',
    'unique_glue_system',
    'SimulatorConfig',
    'Simulator',
    'VerifierConfig',
    'SelfAssemblyVerifier'
]
