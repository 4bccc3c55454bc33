"""
Window splicing and the refutation driver: find two windows whose bond-forming submovies match up to translation,
splice the assembly sequence across them and compare the spliced assembly with the scaled fractal.
"""

from __future__ import annotations

import os

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Dict, FrozenSet, List, Optional, Tuple, Union

from tilepump.components.atam import AssemblySequence, Assembly, Policy, Step, TileSystem, InvalidStepException, \
    replay, run, unique_glue_system
from tilepump.components.fractal import Generator, NotPierFractalException, stage, scale
from tilepump.components.grid import Point, Region, ORIGIN, GridEdge
from tilepump.components.windows import ClosedWindow, BondFormingSubmovie, WindowAnchor, bond_forming, \
    extract_movie, movies_equal_up_to, is_enclosed, anchor_window, anchor_translation, equivalent_line_windows, \
    anchor_variants, anchor_contact_edges
from tilepump.core.component import Component
from tilepump.core.configuration import Configuration
from tilepump.utility import logging_utility
from tilepump.utility.printing_utility import prettify_statistics

NO_MATCH_NOTE = 'No matching windows were found at desk scale. ' \
                'This is not a claim that the tile system strictly self-assembles the fractal.'


class PreconditionViolatedException(Exception):
    ENCLOSURE = 'enclosure'
    MOVIES = 'movies'
    SEED = 'seed'

    def __init__(
            self,
            reason: str
    ):
        super().__init__(f'Splice precondition violated: {reason}')
        self.reason = reason


class ReplayFailedException(Exception):

    def __init__(
            self,
            index: int,
            reason: str = ''
    ):
        super().__init__(f'Spliced sequence failed to replay at step {index} ({reason})')
        self.index = index


class PigeonholeViolationException(Exception):

    def __init__(
            self,
            distinct: int,
            bound: int
    ):
        super().__init__(f'Observed {distinct} distinct bond-forming submovies, above the bound {bound}')


@dataclass(frozen=True)
class SpliceInput:
    sequence: AssemblySequence
    w: ClosedWindow
    w_prime: ClosedWindow
    c_vec: Point


@dataclass(frozen=True)
class SpliceResult:
    """
    The spliced sequence and its result.

    ``produced`` is the assembly obtained by replaying ``gamma_steps`` from the seed. ``result`` is the outside
    of ``w_prime`` joined with the inside of ``w`` moved by c. The two coincide unless the splice is mirrored:
    when the seed sits inside both windows the inside of ``w`` stays in place and the outside of ``w_prime`` is
    moved by -c, so ``produced`` equals ``result`` translated by -c.
    """

    gamma_steps: Tuple[Step, ...]
    produced: Assembly
    result: Assembly
    replay_ok: bool
    mirrored: bool = False


def _seed_placement(
        seed: FrozenSet[Point],
        w: ClosedWindow,
        w_prime: ClosedWindow
) -> Optional[bool]:
    if all(p not in w and p not in w_prime for p in seed):
        return False
    if all(p in w and p in w_prime for p in seed):
        return True
    return None


def splice(
        splice_input: SpliceInput
) -> SpliceResult:
    """
    Builds the assembly sequence of the outside of ``w_prime`` joined with the inside of ``w`` moved by c.
    The two parts are disjoint: the moved inside lies in ``w_prime`` by enclosure.

    The main loop walks the two bond-forming submovies together: an event on the kept side advances the kept
    steps up to it, any other event advances the moved steps up to its counterpart. The remaining moved steps
    are then flushed, and the remaining kept steps appended.

    Raises:
        ``PreconditionViolatedException``: if w + c is not enclosed in ``w_prime`` (reason ``enclosure``),
        the submovies do not match up to c (reason ``movies``) or the seed is not on the same side of both
        windows (reason ``seed``).

        ``ReplayFailedException``: if the spliced sequence is not valid.
    """
    sequence, w, w_prime = splice_input.sequence, splice_input.w, splice_input.w_prime
    c_vec = Point(*splice_input.c_vec)
    alpha = sequence.result

    if not is_enclosed(w.translate(c_vec), w_prime):
        raise PreconditionViolatedException(reason=PreconditionViolatedException.ENCLOSURE)

    movie = bond_forming(extract_movie(sequence, w), alpha)
    movie_prime = bond_forming(extract_movie(sequence, w_prime), alpha)
    match = movies_equal_up_to(movie, movie_prime)
    if c_vec == ORIGIN or match is None or match.indeterminate or match.vector != c_vec:
        raise PreconditionViolatedException(reason=PreconditionViolatedException.MOVIES)

    mirrored = _seed_placement(sequence.system.seed.domain, w, w_prime)
    if mirrored is None:
        raise PreconditionViolatedException(reason=PreconditionViolatedException.SEED)

    if mirrored:
        def keep(p): return p in w
        def move(p): return p not in w_prime
        keep_movie, move_movie, vector = movie, movie_prime, -c_vec
    else:
        def keep(p): return p not in w_prime
        def move(p): return p in w
        keep_movie, move_movie, vector = movie_prime, movie, c_vec

    steps = sequence.steps
    gamma: List[Step] = []
    i = j = 0
    for k in range(len(keep_movie)):
        if keep(keep_movie[k].tile_position):
            target = keep_movie[k].step_index
            while i <= target:
                if keep(steps[i].position):
                    gamma.append(steps[i])
                i += 1
        else:
            target = move_movie[k].step_index
            while j <= target:
                if move(steps[j].position):
                    gamma.append(Step(position=steps[j].position + vector, tile=steps[j].tile))
                j += 1

    # flush: the moved part is finite, every step of it is added
    while j < len(steps):
        if move(steps[j].position):
            gamma.append(Step(position=steps[j].position + vector, tile=steps[j].tile))
        j += 1

    while i < len(steps):
        if keep(steps[i].position):
            gamma.append(steps[i])
        i += 1

    try:
        produced = replay(sequence.system, gamma)
    except InvalidStepException as error:
        raise ReplayFailedException(index=error.index, reason=error.reason)

    return SpliceResult(gamma_steps=tuple(gamma),
                        produced=produced,
                        result=produced.translate(c_vec) if mirrored else produced,
                        replay_ok=True,
                        mirrored=mirrored)


def pigeonhole_bound(
        system: TileSystem,
        c: int
) -> int:
    """
    T_glue^(2c) * (2c)!, where T_glue is the number of distinct glue types of the tile set.
    """
    return len(system.glue_types()) ** (2 * c) * factorial(2 * c)


@dataclass(frozen=True)
class WindowPair:
    i: int
    j: int
    c_vec: Point
    w: ClosedWindow
    w_prime: ClosedWindow


@dataclass(frozen=True)
class MatchSearch:
    anchor: WindowAnchor
    match: Optional[WindowPair]
    distinct_submovies: int
    submovies: int
    pigeonhole_bound: int

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'anchor': self.anchor.to_dict(),
                'matched': self.match is not None,
                'distinct_submovies': self.distinct_submovies,
                'submovies': self.submovies,
                'pigeonhole_bound': self.pigeonhole_bound}


def _candidate_pairs(
        anchor: WindowAnchor,
        c: int,
        g: int,
        s_max: int
) -> List[WindowPair]:
    if anchor.is_equivalent_lines:
        pairs = []
        for s in range(2, s_max + 1):
            first, second, vector = equivalent_line_windows(anchor, c, g, s)
            pairs.append(WindowPair(i=s, j=s, c_vec=vector, w=first, w_prime=second))
        return pairs

    windows = {s: anchor_window(anchor, c, g, s) for s in range(2, s_max + 1)}
    return [WindowPair(i=i, j=j, c_vec=anchor_translation(anchor, c, g, i, j), w=windows[i], w_prime=windows[j])
            for j in range(3, s_max + 1) for i in range(2, j)]


def find_matching_windows(
        seq: AssemblySequence,
        anchor: WindowAnchor,
        c: int,
        g: int,
        s_max: int,
        jobs: int = 1
) -> MatchSearch:
    """
    Looks for two anchor windows whose bond-forming submovies are equal up to the translation predicted by the
    window arithmetic.

    Pairs are scanned by smallest j, then smallest i. A pair is accepted when the seed lies in neither window
    or in both, the submovies match with a definite translation equal to the predicted one, and the moved
    first window is enclosed in the second.

    Args:
        seq: the assembly sequence
        anchor: where windows are placed
        c: the scale factor
        g: the generator side
        s_max: the last stage with windows
        jobs: number of threads extracting movies

    Returns:
        A ``MatchSearch`` with the accepted pair (if any) and the submovie statistics

    Raises:
        ``PigeonholeViolationException``: if more distinct submovies are observed than the pigeonhole bound allows.
    """
    logger = logging_utility.build_logger()
    pairs = _candidate_pairs(anchor, c, g, s_max)

    windows: List[ClosedWindow] = []
    for pair in pairs:
        for w in (pair.w, pair.w_prime):
            if w not in windows:
                windows.append(w)

    def submovie(w: ClosedWindow) -> BondFormingSubmovie:
        return bond_forming(extract_movie(seq, w), seq.result)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            submovies = list(executor.map(submovie, windows))
    else:
        submovies = [submovie(w) for w in windows]
    movie_of = {w: movie for w, movie in zip(windows, submovies)}

    distinct = len({movie.canonical_signature() for movie in submovies})
    bound = pigeonhole_bound(seq.system, c)
    logger.info(f'Window search ({anchor.kind.value}){os.linesep}' + prettify_statistics({
        'windows': len(windows),
        'distinct submovies': distinct,
        'pigeonhole bound': bound
    }))
    if distinct > bound:
        raise PigeonholeViolationException(distinct=distinct, bound=bound)

    seed = seq.system.seed.domain
    found = None
    for pair in pairs:
        if _seed_placement(seed, pair.w, pair.w_prime) is None:
            logger.debug(f'Skipping stages {(pair.i, pair.j)}: seed in one window only')
            continue
        match = movies_equal_up_to(movie_of[pair.w], movie_of[pair.w_prime])
        if match is None:
            continue
        if match.indeterminate:
            logger.debug(f'Skipping stages {(pair.i, pair.j)}: empty submovies')
            continue
        if match.vector != pair.c_vec:
            logger.warning(f'Stages {(pair.i, pair.j)}: submovies match by {tuple(match.vector)} '
                           f'but the windows predict {tuple(pair.c_vec)}')
            continue
        if not is_enclosed(pair.w.translate(pair.c_vec), pair.w_prime):
            logger.debug(f'Skipping stages {(pair.i, pair.j)}: enclosure does not hold')
            continue
        found = pair
        break

    return MatchSearch(anchor=anchor,
                       match=found,
                       distinct_submovies=distinct,
                       submovies=len(windows),
                       pigeonhole_bound=bound)


def _points_list(
        points: FrozenSet[Point]
) -> List[List[int]]:
    return [list(p) for p in sorted(points)]


@dataclass(frozen=True)
class RefutationReport:
    anchor: WindowAnchor
    stages: Tuple[int, int]
    c_vec: Point
    spliced: SpliceResult
    missing: FrozenSet[Point]
    extra: FrozenSet[Point]
    search: MatchSearch
    truncated: bool = False

    @property
    def refutes(
            self
    ) -> bool:
        return len(self.missing) + len(self.extra) > 0

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'result': 'refutation',
                'anchor': self.anchor.to_dict(),
                'stages': list(self.stages),
                'c_vec': list(self.c_vec),
                'gamma_steps': len(self.spliced.gamma_steps),
                'replay_ok': self.spliced.replay_ok,
                'mirrored': self.spliced.mirrored,
                'domain_diff': {'missing': _points_list(self.missing), 'extra': _points_list(self.extra)},
                'distinct_submovies': self.search.distinct_submovies,
                'pigeonhole_bound': self.search.pigeonhole_bound,
                'truncated': self.truncated}


@dataclass(frozen=True)
class NoMatchReport:
    searches: Tuple[MatchSearch, ...]
    pigeonhole_bound: int
    truncated: bool = False
    note: str = field(default=NO_MATCH_NOTE)

    @property
    def distinct_submovies(
            self
    ) -> int:
        return max((search.distinct_submovies for search in self.searches), default=0)

    @property
    def submovies(
            self
    ) -> int:
        return sum(search.submovies for search in self.searches)

    def to_dict(
            self
    ) -> Dict[str, Any]:
        return {'result': 'no-match',
                'anchors': [search.anchor.to_dict() for search in self.searches],
                'distinct_submovies': self.distinct_submovies,
                'submovies': self.submovies,
                'pigeonhole_bound': self.pigeonhole_bound,
                'searches': [search.to_dict() for search in self.searches],
                'truncated': self.truncated,
                'note': self.note}


def grow(
        system: TileSystem,
        region: Region,
        target: FrozenSet[Point],
        policy: Union[Policy, str] = Policy.LEX,
        seed: int = 0,
        attempts: int = 1,
        step_cap: Optional[int] = None
) -> AssemblySequence:
    """
    Runs the system inside ``region``. Random runs are retried with seeds seed, seed + 1, ... up to ``attempts``
    times; the first run producing the target inside the region is kept, the last one otherwise.
    """
    policy = Policy(policy)
    step_cap = step_cap if step_cap is not None else len(region.points())
    attempts = attempts if policy == Policy.RANDOM else 1

    sequence = None
    for attempt in range(attempts):
        sequence = run(system,
                       policy=policy,
                       step_cap=step_cap,
                       region=region,
                       seed=seed + attempt if policy == Policy.RANDOM else None)
        if frozenset(p for p in sequence.result.domain if p in region) == target:
            break
    return sequence


def refute(
        sys: TileSystem,
        gen: Generator,
        c: int,
        s_max: int,
        policy: Union[Policy, str] = Policy.LEX,
        seed: int = 0,
        attempts: int = 1,
        step_cap: Optional[int] = None,
        jobs: int = 1,
        cap: Optional[int] = None
) -> Union[RefutationReport, NoMatchReport]:
    """
    Grows the tile system over the stage-``s_max`` square, tries every anchor variant in order and splices
    across the first matching window pair.

    Returns:
        A ``RefutationReport`` with the difference between the spliced assembly and the scaled stage, or a
        ``NoMatchReport`` when no anchor yields a match

    Raises:
        ``NotPierFractalException``: if no anchor variant applies to the generator.
    """
    logger = logging_utility.build_logger()
    anchors = anchor_variants(gen, c)
    if not anchors:
        raise NotPierFractalException(details='no anchor variant applies')

    region = Region.square(c * gen.g ** s_max)
    target = scale(stage(gen, s_max, cap=cap), c)
    sequence = grow(sys, region, target, policy=policy, seed=seed, attempts=attempts, step_cap=step_cap)
    if sequence.truncated:
        logger.warning(f'The run stopped with attachable positions left ({sequence.halt_reason.value})')

    searches = []
    for anchor in anchors:
        search = find_matching_windows(sequence, anchor, c, gen.g, s_max, jobs=jobs)
        searches.append(search)
        if search.match is None:
            continue

        pair = search.match
        spliced = splice(SpliceInput(sequence=sequence, w=pair.w, w_prime=pair.w_prime, c_vec=pair.c_vec))
        domain = spliced.produced.domain
        report = RefutationReport(anchor=anchor,
                                  stages=(pair.i, pair.j),
                                  c_vec=pair.c_vec,
                                  spliced=spliced,
                                  missing=target - domain,
                                  extra=domain - target,
                                  search=search,
                                  truncated=sequence.truncated)
        logger.info(f'Spliced stages {report.stages} with c = {tuple(pair.c_vec)}: '
                    f'{len(report.missing)} missing and {len(report.extra)} extra points')
        return report

    logger.info(NO_MATCH_NOTE)
    return NoMatchReport(searches=tuple(searches),
                         pigeonhole_bound=pigeonhole_bound(sys, c),
                         truncated=sequence.truncated)


def shared_glue_system(
        gen: Generator,
        c: int,
        s_max: int,
        anchor: Optional[WindowAnchor] = None,
        cap: Optional[int] = None
) -> TileSystem:
    """
    The unique-glue system of the scaled stage ``s_max``, except that the contact edges of the anchor windows
    of every stage reuse the labels anchor0, anchor1, ... in order along their line.
    Without an explicit anchor the first anchor variant is used.

    Raises:
        ``NotPierFractalException``: if no anchor is given and no anchor variant applies to the generator.
    """
    points = scale(stage(gen, s_max, cap=cap), c)
    if anchor is None:
        anchors = anchor_variants(gen, c)
        if not anchors:
            raise NotPierFractalException(details='no anchor variant applies')
        anchor = anchors[0]

    labels: Dict[GridEdge, str] = {}
    for s in range(2, s_max + 1):
        for edges in anchor_contact_edges(gen, c, anchor, s):
            for index, edge in enumerate(edges):
                if edge.a in points and edge.b in points:
                    labels[edge] = f'anchor{index}'
    return unique_glue_system(points, seed_point=ORIGIN, labels=labels)


class RefuterConfig(Configuration):

    @classmethod
    def get_default(
            cls
    ):
        config = super().get_default()

        config.add(name='scale',
                   value=1,
                   type_hint=int,
                   allowed_range=lambda value: value >= 1,
                   is_required=True,
                   description='Scale factor c of the fractal')
        config.add(name='s_max',
                   value=3,
                   type_hint=int,
                   allowed_range=lambda value: value >= 3,
                   is_required=True,
                   description='Last stage with windows')
        config.add(name='policy',
                   value=Policy.LEX.value,
                   type_hint=str,
                   allowed_range=lambda value: value in {policy.value for policy in Policy},
                   is_required=True,
                   description='Attachment policy: lex or random')
        config.add(name='seed',
                   value=0,
                   type_hint=int,
                   description='First random seed of the random policy')
        config.add(name='attempts',
                   value=4,
                   type_hint=int,
                   allowed_range=lambda value: value >= 1,
                   description='Random runs tried before giving up on a run matching the target')
        config.add(name='jobs',
                   value=1,
                   type_hint=int,
                   allowed_range=lambda value: value >= 1,
                   description='Threads extracting window movies')
        config.add(name='cap',
                   value=None,
                   type_hint=Optional[int],
                   description='Point budget of stage construction (None: environment or default)')
        return config


class Refuter(Component):
    """
    Runs the refutation driver with the configured scale, stages and policy.
    """

    def run(
            self,
            system: TileSystem,
            gen: Generator
    ) -> Union[RefutationReport, NoMatchReport]:
        return refute(system, gen,
                      c=self.scale,
                      s_max=self.s_max,
                      policy=self.policy,
                      seed=self.seed,
                      attempts=self.attempts,
                      jobs=self.jobs,
                      cap=self.cap)


__all__ = [
    'NO_MATCH_NOTE',
    'PreconditionViolatedException',
    'ReplayFailedException',
    'PigeonholeViolationException',
    'SpliceInput',
    'SpliceResult',
    'splice',
    'pigeonhole_bound',
    'WindowPair',
    'MatchSearch',
    'find_matching_windows',
    'RefutationReport',
    'NoMatchReport',
    'grow',
    'refute',
    'shared_glue_system',
    'RefuterConfig',
    'Refuter'
]
