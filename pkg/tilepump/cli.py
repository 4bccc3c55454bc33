"""
The ``tilepump`` command line: classify generators, render stages, simulate tile systems, dump window movies,
craft tile systems and run the refutation driver.

Exit codes: 0 on success (a refutation found included), 2 on invalid input, 3 when no matching windows are found
and 4 when the generator does not admit window anchors.
"""

from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from tilepump.components.atam import Policy, TileSystem, InvalidTileSystemException, UnstableSeedException, \
    InvalidStepException, load_tile_system, unique_glue_system, DEFAULT_STEP_CAP
from tilepump.components.fractal import Generator, InvalidGeneratorException, ResourceCapExceededException, \
    NotPierFractalException, AnchorNotFoundException, classify as classify_generator, stage as build_stage, scale
from tilepump.components.grid import Region
from tilepump.components.pump import RefutationReport, PreconditionViolatedException, ReplayFailedException, \
    PigeonholeViolationException, shared_glue_system
from tilepump.components.render import save_svg, render_svg, points_spec, assembly_spec, diff_spec
from tilepump.components.windows import ClosedWindow, InvalidWindowException, InvalidParameterException, \
    closed_window, extract_movie, bond_forming
from tilepump.core.component import Component
from tilepump.core.data import ValidationFailureException, OutOfRangeParameterValueException
from tilepump.core.registry import Registry
from tilepump.utility import logging_utility
from tilepump.utility.json_utility import load_json, to_json

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_MATCH = 3
EXIT_NOT_APPLICABLE = 4

INVALID_INPUT = (
    ValueError,
    KeyError,
    TypeError,
    OSError,
    InvalidGeneratorException,
    InvalidTileSystemException,
    UnstableSeedException,
    InvalidStepException,
    ResourceCapExceededException,
    ValidationFailureException,
    OutOfRangeParameterValueException,
    InvalidWindowException,
    InvalidParameterException,
    PreconditionViolatedException,
    ReplayFailedException,
    PigeonholeViolationException
)
NOT_APPLICABLE = (NotPierFractalException, AnchorNotFoundException)

app = typer.Typer(add_completion=False,
                  help='Discrete self-similar fractals, tile assembly runs and window movie splicing.')


class CraftKind(str, Enum):
    UNIQUE = 'unique'
    SHARED = 'shared'


@contextmanager
def _exit_codes():
    try:
        yield
    except NOT_APPLICABLE as error:
        _fail(EXIT_NOT_APPLICABLE, error)
    except INVALID_INPUT as error:
        _fail(EXIT_INVALID, error)


def _fail(
        code: int,
        error: Exception
):
    logging_utility.build_logger().debug(f'Exiting with code {code}: {type(error).__name__}: {error}')
    typer.echo(f'Error: {error}', err=True)
    raise typer.Exit(code)


def _emit(
        text: str,
        out: Optional[Path]
):
    if out is None:
        typer.echo(text, nl=False)
    else:
        out.write_text(text, encoding='utf-8')


def _to_text(
        data
) -> str:
    return to_json(data, plain=True, indent=4) + '\n'


def _load_generator(
        path: Path
) -> Generator:
    return Generator.from_dict(load_json(path))


def _load_system(
        path: Path
) -> TileSystem:
    return load_tile_system(path)


def _simulator(
        policy: Policy,
        seed: int,
        step_cap: int
) -> Component:
    simulator = Component.build_component(name='simulator', tags={'default'})
    simulator = simulator.get_delta_copy(params_dict={'policy': policy.value, 'seed': seed, 'step_cap': step_cap})
    simulator.config.validate()
    return simulator


def _window(
        window: Optional[str],
        rect: Optional[str]
) -> ClosedWindow:
    if (window is None) == (rect is None):
        raise ValueError('Exactly one of --window and --rect is required')
    if rect is not None:
        return ClosedWindow.from_region(Region.parse(rect))
    values = [int(value) for value in window.split(',')]
    if len(values) != 7:
        raise ValueError(f'Expected c,s,g,e,f,p,q, got {window}')
    return closed_window(*values)


@app.callback()
def main(
        log: Optional[Path] = typer.Option(None, '--log', help='Mirror the log to this file'),
        verbose: bool = typer.Option(False, '--verbose', '-v', help='Print INFO logs on standard output')
):
    if log is not None:
        logging_utility.update_logger(log)
    logging_utility.build_logger()
    logging_utility.set_quiet(not verbose)
    Registry.load_package_registrations()


@app.command()
def classify(
        gen: Path = typer.Option(..., '--gen', help='Generator JSON file'),
        out: Optional[Path] = typer.Option(None, '--out', help='Report path (standard output if omitted)')
):
    """
    Classify a generator: bridges, piers and every fractal class flag with its witnesses.
    """
    with _exit_codes():
        generator = _load_generator(gen)
        _emit(_to_text(classify_generator(generator).to_dict()), out)


@app.command()
def stage(
        gen: Path = typer.Option(..., '--gen', help='Generator JSON file'),
        s: int = typer.Option(1, '--stage', help='Stage index'),
        c: int = typer.Option(1, '--scale', help='Scale factor'),
        cap: Optional[int] = typer.Option(None, '--cap', help='Point budget'),
        cell_size: int = typer.Option(10, '--cell-size', help='Cell side in pixels'),
        out: Optional[Path] = typer.Option(None, '--out', help='SVG path (standard output if omitted)')
):
    """
    Render the scaled stage of a generator as SVG.
    """
    with _exit_codes():
        if c < 1:
            raise ValueError(f'Scale must be positive, got {c}')
        points = scale(build_stage(_load_generator(gen), s, cap=cap), c)
        _emit(render_svg(points_spec(points, cell_size=cell_size)), out)


@app.command()
def simulate(
        tas: Path = typer.Option(..., '--tas', help='Tile system JSON file'),
        policy: Policy = typer.Option(Policy.LEX, '--policy', help='Attachment policy'),
        seed: int = typer.Option(0, '--seed', help='Random seed'),
        step_cap: int = typer.Option(DEFAULT_STEP_CAP, '--step-cap', '--cap', help='Maximum number of attachments'),
        region: Optional[str] = typer.Option(None, '--region', help='Growth region x0,y0,x1,y1'),
        out: Optional[Path] = typer.Option(None, '--out', help='Step dump path (standard output if omitted)'),
        svg: Optional[Path] = typer.Option(None, '--svg', help='Final assembly SVG path'),
        cell_size: int = typer.Option(10, '--cell-size', help='Cell side in pixels')
):
    """
    Run a tile system and dump its assembly sequence, one "x y tile" line per step.
    """
    with _exit_codes():
        system = _load_system(tas)
        sequence = _simulator(policy, seed, step_cap).run(system, Region.parse(region) if region else None)
        _emit(sequence.dump(), out)
        if svg is not None:
            save_svg(assembly_spec(sequence.result, cell_size=cell_size), svg)


@app.command()
def movie(
        tas: Path = typer.Option(..., '--tas', help='Tile system JSON file'),
        window: Optional[str] = typer.Option(None, '--window', help='Stage window c,s,g,e,f,p,q'),
        rect: Optional[str] = typer.Option(None, '--rect', help='Rectangular window x0,y0,x1,y1'),
        policy: Policy = typer.Option(Policy.LEX, '--policy', help='Attachment policy'),
        seed: int = typer.Option(0, '--seed', help='Random seed'),
        step_cap: int = typer.Option(DEFAULT_STEP_CAP, '--step-cap', '--cap', help='Maximum number of attachments'),
        region: Optional[str] = typer.Option(None, '--region', help='Growth region x0,y0,x1,y1'),
        bond_forming_only: bool = typer.Option(False, '--bond-forming', help='Keep bond-forming events only'),
        out: Optional[Path] = typer.Option(None, '--out', help='Movie dump path (standard output if omitted)')
):
    """
    Run a tile system and dump the movie of a window, one tab-separated event per line.
    """
    with _exit_codes():
        w = _window(window, rect)
        system = _load_system(tas)
        sequence = _simulator(policy, seed, step_cap).run(system, Region.parse(region) if region else None)
        window_movie = extract_movie(sequence, w)
        if bond_forming_only:
            window_movie = bond_forming(window_movie, sequence.result)
        _emit(window_movie.dump(), out)


@app.command()
def refute(
        tas: Path = typer.Option(..., '--tas', help='Tile system JSON file'),
        gen: Path = typer.Option(..., '--gen', help='Generator JSON file'),
        c: int = typer.Option(1, '--scale', help='Scale factor'),
        s_max: int = typer.Option(3, '--smax', help='Last stage with windows'),
        policy: Policy = typer.Option(Policy.LEX, '--policy', help='Attachment policy'),
        seed: int = typer.Option(0, '--seed', help='First random seed'),
        attempts: int = typer.Option(4, '--attempts', help='Random runs tried'),
        jobs: int = typer.Option(1, '--jobs', help='Threads extracting window movies'),
        cap: Optional[int] = typer.Option(None, '--cap', help='Point budget'),
        out: Optional[Path] = typer.Option(None, '--out', help='JSON report path (standard output if omitted)'),
        svg: Optional[Path] = typer.Option(None, '--svg', help='SVG with windows and domain difference'),
        cell_size: int = typer.Option(10, '--cell-size', help='Cell side in pixels')
):
    """
    Look for matching windows in a run of the tile system and splice across them.
    """
    with _exit_codes():
        system = _load_system(tas)
        generator = _load_generator(gen)
        refuter = Component.build_component(name='refuter', tags={'default'})
        refuter = refuter.get_delta_copy(params_dict={'scale': c,
                                                      's_max': s_max,
                                                      'policy': policy.value,
                                                      'seed': seed,
                                                      'attempts': attempts,
                                                      'jobs': jobs,
                                                      'cap': cap})
        refuter.config.validate()
        report = refuter.run(system, generator)
        _emit(_to_text(report.to_dict()), out)

        if svg is not None:
            target = scale(build_stage(generator, s_max, cap=cap), c)
            if isinstance(report, RefutationReport):
                spec = diff_spec(report.spliced.produced, target,
                                 windows=[report.search.match.w, report.search.match.w_prime],
                                 cell_size=cell_size)
            else:
                spec = points_spec(target, cell_size=cell_size)
            save_svg(spec, svg)

    if not isinstance(report, RefutationReport):
        raise typer.Exit(EXIT_NO_MATCH)


@app.command()
def craft(
        gen: Path = typer.Option(..., '--gen', help='Generator JSON file'),
        kind: CraftKind = typer.Option(CraftKind.SHARED, '--kind', help='unique or shared anchor glues'),
        c: int = typer.Option(1, '--scale', help='Scale factor'),
        s: int = typer.Option(3, '--stage', help='Stage index'),
        cap: Optional[int] = typer.Option(None, '--cap', help='Point budget'),
        out: Optional[Path] = typer.Option(None, '--out', help='Tile system path (standard output if omitted)')
):
    """
    Write a temperature-1 tile system building the scaled stage of a generator.
    """
    with _exit_codes():
        generator = _load_generator(gen)
        if c < 1:
            raise ValueError(f'Scale must be positive, got {c}')
        if kind == CraftKind.UNIQUE:
            system = unique_glue_system(scale(build_stage(generator, s, cap=cap), c))
        else:
            system = shared_glue_system(generator, c, s, cap=cap)
        _emit(_to_text(system.to_dict()), out)


__all__ = [
    'EXIT_OK',
    'EXIT_INVALID',
    'EXIT_NO_MATCH',
    'EXIT_NOT_APPLICABLE',
    'app'
]
