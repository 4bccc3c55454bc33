import logging
import os
import sys
import traceback
from logging import FileHandler
from pathlib import Path
from typing import AnyStr, Optional, Union

_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

_logging_path: Optional[Path] = None
_stdout_handler: Optional[logging.Handler] = None
logger: Optional[logging.Logger] = None


def set_logging_path(
        logging_path: Union[AnyStr, Path]
):
    """
    Sets the file where the logger mirrors its output.

    Args:
        logging_path: path of the log file
    """

    global _logging_path
    _logging_path = Path(logging_path) if type(logging_path) != Path else logging_path


def _handle_exception(
        exctype,
        value,
        tb
):
    if logger is not None:
        logger.info(f"Type: {exctype}{os.linesep}"
                    f"Value: {value}{os.linesep}"
                    f"Traceback: {''.join(traceback.format_exception(exctype, value, tb))}{os.linesep}")


def build_logger(
        name: str = 'tilepump'
) -> logging.Logger:
    """
    Builds the package logger. Subsequent calls return the already built instance.

    Args:
        name: name of the logger

    Returns:
        The package logger
    """
    global logger
    global _stdout_handler

    if logger is not None:
        return logger

    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    formatter = logging.Formatter(_FORMAT)

    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(logging.ERROR)
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    if _logging_path is not None:
        file_handler = FileHandler(_logging_path)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    _stdout_handler = logging.StreamHandler(sys.stdout)
    _stdout_handler.setLevel(logging.INFO)
    _stdout_handler.setFormatter(formatter)
    logger.addHandler(_stdout_handler)

    sys.excepthook = _handle_exception
    return logger


def update_logger(
        logging_path: Union[AnyStr, Path]
):
    """
    Adds (or replaces) the file handler of an already built logger.

    Args:
        logging_path: path of the log file
    """

    set_logging_path(logging_path=logging_path)
    current = build_logger()

    for handler in list(current.handlers):
        if isinstance(handler, FileHandler):
            current.removeHandler(handler)
            handler.close()

    if _logging_path.parent.exists():
        file_handler = FileHandler(_logging_path)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(_FORMAT))
        current.addHandler(file_handler)


def set_quiet(
        quiet: bool = True
):
    """
    Raises the stdout handler threshold so that commands writing machine-readable output keep stdout clean.
    """

    build_logger()
    _stdout_handler.setLevel(logging.ERROR if quiet else logging.INFO)


__all__ = [
    'set_logging_path',
    'build_logger',
    'logger',
    'update_logger',
    'set_quiet'
]
