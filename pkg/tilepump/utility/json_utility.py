from pathlib import Path
from typing import AnyStr, Any, Union

import jsonpickle as json


def to_json(
        data: Any,
        plain: bool = False,
        **kwargs
) -> str:
    """
    Encodes data to a JSON string.

    Args:
        data: data to encode
        plain: if True, no jsonpickle type metadata is written (suitable for plain dicts and lists)

    Returns:
        The JSON string
    """
    return json.encode(data, unpicklable=not plain, **kwargs)


def from_json(
        data: str,
        **kwargs
) -> Any:
    return json.decode(data, **kwargs)


def load_json(
        filepath: Union[AnyStr, Path]
) -> Any:
    """
    Loads JSON data from file.

    Args:
        filepath: path of the .json file

    Returns:
        The decoded data
    """
    filepath = Path(filepath) if type(filepath) != Path else filepath

    with filepath.open(mode='r', encoding='utf-8') as f:
        return from_json(data=f.read())


def save_json(
        filepath: Union[AnyStr, Path],
        data: Any,
        plain: bool = False,
        **kwargs
):
    """
    Saves data in JSON format to file.

    Args:
        filepath: path of the .json file
        data: data to save
        plain: if True, no jsonpickle type metadata is written
    """
    filepath = Path(filepath) if type(filepath) != Path else filepath

    with filepath.open(mode='w', encoding='utf-8') as f:
        f.write(to_json(data, plain=plain, indent=4, **kwargs))
        f.write('\n')


__all__ = ['from_json', 'to_json', 'load_json', 'save_json']
