import re
from typing import Any, Dict, List

import pandas as pd

LINE_WIDTH = 200


def value_formatter(
        value: Any
) -> str:
    """
    Formats a single statistic value for table display.

    Args:
        value: the value to format

    Returns:
        The value in string format
    """

    if value is None:
        return ''
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, float):
        if value != value:
            return ''
        return f'{value:.0f}' if value >= 1000 else f'{value:.4g}'
    if isinstance(value, (list, tuple, set, frozenset)):
        return '[{}]'.format(','.join(str(item) for item in value))
    return str(value)


def prettify_statistics(
        statistics: Dict[str, Any]
) -> str:
    """
    Renders a dictionary of statistics as a single-row table.

    Args:
        statistics: column names as keys, statistics as values

    Returns:
        The table in string format
    """

    return prettify_table(rows=[statistics])


def prettify_table(
        rows: List[Dict[str, Any]]
) -> str:
    """
    Renders a list of homogeneous dictionaries as a table, one row per dictionary.

    Args:
        rows: the rows to render

    Returns:
        The table in string format
    """

    if not len(rows):
        return ''

    df = pd.DataFrame([{key: value_formatter(value) for key, value in row.items()} for row in rows])
    result = '   ' + df.to_string(na_rep='',
                                  line_width=LINE_WIDTH - 3,
                                  index=df.shape[0] > 1).replace('\n\n', '\n').replace('\n', '\n   ')
    return re.sub(r'\s+$', '', result)


__all__ = ['value_formatter', 'prettify_statistics', 'prettify_table']
