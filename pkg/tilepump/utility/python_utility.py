from itertools import product
from typing import Dict, List


def get_dict_values_combinations(
        params_dict: Dict
) -> List[Dict]:
    """
    Builds all combinations of the given parameter values.

    Args:
        params_dict: dictionary that has parameter names as keys and the list of possible values as values

    Returns:
        A list of dictionaries, each describing a parameters combination.
        Keys are visited in sorted order so that the combination order is deterministic.
    """

    keys = sorted(params_dict)
    combinations = []
    for comb_tuple in product(*(params_dict[key] for key in keys)):
        combination = dict(zip(keys, comb_tuple))
        if len(combination):
            combinations.append(combination)

    return combinations


__all__ = ['get_dict_values_combinations']
