from __future__ import annotations

import inspect
from copy import deepcopy
from functools import partial
from typing import Dict, Any, Callable, Optional, TypeVar, Hashable, Type, Iterable, List

from tilepump.core.data import Field, FieldDict, Parameter, ValidationResult, ValidationFailureException, holds_type
from tilepump.utility.python_utility import get_dict_values_combinations

C = TypeVar('C', bound='Configuration')
Constructor = Callable[..., C]


class Configuration(FieldDict):
    """
    A Configuration specifies the parameters of a ``Component``.
    Parameters carry type hints, allowed ranges and variants; conditions over parameters are checked by
    ``validate()``.
    """

    def __setitem__(
            self,
            key: Hashable,
            item: Any
    ):
        if isinstance(item, Field):
            super().__setitem__(key, item)
        else:
            if key not in self:
                raise KeyError(f'Cannot update the value of a non-existing parameter! Key = {key}')
            self.get(key).value = item
        if isinstance(self.get(key), Parameter):
            self.get(key).in_allowed_range()

    def add(
            self,
            name: str,
            value: Optional[Any] = None,
            type_hint: Optional[Type] = None,
            description: Optional[str] = None,
            allowed_range: Optional[Callable[[Any], bool]] = None,
            is_required: bool = False,
            variants: Optional[Iterable] = None,
    ):
        """
        Adds a ``Parameter`` via its implicit format, together with its default conditions.

        Args:
            name: unique identifier of the parameter
            value: value of the parameter
            type_hint: the type hint annotation of ``value``
            description: a string description for readability purposes
            allowed_range: predicate over admissible values of ``value``
            is_required: if True, ``value`` cannot be None
            variants: values of interest for ``value``
        """
        self[name] = Parameter(name=name,
                               value=value,
                               type_hint=type_hint,
                               description=description,
                               allowed_range=allowed_range,
                               is_required=is_required,
                               variants=variants)

        if is_required:
            self.add_condition(name=f'{name}_is_required',
                               condition=lambda p: p[name] is not None)

        if type_hint is not None:
            self.add_condition(name=f'{name}_typecheck',
                               condition=partial(_parameter_typecheck, param_name=name, type_hint=type_hint))

        if variants is not None:
            self.add_condition(name=f'{name}_valid_variants',
                               condition=lambda p: len(p.get(name).variants) > 0)

    def get_variants_combinations(
            self,
            validate: bool = True
    ) -> List[Dict[str, Any]]:
        """
        Gets all parameter combinations induced by the specified variants.

        Args:
            validate: if True, only combinations that pass validation are returned.

        Returns:
            List of variant combinations, each a dictionary with parameter names as keys and values as values.
        """

        parameters = {param_key: param.variants
                      for param_key, param in self.items()
                      if param_key != 'conditions' and param.variants is not None and len(param.variants)}
        combinations = get_dict_values_combinations(params_dict=parameters)
        if validate:
            return [comb for comb in combinations
                    if self.get_delta_copy(params=comb).validate(strict=False).passed]
        return combinations

    def validate(
            self,
            strict: bool = True
    ) -> ValidationResult:
        """
        Checks allowed ranges and all conditions of the current ``Configuration``.

        Args:
            strict: if True, a failed validation raises ``ValidationFailureException``

        Returns:
            A ``ValidationResult`` with the outcome of the validation process.

        Raises:
            ``ValidationFailureException``: if ``strict = True`` and the validation process failed
        """

        for param_key, param in self.items():
            if param_key == 'conditions' or param.allowed_range is None or param.value is None:
                continue
            if not param.allowed_range(param.value):
                validation_result = ValidationResult(passed=False,
                                                     error_message=f'Parameter {param_key} out of allowed range!')
                if strict:
                    raise ValidationFailureException(validation_result=validation_result)
                return validation_result

        return super().validate(strict=strict)

    def get_delta_copy(
            self: C,
            params: Optional[Dict[str, Any]] = None
    ) -> C:
        """
        Gets a copy of the current ``Configuration`` with some parameter values replaced.
        Unknown parameter names are ignored.

        Args:
            params: a dictionary with parameter names as keys and new values as values.

        Returns:
            A delta copy of current ``Configuration``.
        """
        params = params if params is not None else {}

        copy = deepcopy(self)
        for key, value in params.items():
            if key in copy and key != 'conditions':
                copy.get(key).value = deepcopy(value)

        return copy

    @classmethod
    def get_delta_class_copy(
            cls: Type[C],
            params: Dict[str, Any],
            constructor: Optional[Constructor] = None,
            constructor_kwargs: Optional[Dict] = None
    ) -> C:
        """
        Gets a delta copy of the default ``Configuration`` (or of the one built by ``constructor``).
        """
        constructor = constructor if constructor is not None else cls.get_default
        constructor_kwargs = constructor_kwargs if constructor_kwargs is not None else {}
        return constructor(**constructor_kwargs).get_delta_copy(params=params)

    @classmethod
    def get_default(
            cls: Type[C]
    ) -> C:
        """
        Returns the default Configuration instance.
        """
        return cls()


def _parameter_typecheck(
        parameters: Configuration,
        param_name: Hashable,
        type_hint: Type
) -> bool:
    found_param = parameters.get(param_name)
    if inspect.isclass(found_param.value) and inspect.isclass(type_hint):
        return issubclass(found_param.value, type_hint)
    return holds_type(name=found_param.name, value=found_param.value, type_hint=type_hint)


__all__ = ['Configuration', 'ValidationFailureException', 'C', 'Constructor']
