from __future__ import annotations

import os
from dataclasses import dataclass
from functools import partial
from typing import Any, Optional, Callable, Dict, Type, Iterable, Tuple, Hashable

from typeguard import check_type


class OutOfRangeParameterValueException(Exception):

    def __init__(
            self,
            name: Hashable,
            value: Any
    ):
        super().__init__(f'Parameter {name} got value {value}, which is not in its allowed range')


@dataclass
class ValidationResult:
    """
    Outcome of ``FieldDict.validate()``.

    Args:
        passed: True if all conditions hold
        error_message: name of the failed condition, if any
    """

    passed: bool
    error_message: Optional[str] = None


class ValidationFailureException(Exception):

    def __init__(
            self,
            validation_result: ValidationResult
    ):
        super().__init__(f'The validation process has failed!{os.linesep}'
                         f'Error message: {validation_result.error_message}')


def holds_type(
        name: Hashable,
        value: Any,
        type_hint: Type
) -> bool:
    """
    Checks ``value`` against ``type_hint`` with typeguard.
    """

    try:
        check_type(argname=str(name),
                   value=value,
                   expected_type=type_hint)
    except TypeError:
        return False
    return True


class Field:
    """
    A named value with an optional type hint and description.
    """

    def __init__(
            self,
            name: Hashable,
            value: Any = None,
            type_hint: Optional[Type] = None,
            description: Optional[str] = None
    ):
        self.name = name
        self.value = value
        self.type_hint = type_hint
        self.description = description

    def __repr__(
            self
    ) -> str:
        return f'{self.name}: {self.value}'

    def __eq__(
            self,
            other: Any
    ) -> bool:
        return isinstance(other, Field) and self.name == other.name and self.value == other.value

    def __hash__(
            self
    ) -> int:
        return hash(repr(self))


class FieldDict(dict):
    """
    ``Field`` instances keyed by name.
    Item and attribute access return the wrapped values; named conditions are checked by ``validate()``.
    """

    def __init__(
            self,
            *args,
            **kwargs
    ):
        super().__init__()
        for values in args:
            for key, value in dict(values).items():
                self.add(name=key, value=value, type_hint=type(value))
        for key, value in kwargs.items():
            self.add(name=key, value=value, type_hint=type(value))

    def __getattr__(
            self,
            item
    ):
        field = self.get(item)
        if field is None:
            raise AttributeError(f'Could not find attribute {item}')
        return field.value

    def __setattr__(
            self,
            key,
            value
    ):
        self.__setitem__(key, value)

    def __setitem__(
            self,
            key: Hashable,
            item: Any
    ):
        if isinstance(item, Field):
            super().__setitem__(key, item)
        elif key not in self:
            raise KeyError(f'Cannot update a non-existing field! Key = {key}')
        else:
            self.get(key).value = item

    def __getitem__(
            self,
            item: Hashable
    ) -> Any:
        return super().__getitem__(item).value

    def __str__(
            self
    ) -> str:
        return str(self.to_value_dict())

    def to_value_dict(
            self
    ) -> Dict[Hashable, Any]:
        return {key: field.value.to_value_dict() if isinstance(field.value, FieldDict) else field.value
                for key, field in self.items() if key != 'conditions'}

    def add(
            self,
            name: Hashable,
            value: Any = None,
            type_hint: Optional[Type] = None,
            description: Optional[str] = None
    ):
        """
        Adds a ``Field``; a ``{name}_typecheck`` condition comes with any ``type_hint``.
        """

        self[name] = Field(name=name, value=value, type_hint=type_hint, description=description)
        if type_hint is not None:
            self.add_condition(name=f'{name}_typecheck',
                               condition=partial(_field_typecheck, field_name=name, type_hint=type_hint))

    def add_condition(
            self,
            condition: Callable[[FieldDict], bool],
            name: Optional[str] = None,
    ):
        """
        Adds a named condition over the current ``FieldDict``.

        Args:
            condition: predicate receiving the current ``FieldDict``
            name: identifier of the condition, reported on failure
        """
        if 'conditions' not in self:
            super().__setitem__('conditions', Field(name='conditions', value={}))

        if name is None:
            name = f'condition_{len(self.conditions) + 1}'
        self.conditions.setdefault(name, condition)

    def iter_conditions(
            self
    ) -> Iterable[Tuple[str, Callable[[FieldDict], bool]]]:
        if 'conditions' not in self:
            return []
        return list(self.conditions.items())

    def validate(
            self,
            strict: bool = True
    ) -> ValidationResult:
        """
        Evaluates nested ``FieldDict`` values first, then the conditions of the current one.

        Args:
            strict: if True, a failed validation raises ``ValidationFailureException``

        Returns:
            A ``ValidationResult`` naming the failed condition, if any.

        Raises:
            ``ValidationFailureException``: if ``strict = True`` and a condition failed
        """

        for key, field in self.items():
            if key != 'conditions' and isinstance(field.value, FieldDict):
                nested_validation = field.value.validate(strict=strict)
                if not nested_validation.passed:
                    return nested_validation

        for condition_name, condition in self.iter_conditions():
            if not condition(self):
                validation_result = ValidationResult(passed=False,
                                                     error_message=f'Condition {condition_name} failed!')
                if strict:
                    raise ValidationFailureException(validation_result=validation_result)
                return validation_result

        return ValidationResult(passed=True)


def _field_typecheck(
        fields: FieldDict,
        field_name: Hashable,
        type_hint: Type
) -> bool:
    field = fields.get(field_name)
    return holds_type(name=field.name, value=field.value, type_hint=type_hint)


class Parameter(Field):
    """
    A ``Field`` of a ``Configuration``, with an admissible range and the variants swept by batch runs.
    """

    def __init__(
            self,
            allowed_range: Optional[Callable[[Any], bool]] = None,
            is_required: bool = False,
            variants: Optional[Iterable] = None,
            **kwargs
    ):
        """
        Args:
            allowed_range: predicate over admissible values
            is_required: if True, the value cannot be None
            variants: values swept by ``Configuration.get_variants_combinations()``
        """

        super().__init__(**kwargs)
        self.allowed_range = allowed_range
        self.is_required = is_required
        self.variants = list(variants) if variants is not None else None

    def in_allowed_range(
            self
    ):
        """
        Raises:
            ``OutOfRangeParameterValueException``: if the value is set and outside ``allowed_range``
        """

        if self.value is not None and self.allowed_range is not None and not self.allowed_range(self.value):
            raise OutOfRangeParameterValueException(name=self.name, value=self.value)


__all__ = [
    'Field',
    'FieldDict',
    'Parameter',
    'ValidationResult',
    'ValidationFailureException',
    'OutOfRangeParameterValueException',
    'holds_type'
]
