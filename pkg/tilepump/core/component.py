from __future__ import annotations

from typing import Any, Iterable, Optional, Dict, TypeVar, Type

from tilepump.core.configuration import Configuration

C = TypeVar('C', bound='Component')


class Component:
    """
    A code logic regulated by a ``Configuration``.
    Configuration parameters are readable (and writable) as component attributes.
    """

    def __init__(
            self,
            config: Configuration,
    ):
        """
        Args:
            config: the ``Configuration`` instance bound to this ``Component``.
        """
        self.config = config

    def __getattr__(
            self,
            item
    ):
        if item == 'config':
            raise AttributeError()
        if item in self.config:
            return self.config[item]
        raise AttributeError(f'{self.__class__.__name__} has no attribute {item}')

    def __setattr__(
            self,
            key,
            value
    ):
        if 'config' in self.__dict__ and key in self.config:
            self.config[key] = value
        else:
            super().__setattr__(key, value)

    def __dir__(
            self
    ) -> Iterable[str]:
        return list(super().__dir__()) + [str(key) for key in self.config.keys()]

    def get_delta_copy(
            self: C,
            params_dict: Optional[Dict[str, Any]] = None
    ) -> C:
        """
        Builds a ``Component`` copy whose ``Configuration`` differs from the original by the given values.

        Args:
            params_dict: parameter names as keys and new values as values.

        Returns:
            The ``Component`` delta copy.
        """

        return type(self)(config=self.config.get_delta_copy(params=params_dict))

    def run(
            self,
            *args,
            **kwargs
    ) -> Any:
        """
        General execution entry point of ``Component``.
        """
        pass

    @classmethod
    def build_component(
            cls: Type[C],
            name: str,
            namespace: str = 'tilepump',
            tags: Optional[set] = None,
            build_args: Optional[Dict] = None
    ) -> C:
        """
        Syntactic sugar for building a registered ``Component`` from its implicit ``RegistrationKey``.

        Raises:
            ``TypeError``: if the built component is not an instance of ``cls``.
        """
        from tilepump.core.registry import Registry

        component = Registry.build_component(name=name,
                                             namespace=namespace,
                                             tags=tags,
                                             build_args=build_args)
        if not isinstance(component, cls):
            raise TypeError(f'Expected a {cls.__name__} instance, got {type(component).__name__}')
        return component


__all__ = ['Component', 'C']
