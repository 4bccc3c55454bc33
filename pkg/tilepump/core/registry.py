from __future__ import annotations

import importlib.util
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Type, AnyStr, List, Set, Dict, Any, Union, Optional, Callable, FrozenSet

from tilepump.core.component import Component
from tilepump.core.configuration import Configuration

Tag = Optional[Set[str]]
Constructor = Callable[..., Configuration]


@dataclass(frozen=True)
class RegistrationKey:
    """
    Identifies a registered ``Configuration``: ``name`` is the kind of component (e.g., ``refuter``),
    ``tags`` distinguish registrations of the same kind within a ``namespace``.
    """

    name: str
    namespace: str = 'tilepump'
    tags: FrozenSet[str] = field(default_factory=frozenset)

    @classmethod
    def of(
            cls,
            name: str,
            namespace: Optional[str] = 'tilepump',
            tags: Tag = None
    ) -> RegistrationKey:
        return cls(name=name,
                   namespace=namespace if namespace is not None else 'tilepump',
                   tags=frozenset(tags) if tags is not None else frozenset())

    def __str__(
            self
    ) -> str:
        tags = f'[{",".join(sorted(self.tags))}]' if self.tags else ''
        return f'{self.namespace}/{self.name}{tags}'


class AlreadyRegisteredException(Exception):

    def __init__(
            self,
            registration_key: RegistrationKey
    ):
        super().__init__(f'A configuration has already been registered with the same key! Got: {registration_key}')


class NotRegisteredException(Exception):

    def __init__(
            self,
            registration_key: RegistrationKey
    ):
        super().__init__(f'Could not find registered configuration {registration_key}. Did you register it?')


class NotBoundException(Exception):

    def __init__(
            self,
            registration_key: RegistrationKey
    ):
        super().__init__(f'Registered configuration {registration_key} is not bound to any component')


class AlreadyBoundException(Exception):

    def __init__(
            self,
            registration_key: RegistrationKey
    ):
        super().__init__(f'Configuration {registration_key} is already bound to a component')


class InvalidConfigurationTypeException(Exception):

    def __init__(
            self,
            expected_type: Type,
            actual_type: Type
    ):
        super().__init__(f'Expected to build configuration of type {expected_type} but got {actual_type}')


@dataclass
class ConfigurationInfo:
    """
    Registry entry: the ``Configuration`` class, the constructor building it and the constructor arguments.
    """

    class_type: Type[Configuration]
    constructor: Constructor
    kwargs: Dict[str, Any]

    def build(
            self
    ) -> Configuration:
        config = self.constructor(**self.kwargs)
        if type(config) != self.class_type:
            raise InvalidConfigurationTypeException(expected_type=self.class_type, actual_type=type(config))
        return config


def register(
        func: Callable
) -> Callable:
    """
    Marks a function of a ``configurations`` script to be executed by ``Registry.load_registrations()``.
    """
    if Registry.REGISTER_SCOPE is None:
        return func

    if func not in Registry.REGISTRATION_METHODS and func.__module__ == Registry.REGISTER_SCOPE.name:
        Registry.REGISTRATION_METHODS.append(func)
    return func


class Registry:
    """
    Registered configurations and the component classes they are bound to.
    Components are built from their ``RegistrationKey`` with a validated configuration.
    """

    REGISTRY: Dict[RegistrationKey, ConfigurationInfo] = {}
    BINDINGS: Dict[RegistrationKey, Type[Component]] = {}

    REGISTRATION_METHODS: List[Callable] = []
    REGISTER_SCOPE: Optional[Path] = None
    DEFERRED: Dict[RegistrationKey, Callable] = {}

    @staticmethod
    def load_registrations(
            directory_path: Union[AnyStr, Path],
    ):
        """
        Runs the ``@register`` functions of every ``configurations`` folder under ``directory_path``, then
        issues the deferred registrations they queued. Keys already in the registry are skipped.
        """

        directory_path = Path(directory_path)
        if not directory_path.is_dir():
            return

        for config_folder in sorted(directory_path.rglob('configurations')):
            for python_script in sorted(config_folder.glob('*.py')):
                spec = importlib.util.spec_from_file_location(name=python_script.name, location=python_script)
                if spec is None:
                    continue
                Registry.REGISTER_SCOPE = python_script
                previous_methods_size = len(Registry.REGISTRATION_METHODS)
                spec.loader.exec_module(importlib.util.module_from_spec(spec=spec))
                for method in Registry.REGISTRATION_METHODS[previous_methods_size:]:
                    method()
                Registry.REGISTER_SCOPE = None

        for registration_key, registration_method in list(Registry.DEFERRED.items()):
            if registration_key not in Registry.REGISTRY:
                registration_method()
        Registry.DEFERRED.clear()

    @staticmethod
    def load_package_registrations(

    ):
        """
        Loads the simulator, verifier and refuter registrations shipped in ``tilepump/configurations``.
        """
        Registry.load_registrations(directory_path=Path(__file__).absolute().parent.parent)

    @staticmethod
    def clear(

    ):
        Registry.REGISTRY.clear()
        Registry.BINDINGS.clear()
        Registry.REGISTRATION_METHODS.clear()
        Registry.REGISTER_SCOPE = None
        Registry.DEFERRED.clear()

    @staticmethod
    def build_component_from_key(
            registration_key: RegistrationKey,
            build_args: Optional[Dict] = None
    ) -> Component:
        """
        Builds the ``Component`` bound to ``registration_key`` with its validated ``Configuration``.

        Raises:
            ``NotRegisteredException``: if the key is not registered.

            ``InvalidConfigurationTypeException``: if the constructor builds another ``Configuration`` class.

            ``NotBoundException``: if no ``Component`` is bound to the key.
        """

        if registration_key not in Registry.REGISTRY:
            raise NotRegisteredException(registration_key=registration_key)
        config = Registry.REGISTRY[registration_key].build()

        if registration_key not in Registry.BINDINGS:
            raise NotBoundException(registration_key=registration_key)
        config.validate()

        return Registry.BINDINGS[registration_key](config=config, **(build_args or {}))

    @staticmethod
    def build_component(
            name: str,
            namespace: str = 'tilepump',
            tags: Tag = None,
            build_args: Optional[Dict] = None
    ) -> Component:
        return Registry.build_component_from_key(registration_key=RegistrationKey.of(name=name,
                                                                                     namespace=namespace,
                                                                                     tags=tags),
                                                 build_args=build_args)

    @staticmethod
    def register_configuration(
            config_class: Type[Configuration],
            name: str,
            namespace: str = 'tilepump',
            tags: Tag = None,
            is_default: bool = False,
            config_constructor: Optional[Constructor] = None,
            config_kwargs: Optional[Dict] = None,
    ) -> RegistrationKey:
        """
        Registers a ``Configuration`` class under the key made of ``name``, ``namespace`` and ``tags``.

        Args:
            config_class: the class of the ``Configuration``
            name: kind of component the configuration is for
            namespace: group of the registration
            tags: metadata distinguishing registrations of the same kind
            is_default: if True, the ``default`` tag is added to ``tags``
            config_constructor: builds the ``Configuration`` (``config_class.get_default`` if None)
            config_kwargs: arguments of ``config_constructor``

        Raises:
            ``AlreadyRegisteredException``: if the key is already used
        """

        registration_key = RegistrationKey.of(name=name,
                                              namespace=namespace,
                                              tags=_with_default_tag(tags=tags, is_default=is_default))
        if registration_key in Registry.REGISTRY:
            raise AlreadyRegisteredException(registration_key=registration_key)

        Registry.REGISTRY[registration_key] = ConfigurationInfo(
            class_type=config_class,
            constructor=config_constructor if config_constructor is not None else config_class.get_default,
            kwargs=config_kwargs if config_kwargs is not None else {})
        return registration_key

    @staticmethod
    def bind(
            registration_key: RegistrationKey,
            component_class: Type[Component]
    ):
        """
        Raises:
            ``NotRegisteredException``: if ``registration_key`` is not registered.

            ``AlreadyBoundException``: if ``registration_key`` has already been bound
        """

        if registration_key not in Registry.REGISTRY:
            raise NotRegisteredException(registration_key=registration_key)
        if registration_key in Registry.BINDINGS:
            raise AlreadyBoundException(registration_key=registration_key)

        Registry.BINDINGS[registration_key] = component_class

    @staticmethod
    def register_and_bind(
            config_class: Type[Configuration],
            component_class: Type[Component],
            name: str,
            namespace: str = 'tilepump',
            tags: Tag = None,
            is_default: bool = False,
            config_constructor: Optional[Constructor] = None,
            config_kwargs: Optional[Dict] = None
    ) -> RegistrationKey:
        key = Registry.register_configuration(config_class=config_class,
                                              config_constructor=config_constructor,
                                              config_kwargs=config_kwargs,
                                              name=name,
                                              tags=tags,
                                              is_default=is_default,
                                              namespace=namespace)
        Registry.bind(registration_key=key, component_class=component_class)
        return key

    @staticmethod
    def add_and_bind(
            config_class: Type[Configuration],
            component_class: Type[Component],
            name: str,
            namespace: str = 'tilepump',
            tags: Tag = None,
            is_default: bool = False,
            config_constructor: Optional[Constructor] = None,
            config_kwargs: Optional[Dict] = None,
    ) -> RegistrationKey:
        """
        Queues a ``register_and_bind`` call, issued at the end of ``load_registrations()``.
        """
        tags = _with_default_tag(tags=tags, is_default=is_default)
        registration_key = RegistrationKey.of(name=name, namespace=namespace, tags=tags)
        Registry.DEFERRED.setdefault(registration_key, partial(Registry.register_and_bind,
                                                               config_class=config_class,
                                                               component_class=component_class,
                                                               name=name,
                                                               tags=tags,
                                                               namespace=namespace,
                                                               config_constructor=config_constructor,
                                                               config_kwargs=config_kwargs))
        return registration_key


def _with_default_tag(
        tags: Tag,
        is_default: bool
) -> Tag:
    if not is_default:
        return tags
    return set(tags).union({'default'}) if tags is not None else {'default'}


__all__ = [
    'RegistrationKey',
    'ConfigurationInfo',
    'Registry',
    'register',
    'Tag',
    'AlreadyRegisteredException',
    'NotRegisteredException',
    'NotBoundException',
    'AlreadyBoundException',
    'InvalidConfigurationTypeException'
]
