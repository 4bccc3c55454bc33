from pathlib import Path
from typing import Type

import pytest

from tilepump.components.atam import Simulator, SelfAssemblyVerifier
from tilepump.components.pump import Refuter, RefuterConfig
from tilepump.core.component import Component
from tilepump.core.configuration import Configuration, C
from tilepump.core.registry import Registry, RegistrationKey, NotRegisteredException, NotBoundException, \
    AlreadyRegisteredException, AlreadyBoundException


@pytest.fixture
def reset_registry():
    Registry.clear()


def test_registration(
        reset_registry
):
    """
    Testing that a ``Configuration`` is registered under its key with the default constructor
    """

    key = Registry.register_configuration(config_class=Configuration,
                                          name='test',
                                          tags={'tag1'},
                                          namespace='testing')
    assert key == RegistrationKey.of(name='test', namespace='testing', tags={'tag1'})
    assert Registry.REGISTRY[key].class_type == Configuration
    assert Registry.REGISTRY[key].constructor == Configuration.get_default

    with pytest.raises(AlreadyRegisteredException):
        Registry.register_configuration(config_class=Configuration,
                                        name='test',
                                        tags={'tag1'},
                                        namespace='testing')


def test_default_tag(
        reset_registry
):
    """
    Testing that default registrations are reachable with the default tag only
    """

    key = Registry.register_configuration(config_class=Configuration,
                                          name='test',
                                          is_default=True)
    assert key.tags == frozenset({'default'})
    assert str(key) == 'tilepump/test[default]'
    assert str(RegistrationKey.of(name='test')) == 'tilepump/test'


def test_binding(
        reset_registry
):
    """
    Testing that binding requires a registered key and happens once
    """

    with pytest.raises(NotRegisteredException):
        Registry.bind(registration_key=RegistrationKey.of(name='missing'), component_class=Component)

    key = Registry.register_configuration(config_class=Configuration,
                                          name='test',
                                          namespace='testing')
    Registry.bind(registration_key=key, component_class=Component)
    with pytest.raises(AlreadyBoundException):
        Registry.bind(registration_key=key, component_class=Component)


def test_register_and_binding_exception(
        reset_registry
):
    """
    Testing that an exception occurs when re-running registry.register_and_bind() for an already registered (and bound)
    configuration
    """

    Registry.register_and_bind(config_class=Configuration,
                               component_class=Component,
                               name='test',
                               tags={'tag'},
                               namespace='testing')
    with pytest.raises(AlreadyRegisteredException):
        Registry.register_and_bind(config_class=Configuration,
                                   component_class=Component,
                                   name='test',
                                   tags={'tag'},
                                   namespace='testing')


def test_build_component(
        reset_registry
):
    """
    Testing Component building from a registered (and bound) configuration
    """

    key = Registry.register_and_bind(config_class=Configuration,
                                     component_class=Component,
                                     name='component',
                                     namespace='testing')
    component = Registry.build_component_from_key(registration_key=key)
    assert type(component) == Component

    with pytest.raises(NotRegisteredException):
        Registry.build_component(name='component', namespace='other')


def test_build_unbound_component(
        reset_registry
):
    """
    Testing that building a registered but unbound configuration raises an exception
    """

    key = Registry.register_configuration(config_class=Configuration,
                                          name='component',
                                          namespace='testing')
    with pytest.raises(NotBoundException):
        Registry.build_component_from_key(registration_key=key)


def test_retrieve_external_configurations(
        reset_registry
):
    """
    Testing Component building API for an external registration.
    """

    external_path = Path(__file__).absolute().parent.joinpath('external_test_repo')
    Registry.load_registrations(directory_path=external_path)
    component = Registry.build_component(name='simulator',
                                         tags={'short'},
                                         namespace='external')
    assert isinstance(component, Simulator)
    assert component.policy == 'random'
    assert component.step_cap == 50


def test_package_registrations(
        reset_registry
):
    """
    Testing that the package registrations bind simulator, verifier and refuter under the default tag
    """

    Registry.load_package_registrations()
    assert isinstance(Registry.build_component(name='simulator', tags={'default'}), Simulator)
    assert isinstance(Registry.build_component(name='verifier', tags={'default'}), SelfAssemblyVerifier)
    assert isinstance(Registry.build_component(name='refuter', tags={'default'}), Refuter)

    # loading twice does not register twice
    Registry.load_package_registrations()
    assert len([key for key in Registry.REGISTRY if key.namespace == 'tilepump']) == 3

    info = Registry.REGISTRY[RegistrationKey.of(name='refuter', tags={'default'})]
    assert info.class_type is RefuterConfig
    assert info.build().s_max == 3


class ConfigA(Configuration):

    @classmethod
    def get_default(
            cls: Type[C]
    ) -> C:
        config = super().get_default()

        config.add(name='x',
                   value=5,
                   type_hint=int)
        config.add(name='y',
                   value=10,
                   type_hint=int)
        return config


def test_register_delta_copy(
        reset_registry
):
    """
    Testing registering a configuration delta copy (and building it)
    """

    Registry.register_and_bind(config_class=ConfigA,
                               component_class=Component,
                               config_constructor=ConfigA.get_delta_class_copy,
                               config_kwargs={
                                   'params': {
                                       'x': 10,
                                       'y': 15
                                   }
                               },
                               name='config',
                               namespace='testing')
    component = Registry.build_component(name='config', namespace='testing')
    assert component.x == 10
    assert component.y == 15
