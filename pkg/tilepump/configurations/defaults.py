from tilepump.components.atam import SimulatorConfig, Simulator, VerifierConfig, SelfAssemblyVerifier
from tilepump.components.pump import RefuterConfig, Refuter
from tilepump.core.registry import Registry, register


@register
def register_simulators():
    Registry.add_and_bind(config_class=SimulatorConfig,
                          component_class=Simulator,
                          name='simulator',
                          is_default=True)


@register
def register_verifiers():
    Registry.add_and_bind(config_class=VerifierConfig,
                          component_class=SelfAssemblyVerifier,
                          name='verifier',
                          is_default=True)


@register
def register_refuters():
    Registry.add_and_bind(config_class=RefuterConfig,
                          component_class=Refuter,
                          name='refuter',
                          is_default=True)
