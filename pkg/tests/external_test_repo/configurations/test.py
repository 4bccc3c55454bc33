from tilepump.components.atam import SimulatorConfig, Simulator
from tilepump.core.registry import Registry, register


@register
def register_simulators():
    Registry.add_and_bind(config_class=SimulatorConfig,
                          component_class=Simulator,
                          config_constructor=SimulatorConfig.get_delta_class_copy,
                          config_kwargs={
                              'params': {
                                  'policy': 'random',
                                  'step_cap': 50
                              }
                          },
                          name='simulator',
                          tags={'short'},
                          namespace='external')
