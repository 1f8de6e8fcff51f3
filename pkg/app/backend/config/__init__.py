from .base_config import Config, TestingConfig, ProductionConfig, config, get_config
from .logging_config import LOGGING_CONFIG, build_logging_config, setup_logging

__all__ = ['Config', 'TestingConfig', 'ProductionConfig', 'config', 'get_config',
           'LOGGING_CONFIG', 'build_logging_config', 'setup_logging']
