import os
from dotenv import load_dotenv

from app.backend.version import __version__

load_dotenv()


def _env_int(name, default):
    return int(os.getenv(name, default))


class Config:
    VERSION = __version__
    SECRET_KEY = os.getenv('SECRET_KEY', 'dev-key')
    ALLOWED_ORIGINS = os.getenv('ALLOWED_ORIGINS', 'http://localhost:3000')

    # Khovanov / Lee
    KH_SIZE_LIMIT = _env_int('KH_SIZE_LIMIT', 2 ** 24)
    KH_DEFAULT_FIELD = os.getenv('KH_DEFAULT_FIELD', 'Q')

    # Oracles (exponential paths)
    ORACLE_MAX_CROSSINGS = _env_int('ORACLE_MAX_CROSSINGS', 8)
    BRACKET_ORACLE_MAX_CROSSINGS = _env_int('BRACKET_ORACLE_MAX_CROSSINGS', 10)
    S3_HOM_MAX_ARCS = _env_int('S3_HOM_MAX_ARCS', 12)

    THREADS = _env_int('THREADS', 1)
    CATALOG_EXTRA_PATHS = os.getenv('CATALOG_EXTRA_PATHS', '')

    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_DIR = os.getenv('LOG_DIR', os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'logs'))
    CACHE_TTL = _env_int('CACHE_TTL', 300)
    SLOW_COMPUTATION_SECONDS = float(os.getenv('SLOW_COMPUTATION_SECONDS', 5.0))


class TestingConfig(Config):
    TESTING = True
    LOG_DIR = ''
    CACHE_TTL = 0
    CATALOG_EXTRA_PATHS = ''


class ProductionConfig(Config):
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')
    THREADS = _env_int('THREADS', os.cpu_count() or 1)


config = {
    'development': Config,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': Config
}


def get_config(name=None):
    """Return the config class for ``name`` (or ``KNOTSLICE_ENV``)."""
    return config.get(name or os.getenv('KNOTSLICE_ENV', 'default'), Config)
