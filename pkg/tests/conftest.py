import os
import sys
import random

import pytest

# Add the project root to Python path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.backend import create_app
from app.backend.catalog import load_builtin_catalog
from app.backend.knots import UNKNOT, parse_pd
from app.backend.middleware import clear_cache, reset_metrics

RIGHT_TREFOIL = 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'
LEFT_TREFOIL = 'X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]'
FIGURE_EIGHT = 'X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]'
KINK = 'X[1,1,2,2]'
HOPF_LINK = 'X[4,1,3,2] X[2,3,1,4]'

# PD file holding a line "kprime: X[..] ..." for the trace sibling of the Conway knot.
KPRIME_PD_FILE = os.environ.get('KPRIME_PD_FILE', '')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: 11-crossing Khovanov and s computations')
    config.addinivalue_line('markers', 'stretch: needs the externally sourced K\' PD file (KPRIME_PD_FILE)')


def pytest_collection_modifyitems(config, items):
    if KPRIME_PD_FILE and os.path.isfile(KPRIME_PD_FILE):
        return
    skip = pytest.mark.skip(reason='KPRIME_PD_FILE is not set')
    for item in items:
        if 'stretch' in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def app():
    """Create and configure a new app instance for each test."""
    app = create_app({
        'TESTING': True,
        'CACHE_TTL': 0,
        'SECRET_KEY': 'test'
    })
    yield app
    clear_cache()
    reset_metrics()


@pytest.fixture
def client(app):
    """Create a test client."""
    return app.test_client()


@pytest.fixture(scope='session')
def catalog():
    """The bundled catalog, validated once per session."""
    return load_builtin_catalog()


@pytest.fixture
def unknot():
    return UNKNOT


@pytest.fixture
def kink():
    return parse_pd(KINK)


@pytest.fixture
def trefoil():
    return parse_pd(RIGHT_TREFOIL)


@pytest.fixture
def left_trefoil():
    return parse_pd(LEFT_TREFOIL)


@pytest.fixture
def figure_eight():
    return parse_pd(FIGURE_EIGHT)


@pytest.fixture
def hopf_link():
    return parse_pd(HOPF_LINK)


@pytest.fixture
def small_knots(unknot, kink, trefoil, left_trefoil, figure_eight):
    return {'unknot': unknot, 'kink': kink, 'right-trefoil': trefoil, 'left-trefoil': left_trefoil,
            'figure-eight': figure_eight}


@pytest.fixture
def rng():
    """Seeded so randomized property runs are reproducible."""
    return random.Random(20240611)


@pytest.fixture
def kprime_file():
    return KPRIME_PD_FILE
