"""
Shared fixtures and the --runslow switch
"""

import numpy as np
import pytest

from waldron.models.simplex import Simplex
from waldron.models.weights import CosineWeight, IdentityWeight, QuadraticWeight


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run the full Lebesgue table reproductions')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def triangle():
    return Simplex.named('equilateral2d')


@pytest.fixture
def tetrahedron():
    return Simplex.named('centred3d')


@pytest.fixture
def cosine():
    return CosineWeight()


@pytest.fixture(params=['identity', 'cosine', 'quad'])
def builtin_weight(request):
    return {
        'identity': IdentityWeight,
        'cosine': CosineWeight,
        'quad': QuadraticWeight,
    }[request.param]()
