import os
import sys

from fractions import Fraction

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'src'))

from plcube import constructors  # noqa: E402
from plcube.constructors import FIGURE2_SPEC, BreakpointSpec  # noqa: E402


@pytest.fixture(scope='session')
def h():
    return constructors.twist_root(FIGURE2_SPEC)


@pytest.fixture(scope='session')
def f1d():
    '''Breakpoints (-1, -1), (0, 1/2), (1, 1): slopes 3/2 then 1/2.'''
    return constructors.pl1d(BreakpointSpec(((-1, -1), (0, Fraction(1, 2)), (1, 1))))


@pytest.fixture(scope='session')
def figure_pair():
    return constructors.figure2_g()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
