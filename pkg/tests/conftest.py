"""Session-scoped fixtures shared across the test modules.

The acceptance tests rebuild and time their own pipelines; everything
else reuses these cached objects.
"""

from __future__ import annotations

import random

import pytest

import fixtures_data as fx
from spectral_forge.kernel import CauchyKernel
from spectral_forge.reconstruction import reconstruct


@pytest.fixture(scope="session")
def fix1():
    return fx.make_fix1_data()


@pytest.fixture(scope="session")
def fix1_kernel(fix1):
    return CauchyKernel(fix1)


@pytest.fixture(scope="session")
def fix1_lax(fix1):
    return reconstruct(fix1)


@pytest.fixture(scope="session")
def fix2():
    return fx.make_fix2_data()


@pytest.fixture(scope="session")
def fix2_target():
    return fx.make_fix2_target_data()


@pytest.fixture(scope="session")
def fix2_kernel(fix2):
    return CauchyKernel(fix2)


@pytest.fixture(scope="session")
def fix2_lax(fix2):
    return reconstruct(fix2)


@pytest.fixture(scope="session")
def fix2_target_lax(fix2_target):
    return reconstruct(fix2_target)


@pytest.fixture(scope="session")
def planted_g2():
    """Genus-2 hyperelliptic data plus three exact generic curve points."""
    return fx.random_hyperelliptic(random.Random(20260823), 2, planted=3)
