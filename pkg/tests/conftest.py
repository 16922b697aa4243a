import random

import pytest

from dgmf.field import field_from_characteristic
from dgmf.instances import build_e1, build_e2, build_e3
from dgmf.linkage import run_pipeline
from dgmf.poly import PolyRing


@pytest.fixture(scope="session")
def e1():
    return build_e1()


@pytest.fixture(scope="session")
def e2():
    return build_e2()


@pytest.fixture(scope="session")
def e3():
    return build_e3()


@pytest.fixture(scope="session")
def e1_state(e1):
    return run_pipeline(e1.bundle, e1.sequence, e1.f, include_syzygy_checks=True)


@pytest.fixture(scope="session")
def e2_state(e2):
    return run_pipeline(e2.bundle, e2.sequence, e2.f, include_syzygy_checks=True)


@pytest.fixture(scope="session")
def e3_state(e3):
    return run_pipeline(e3.bundle, e3.sequence, e3.f, include_syzygy_checks=True)


@pytest.fixture(scope="session")
def ring4():
    return PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])


def random_poly(ring, rng, max_degree=3, terms=4):
    """A deterministic pseudo-random polynomial."""
    p = ring.zero
    for _ in range(rng.randrange(terms + 1)):
        exp = [0] * ring.nvars
        for _ in range(rng.randrange(max_degree + 1)):
            exp[rng.randrange(ring.nvars)] += 1
        coeff = rng.randrange(1, 100)
        p = p + ring.monomial(tuple(exp), ring.field.coerce(coeff))
    return p


@pytest.fixture()
def rng():
    return random.Random(20260824)
