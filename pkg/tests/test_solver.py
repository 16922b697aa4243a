import pytest

from dgmf.dga import KoszulAlgebra, validate_dga
from dgmf.errors import CharTwoNeedsTables, SolverGaveUp
from dgmf.field import field_from_characteristic
from dgmf.instances import build_e3_complex
from dgmf.poly import PolyRing
from dgmf.solver import SolverConfig, complete_multiplication

RING = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
X, Y, Z, W = RING.gens()


def test_koszul_differentials_close():
    kos = KoszulAlgebra(RING, [X, Y, Z, W])
    bundle = complete_multiplication(
        kos.complex, RING.one, SolverConfig(), split=([0, 1, 2, 3], [])
    )
    report = validate_dga(bundle, sequence=[X, Y, Z, W])
    assert report.ok


def test_solver_output_is_always_validated():
    sequences = [
        [X, Y, Z, W],
        [X + Y, Y, Z, W],
        [X, Y, Z + W, W],
    ]
    for seq in sequences:
        kos = KoszulAlgebra(RING, seq)
        bundle = complete_multiplication(
            kos.complex, RING.one, SolverConfig(), split=([0, 1, 2, 3], [])
        )
        assert validate_dga(bundle, sequence=seq).ok


def test_char_two_needs_tables():
    ring2 = PolyRing(field_from_characteristic(2), ["x", "y", "z", "w"])
    kos = KoszulAlgebra(ring2, [ring2.variable(v) for v in "xyzw"])
    with pytest.raises(CharTwoNeedsTables):
        complete_multiplication(kos.complex, ring2.one, SolverConfig())


def test_gave_up_carries_report():
    # the naive lift does not close on the rank-8 resolution; with budget 0
    # the solver must give up loudly and attach what failed
    cx = build_e3_complex(RING)
    with pytest.raises(SolverGaveUp) as excinfo:
        complete_multiplication(
            cx,
            RING.one,
            SolverConfig(budget=0),
            split=([0, 1, 2, 3], [4, 5, 6, 7]),
        )
    assert excinfo.value.report


def test_seed_determinism():
    kos = KoszulAlgebra(RING, [X + Z, Y, Z, W])
    b1 = complete_multiplication(
        kos.complex, RING.one, SolverConfig(seed=5), split=([0, 1, 2, 3], [])
    )
    b2 = complete_multiplication(
        kos.complex, RING.one, SolverConfig(seed=5), split=([0, 1, 2, 3], [])
    )
    for key in b1.mult:
        assert b1.mult[key] == b2.mult[key]
