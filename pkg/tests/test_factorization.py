import pytest

from dgmf.errors import RNotUnit
from dgmf.factorization import (
    MatrixFactorization,
    build_cone_and_rho,
    build_mf1,
    build_mf2,
    build_resolution,
    verify_mf,
)
from dgmf.matrix import PolyMatrix


def _assert_all_ok(results):
    bad = [r for r in results if not r.ok]
    assert not bad, [repr(r) for r in bad]


def _is_f_times_identity(product, f, ring):
    return product == PolyMatrix.scalar(ring, product.rows, f)


def test_e1_mf2_products(e1_state):
    mf = build_mf2(e1_state)
    assert mf.rank == 6
    _assert_all_ok(verify_mf(mf))
    assert _is_f_times_identity(mf.even @ mf.odd, e1_state.f, e1_state.ring)
    assert _is_f_times_identity(mf.odd @ mf.even, e1_state.f, e1_state.ring)


def test_e1_mf1_products(e1_state):
    mf = build_mf1(e1_state)
    assert mf.rank == 11
    _assert_all_ok(verify_mf(mf))
    assert _is_f_times_identity(mf.even @ mf.odd, e1_state.f, e1_state.ring)
    assert _is_f_times_identity(mf.odd @ mf.even, e1_state.f, e1_state.ring)


def test_e2_mf1_products(e2_state):
    mf = build_mf1(e2_state)
    assert mf.rank == 11
    _assert_all_ok(verify_mf(mf))
    u = e2_state.ring.variable("u")
    assert _is_f_times_identity(mf.even @ mf.odd, u, e2_state.ring)
    assert _is_f_times_identity(mf.odd @ mf.even, u, e2_state.ring)


def test_e2_mf2_needs_unit_r(e2_state):
    with pytest.raises(RNotUnit):
        build_mf2(e2_state)
    with pytest.raises(RNotUnit):
        build_resolution(e2_state, variant="acute")


def test_e3_both_factorizations(e3_state):
    mf1 = build_mf1(e3_state)
    mf2 = build_mf2(e3_state)
    assert mf1.rank == 2 * e3_state.bundle.rank(1) + 3
    assert mf2.rank == e3_state.bundle.rank(2)
    _assert_all_ok(verify_mf(mf1))
    _assert_all_ok(verify_mf(mf2))
    f = e3_state.f
    assert _is_f_times_identity(mf1.even @ mf1.odd, f, e3_state.ring)
    assert _is_f_times_identity(mf2.odd @ mf2.even, f, e3_state.ring)


def test_fault_injected_factorization_is_localized(e2_state):
    mf = build_mf1(e2_state)
    rows = [[mf.even[i, j] for j in range(mf.even.cols)] for i in range(mf.even.rows)]
    rows[0][0] = rows[0][0] + e2_state.ring.one
    broken = MatrixFactorization(
        mf.ring,
        mf.f,
        PolyMatrix(mf.ring, rows),
        mf.odd,
        mf.even_blocks,
        mf.odd_blocks,
        mf.label,
    )
    results = verify_mf(broken)
    bad = [r for r in results if not r.ok]
    assert bad
    assert all(r.name.startswith("mf1:") for r in bad)
    # the corrupted entry sits in the first block row and column
    assert any("(1,1)" in r.name for r in bad)


def test_cone_ranks_and_identities(e1_state, e2_state, e3_state):
    for state, ranks in (
        (e1_state, [1, 5, 10, 10, 5, 1]),
        (e2_state, [1, 5, 10, 10, 5, 1]),
        (e3_state, [1, 5, 14, 18, 9, 1]),
    ):
        cone, rho, results = build_cone_and_rho(state)
        assert cone.ranks == ranks
        _assert_all_ok(results)
        names = {r.name for r in results}
        assert any(n.startswith("L17-oct20:(l1 rho0)") for n in names)
        assert any(n.startswith("L17-oct20:(rho4 l5)") for n in names)


def test_e2_resolution_N(e2_state):
    res = build_resolution(e2_state, variant="N", check_len=10)
    assert [res.rank(i) for i in range(7)] == [1, 4, 6, 10, 11, 11, 11]
    _assert_all_ok(res.verify(10))


def test_e1_resolution_acute(e1_state):
    res = build_resolution(e1_state, variant="acute", check_len=10)
    assert [res.rank(i) for i in range(6)] == [1, 4, 6, 6, 6, 6]
    _assert_all_ok(res.verify(10))


def test_e3_resolutions(e3_state):
    res_n = build_resolution(e3_state, variant="N", check_len=10)
    res_a = build_resolution(e3_state, variant="acute", check_len=10)
    assert res_n.rank(5) == 2 * e3_state.bundle.rank(1) + 3
    assert res_a.rank(5) == e3_state.bundle.rank(2)
    _assert_all_ok(res_n.verify(10))
    _assert_all_ok(res_a.verify(10))


def test_rank_balance_on_every_factorization(e1_state, e2_state, e3_state):
    for state in (e1_state, e2_state, e3_state):
        mf = build_mf1(state)
        assert mf.even.rows == mf.even.cols == mf.odd.rows == mf.odd.cols
    mf = build_mf2(e1_state)
    assert mf.even.rows == mf.odd.rows
