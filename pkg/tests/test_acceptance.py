"""Acceptance gate: ten criteria, one pass/fail line each.

Every numeric identity is checked by exact symbolic equality — there are no
tolerances anywhere.  Criterion 9 is a stretch goal and never fails the
suite; its outcome (or the named failing constraint) is printed either way.
"""

import json
import random
import time

import pytest

from dgmf.bundles import dict_to_instance, emit_text
from dgmf.cli import main as cli_main
from dgmf.complexes import ChainMap, build_homotopy
from dgmf.dga import KoszulAlgebra, build_koszul, validate_dga
from dgmf.errors import LiftFailed, RNotUnit, ShapeMismatch, SolverGaveUp
from dgmf.factorization import (
    build_cone_and_rho,
    build_mf1,
    build_mf2,
    build_resolution,
    verify_mf,
)
from dgmf.field import field_from_characteristic
from dgmf.instances import build_e3_complex
from dgmf.linkage import check_rank_bookkeeping, run_pipeline, verify_hypotheses
from dgmf.matrix import PolyMatrix
from dgmf.poly import PolyRing
from dgmf.solver import SolverConfig, complete_multiplication

from conftest import random_poly


def _line(number, ok, message):
    flag = "PASS" if ok else "FAIL"
    print(f"criterion {number}: {flag} — {message}")
    assert ok, message


def test_criterion_01_koszul_validator():
    ring = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
    seq = ring.gens()
    t0 = time.time()
    report = validate_dga(build_koszul(ring, seq), sequence=seq)
    elapsed = time.time() - t0
    _line(
        1,
        report.ok and elapsed < 1.0,
        f"Koszul bundle validator all-green in {elapsed:.2f}s (< 1s)",
    )


def test_criterion_02_e1_end_to_end(e1, e1_state):
    t0 = time.time()
    state = run_pipeline(e1.bundle, e1.sequence, e1.f)
    hyps = verify_hypotheses(state)
    mf2 = build_mf2(state)
    ring = state.ring
    f = state.f
    ok = all(r.ok for r in hyps)
    ok = ok and state.r == ring.one
    ok = ok and state.sigma == [ring.one, ring.zero, ring.zero, ring.zero]
    want = PolyMatrix.scalar(ring, 6, f)
    ok = ok and (mf2.even @ mf2.odd) == want and (mf2.odd @ mf2.even) == want
    elapsed = time.time() - t0
    ok = ok and elapsed < 10.0
    _line(
        2,
        ok,
        "E1: corrected homotopy passes all five hypotheses, MF2 products are "
        f"(1+x)*I6 exactly, r=1, sigma=e1, in {elapsed:.2f}s (< 10s)",
    )


def test_criterion_03_e2_end_to_end(e2):
    t0 = time.time()
    state = run_pipeline(e2.bundle, e2.sequence, e2.f)
    mf1 = build_mf1(state)
    u = state.ring.variable("u")
    want = PolyMatrix.scalar(state.ring, 11, u)
    ok = (mf1.even @ mf1.odd) == want and (mf1.odd @ mf1.even) == want
    res = build_resolution(state, variant="N", check_len=10)
    ok = ok and all(r.ok for r in res.verify(10))
    try:
        build_mf2(state)
        ok = False
    except RNotUnit:
        pass
    elapsed = time.time() - t0
    ok = ok and elapsed < 30.0
    _line(
        3,
        ok,
        "E2: MF1 products are u*I11 exactly, N has d.d = 0 mod u through "
        f"degree 10, reduced variant refused (r = u), in {elapsed:.2f}s (< 30s)",
    )


def test_criterion_04_identity_suite(e1_state, e2_state):
    bad = [
        r
        for state in (e1_state, e2_state)
        for r in state.identity_results
        if not r.ok
    ]
    names = {r.name for r in e1_state.identity_results}
    ok = not bad and "L17*.5" in names and "L17.15" in names
    _line(
        4,
        ok,
        f"identity suite green on E1 and E2 "
        f"({len(e1_state.identity_results)} results each, syzygy checks included)",
    )


def test_criterion_05_block_identities(e1_state, e2_state):
    ok = True
    seen = set()
    for state in (e1_state, e2_state):
        _, _, results = build_cone_and_rho(state)
        ok = ok and all(r.ok for r in results)
        seen |= {r.name for r in results}
    ok = ok and any(n.startswith("L17-oct20:(l1 rho0)") for n in seen)
    ok = ok and "L17-oct20:(rho4 l5)(1,1)" in seen
    _line(5, ok, f"all {len(seen)} named block identities pass on E1 and E2")


def test_criterion_06_homotopy_property():
    ring = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
    X, Y, Z, W = ring.gens()
    sequences = [
        [X, Y, Z, W],
        [X + Y, Y, Z, W],
        [X, Y + Z, Z, W + X],
        [X * X, Y * Y, Z * Z, W * W],
        [X + W, Y - Z, Z, W],
    ]
    solved = 0
    for seed in range(25):
        rng = random.Random(4000 + seed)
        kos = KoszulAlgebra(ring, sequences[seed % len(sequences)])
        h = []
        for i in range(5):
            rows, cols = kos.complex.rank(i + 1), kos.complex.rank(i)
            h.append(
                PolyMatrix(
                    ring,
                    [
                        [random_poly(ring, rng, 1, 2) for _ in range(cols)]
                        for _ in range(rows)
                    ],
                    rows=rows,
                    cols=cols,
                )
            )
        maps = []
        for i in range(5):
            c = kos.complex.d(i + 1) @ h[i]
            if i >= 1:
                c = c + h[i - 1] @ kos.complex.d(i)
            maps.append(c)
        chain = ChainMap(kos.complex, kos.complex, maps)
        got = build_homotopy(chain)
        for i in range(5):
            lhs = kos.complex.d(i + 1) @ got.map(i)
            if i >= 1:
                lhs = lhs + got.map(i - 1) @ kos.complex.d(i)
            assert lhs == chain.map(i)
        solved += 1
    refused = 0
    for seq in sequences:
        kos = KoszulAlgebra(ring, seq)
        identity = ChainMap(
            kos.complex,
            kos.complex,
            [PolyMatrix.identity(ring, kos.complex.rank(i)) for i in range(5)],
        )
        with pytest.raises(LiftFailed):
            build_homotopy(identity)
        refused += 1
    _line(
        6,
        solved == 25 and refused == 5,
        f"{solved}/25 seeded null-homotopic maps solved with exact zero "
        f"residual; {refused}/5 non-liftable cases refused",
    )


def test_criterion_07_rank_bookkeeping(e1_state, e2_state, e3_state):
    ok = True
    for state in (e1_state, e2_state, e3_state):
        for build in (build_mf1,):
            mf = build(state)
            ok = ok and mf.even.rows == mf.odd.rows == mf.even.cols
        bundle = state.bundle
        ok = ok and bundle.rank(2) == 2 * bundle.rank(1) - 2
        ok = ok and len(bundle.split[1]) == bundle.rank(1) - 4
    ring = e1_state.ring
    bad = build_koszul(ring, ring.gens())
    bad.split = None
    try:
        check_rank_bookkeeping(bad)
        named_abort = False
    except ShapeMismatch:
        named_abort = True
    ok = ok and named_abort
    _line(
        7,
        ok,
        "rank(G_even) = rank(G_odd) on every build; degree-2 and split rank "
        "constraints hold on all bundles; violations abort with a named error",
    )


def _solver_bundles():
    ring = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
    X, Y, Z, W = ring.gens()
    sequences = [
        [X, Y, Z, W],
        [X + Y, Y, Z, W],
        [X, Y + Z, Z, W],
        [X, Y, Z + W, W],
        [X + W, Y, Z, W],
        [X + Y + Z, Y, Z, W],
        [X, Y - Z, Z, W],
        [X - W, Y + W, Z, W],
        [X + 2 * Y, Y, Z + 3 * W, W],
        [X, 2 * Y + Z, Z, W],
    ]
    out = []
    for seq in sequences:
        kos = KoszulAlgebra(ring, seq)
        bundle = complete_multiplication(
            kos.complex, ring.one, SolverConfig(), split=([0, 1, 2, 3], [])
        )
        out.append((bundle, seq, ring.one + X))
    return out


def test_criterion_08_hypothesis_implication(e1, e2, e3):
    checked = 0
    shipped = [(i.bundle, i.sequence, i.f) for i in (e1, e2, e3)]
    for bundle, seq, f in shipped + _solver_bundles():
        state = run_pipeline(bundle, seq, f)
        results = {r.name: r.ok for r in verify_hypotheses(state)}
        abc = all(results[f"Thm17.9({k})"] for k in "abc")
        de = all(results[f"Thm17.9({k})"] for k in "de")
        assert not abc or de
        checked += 1
    _line(
        8,
        checked == 13,
        f"on {checked} bundles (3 shipped + 10 solver-generated) every X "
        "passing (a),(b),(c) also passes (d),(e)",
    )


def test_criterion_09_stretch_e3(e3, e3_state):
    # Part 1 (experiment): does the naive solver close on the rank-8 complex?
    ring = e3.ring
    cx = build_e3_complex(ring)
    try:
        complete_multiplication(
            cx, ring.one, SolverConfig(), split=([0, 1, 2, 3], [4, 5, 6, 7])
        )
        solver_note = "solver closed on the rank-(1,8,14,8,1) resolution"
    except SolverGaveUp as exc:
        first = exc.report[0] if exc.report else "no report"
        solver_note = (
            "solver gave up on the rank-(1,8,14,8,1) resolution; "
            f"failing constraint: {first}"
        )
    # Part 2: E3 end-to-end with the shipped closed-form multiplication.
    ok = all(r.ok for r in e3_state.identity_results)
    mf1, mf2 = build_mf1(e3_state), build_mf2(e3_state)
    ok = ok and all(r.ok for r in verify_mf(mf1))
    ok = ok and all(r.ok for r in verify_mf(mf2))
    ok = ok and all(r.ok for r in build_resolution(e3_state, "N", 10).verify(10))
    # stretch criterion: the outcome is recorded either way and never blocks
    _line(
        9,
        True,
        f"{solver_note}; E3 end-to-end with the shipped multiplication: "
        + ("all identity checks pass" if ok else "identity failures (recorded)"),
    )
    assert ok  # the shipped E3 is expected to pass; fail loudly if it regresses


def test_criterion_10_serialization(e1, e2, e3, tmp_path):
    ring101 = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
    ring0 = PolyRing(field_from_characteristic(0), ["a", "b", "c"])
    rng = random.Random(919)
    count = 0
    for _ in range(100):
        for ring in (ring101, ring0):
            p = random_poly(ring, rng, 4, 5)
            assert ring.parse(str(p)) == p
            count += 1
    byte_identical = True
    for inst in (e1, e2, e3):
        text = emit_text(inst)
        byte_identical = byte_identical and (
            emit_text(dict_to_instance(json.loads(text))) == text
        )
    _line(
        10,
        count == 200 and byte_identical,
        f"{count}-polynomial parser corpus round-trips; bundle "
        "emit -> load -> emit is byte-identical for E1, E2, E3",
    )
