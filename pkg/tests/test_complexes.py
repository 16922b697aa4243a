import random

import pytest

from dgmf.complexes import (
    ChainMap,
    FreeComplex,
    build_homotopy,
    check_chain_map,
    check_complex,
    mapping_cone,
    reduce_mod_f,
)
from dgmf.dga import KoszulAlgebra
from dgmf.errors import LiftFailed, NotAChainMap
from dgmf.field import field_from_characteristic
from dgmf.matrix import PolyMatrix
from dgmf.poly import PolyRing, divide_exact

from conftest import random_poly

RING = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
X, Y, Z, W = RING.gens()

SEQUENCES = [
    [X, Y, Z, W],
    [X + Y, Y, Z, W],
    [X, Y + Z, Z, W + X],
    [X * X, Y * Y, Z * Z, W * W],
    [X + W, Y - Z, Z, W],
]


def random_homotopy(kos, rng):
    """Maps h_i : C_i -> C_{i+1} with deterministic random entries."""
    maps = []
    for i in range(5):
        rows = kos.complex.rank(i + 1)
        cols = kos.complex.rank(i)
        maps.append(
            PolyMatrix(
                RING,
                [
                    [random_poly(RING, rng, 1, 2) for _ in range(cols)]
                    for _ in range(rows)
                ],
                rows=rows,
                cols=cols,
            )
        )
    return maps


def manufactured_null_homotopic(kos, rng):
    """c_i = d_{i+1} h_i + h_{i-1} d_i for random h: null-homotopic by design."""
    h = random_homotopy(kos, rng)
    maps = []
    for i in range(5):
        c = kos.complex.d(i + 1) @ h[i]
        if i >= 1:
            c = c + h[i - 1] @ kos.complex.d(i)
        maps.append(c)
    return ChainMap(kos.complex, kos.complex, maps)


def test_koszul_is_a_complex():
    for seq in SEQUENCES:
        assert check_complex(KoszulAlgebra(RING, seq).complex)


def test_homotopy_property_25_null_homotopic_cases():
    count = 0
    for seed in range(25):
        rng = random.Random(1000 + seed)
        kos = KoszulAlgebra(RING, SEQUENCES[seed % len(SEQUENCES)])
        c = manufactured_null_homotopic(kos, rng)
        assert check_chain_map(c)
        h = build_homotopy(c)
        for i in range(5):
            lhs = kos.complex.d(i + 1) @ h.map(i)
            if i >= 1:
                lhs = lhs + h.map(i - 1) @ kos.complex.d(i)
            assert lhs == c.map(i)
        count += 1
    assert count == 25


def test_homotopy_property_5_non_liftable_cases():
    for seq in SEQUENCES:
        kos = KoszulAlgebra(RING, seq)
        identity = ChainMap(
            kos.complex,
            kos.complex,
            [PolyMatrix.identity(RING, kos.complex.rank(i)) for i in range(5)],
        )
        with pytest.raises(LiftFailed):
            build_homotopy(identity)


def test_homotopy_prescribed_blocks():
    kos = KoszulAlgebra(RING, [X, Y, Z, W])
    rng = random.Random(7)
    c = manufactured_null_homotopic(kos, rng)
    zero_h0 = PolyMatrix.zero(RING, 4, 1)
    if (kos.complex.d(1) @ zero_h0) == c.map(0):
        h = build_homotopy(c, prescribed={0: zero_h0})
        assert h.map(0).is_zero()
    bad = PolyMatrix(RING, [[RING.one], [RING.zero], [RING.zero], [RING.zero]])
    if (kos.complex.d(1) @ bad) != c.map(0):
        with pytest.raises(LiftFailed):
            build_homotopy(c, prescribed={0: bad})


def test_mapping_cone_ranks_and_complex():
    kos = KoszulAlgebra(RING, [X, Y, Z, W])
    identity = ChainMap(
        kos.complex,
        kos.complex,
        [PolyMatrix.identity(RING, kos.complex.rank(i)) for i in range(5)],
    )
    cone = mapping_cone(identity)
    assert cone.ranks == [1, 5, 10, 10, 5, 1]
    assert check_complex(cone)


def test_mapping_cone_rejects_non_chain_map():
    kos = KoszulAlgebra(RING, [X, Y, Z, W])
    maps = [PolyMatrix.identity(RING, kos.complex.rank(i)) for i in range(5)]
    maps[2] = PolyMatrix.zero(RING, 6, 6)
    with pytest.raises(NotAChainMap):
        mapping_cone(ChainMap(kos.complex, kos.complex, maps))


def test_reduce_mod_f(rng):
    f = RING.parse("x^2 + y")
    m = PolyMatrix(
        RING,
        [[random_poly(RING, rng, 3, 3) for _ in range(2)] for _ in range(2)],
        rows=2,
        cols=2,
    )
    reduced = reduce_mod_f(m, f)
    for i in range(2):
        for j in range(2):
            diff = m[i, j] - reduced[i, j]
            if not diff.is_zero():
                divide_exact(diff, f)  # raises if not a multiple of f
    assert reduce_mod_f(reduced, f) == reduced
