import random

import pytest

from dgmf.errors import NotInImage, NotUnimodular
from dgmf.field import field_from_characteristic
from dgmf.groebner import (
    GroebnerBasis,
    MVec,
    check_regular_sequence,
    ideal_dimension,
    invert_unimodular,
    solve_lift,
    syzygy_module,
)
from dgmf.matrix import PolyMatrix
from dgmf.poly import PolyRing

from conftest import random_poly

RING = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
X, Y, Z, W = RING.gens()


def test_normal_form_membership():
    gens = [MVec(RING, [X * X - Y]), MVec(RING, [X * Y - Z])]
    gb = GroebnerBasis(RING, 1, gens)
    # x^3 = x*(x^2 - y) + (xy - z) + z  ->  reduces to z
    assert gb.normal_form(MVec(RING, [X**3])).polys[0] == Z
    member = X**3 - Z
    assert gb.normal_form(MVec(RING, [member])).polys[0].is_zero()


def test_solve_lift_multiply_back(rng):
    a = PolyMatrix(
        RING,
        [[random_poly(RING, rng, 2, 2) for _ in range(3)] for _ in range(2)],
        rows=2,
        cols=3,
    )
    coeffs = PolyMatrix(
        RING,
        [[random_poly(RING, rng, 1, 2) for _ in range(2)] for _ in range(3)],
        rows=3,
        cols=2,
    )
    b = a @ coeffs
    lifted = solve_lift(a, b)
    assert a @ lifted == b


def test_solve_lift_not_in_image():
    a = PolyMatrix(RING, [[X], [RING.zero]], rows=2, cols=1)
    b = PolyMatrix(RING, [[RING.zero], [Y]], rows=2, cols=1)
    with pytest.raises(NotInImage):
        solve_lift(a, b)


def test_syzygy_module_annihilates(rng):
    # columns (x, y, xy) have syzygies; every syzygy must annihilate
    a = PolyMatrix(RING, [[X, Y, X * Y]], rows=1, cols=3)
    syz = syzygy_module(a)
    assert len(syz) > 0
    syz_matrix = PolyMatrix.from_columns(RING, [v.polys for v in syz], 3)
    assert (a @ syz_matrix).is_zero()
    # (y, -x, 0)-type relations must be in the span: check a known one lifts
    known = PolyMatrix(RING, [[Y], [-X], [RING.zero]], rows=3, cols=1)
    assert (a @ known).is_zero()
    lifted = solve_lift(syz_matrix, known)
    assert syz_matrix @ lifted == known


def test_ideal_dimension():
    assert ideal_dimension([X, Y, Z, W]) == 0
    assert ideal_dimension([X, Y]) == 2
    assert ideal_dimension([X * X, Y * Y, Z * Z, W * W]) == 0


def test_check_regular_sequence():
    assert check_regular_sequence([X, Y, Z, W])
    assert check_regular_sequence([X * X, Y * Y, Z * Z, W * W])
    assert not check_regular_sequence([X, Y, X + Y, W])
    assert not check_regular_sequence([X, Y, Z, RING.zero])


def test_invert_unimodular(rng):
    m = PolyMatrix(
        RING,
        [
            [RING.one, X, Y],
            [RING.zero, RING.one, Z],
            [RING.zero, RING.zero, RING.constant(3)],
        ],
    )
    inv = invert_unimodular(m)
    assert m @ inv == PolyMatrix.identity(RING, 3)
    assert inv @ m == PolyMatrix.identity(RING, 3)
    with pytest.raises(NotUnimodular):
        invert_unimodular(PolyMatrix(RING, [[X]]))
