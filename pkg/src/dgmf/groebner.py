"""Module Groebner bases with lift records, syzygies, and derived solvers.

Vectors live in a free module P^r; the order is position-over-term (lower
position index wins) with graded-reverse-lex on monomials.  Every basis is
computed in augmented form: each generator is tracked together with a
shadow block recording its expression in the original generators.  The
shadow block makes three things fall out of one computation:

* membership and normal forms (the real block),
* lifts through a matrix (accumulated shadow coefficients), and
* syzygies (shadow blocks of members whose real block reduced to zero).
"""

from .errors import NotInImage, NotUnimodular, WrongLength
from .matrix import PolyMatrix, unimodular_det


class MVec:
    """A column vector of polynomials of a stated rank."""

    __slots__ = ("ring", "polys")

    def __init__(self, ring, polys):
        self.ring = ring
        self.polys = list(polys)

    @property
    def rank(self):
        return len(self.polys)

    def is_zero(self):
        return all(p.is_zero() for p in self.polys)

    def leading(self):
        """((position, exponent), coefficient) of the leading term."""
        for pos, p in enumerate(self.polys):
            if not p.is_zero():
                exp, c = p.leading()
                return (pos, exp), c
        return None

    def sub_scaled(self, other, q):
        """self - q * other for a polynomial q."""
        return MVec(
            self.ring, [a - q * b for a, b in zip(self.polys, other.polys)]
        )

    def scale(self, q):
        return MVec(self.ring, [q * p for p in self.polys])

    def __eq__(self, other):
        return isinstance(other, MVec) and other.polys == self.polys

    def __repr__(self):
        return f"MVec({', '.join(str(p) for p in self.polys)})"


def _divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def _exp_sub(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


def _exp_lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


class GroebnerBasis:
    """Auto-reduced Buchberger-complete basis of a submodule of P^rank.

    `members` are augmented vectors of rank `rank + len(gens)`; the first
    block is the reduced basis element, the trailing shadow block expresses
    it in the original generators.  `syzygy_shadows` are the shadow blocks
    of S-pair reductions whose real block vanished; they generate the
    syzygy module of the generators.
    """

    def __init__(self, ring, rank, gens):
        self.ring = ring
        self.rank = rank
        self.gens = list(gens)
        for g in self.gens:
            if g.rank != rank:
                raise WrongLength(f"generator rank {g.rank}, expected {rank}")
        self.members = []
        self.syzygy_shadows = []
        self._compute()

    # -- construction -------------------------------------------------

    def _aug(self, vec, shadow_polys):
        return MVec(self.ring, list(vec.polys) + list(shadow_polys))

    def _real(self, aug):
        return MVec(self.ring, aug.polys[: self.rank])

    def _shadow(self, aug):
        return MVec(self.ring, aug.polys[self.rank :])

    def _real_leading(self, aug):
        for pos in range(self.rank):
            p = aug.polys[pos]
            if not p.is_zero():
                exp, c = p.leading()
                return (pos, exp), c
        return None

    def _reduce_real(self, aug, basis, collect=None):
        """Reduce the real block of `aug` to normal form against `basis`.

        Terms of the real block that no basis leading term divides are moved
        to a remainder; the shadow block is carried along.  `collect`, when
        given, receives (index, quotient) pairs.
        """
        ring = self.ring
        field = ring.field
        rem = [ring.zero] * self.rank
        work = aug
        while True:
            lt = self._real_leading(work)
            if lt is None:
                break
            (pos, exp), c = lt
            reducer = None
            for idx, g in enumerate(basis):
                glt = self._real_leading(g)
                if glt is None:
                    continue
                (gpos, gexp), gc = glt
                if gpos == pos and _divides(gexp, exp):
                    reducer = (idx, g, gexp, gc)
                    break
            if reducer is None:
                # move the irreducible leading term into the remainder
                t = ring.monomial(exp, c)
                rem[pos] = rem[pos] + t
                polys = list(work.polys)
                polys[pos] = polys[pos] - t
                work = MVec(ring, polys)
                continue
            idx, g, gexp, gc = reducer
            q = ring.monomial(_exp_sub(exp, gexp), field.div(c, gc))
            if collect is not None:
                collect.append((idx, q))
            work = work.sub_scaled(g, q)
        # work now has zero real block; reattach the remainder
        polys = rem + list(work.polys[self.rank :])
        return MVec(ring, polys)

    def _monic(self, aug):
        lt = self._real_leading(aug)
        if lt is None:
            return aug
        _, c = lt
        return aug.scale(self.ring.constant(self.ring.field.inv(c)))

    def _compute(self):
        ring = self.ring
        none_zero = []
        basis = []
        for i, g in enumerate(self.gens):
            shadow = [ring.zero] * len(self.gens)
            shadow[i] = ring.one
            none_zero.append(self._aug(g, shadow))
        # seed with reduced generators, in input order
        for aug in none_zero:
            red = self._reduce_real(aug, basis)
            if self._real_leading(red) is None:
                sh = self._shadow(red)
                if not sh.is_zero():
                    self.syzygy_shadows.append(sh)
            else:
                basis.append(self._monic(red))
        pairs = [
            (i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))
        ]
        while pairs:
            pairs.sort(key=self._pair_key(basis))
            i, j = pairs.pop(0)
            s = self._spair(basis[i], basis[j])
            if s is None:
                continue
            red = self._reduce_real(s, basis)
            if self._real_leading(red) is None:
                sh = self._shadow(red)
                if not sh.is_zero():
                    self.syzygy_shadows.append(sh)
            else:
                basis.append(self._monic(red))
                k = len(basis) - 1
                pairs.extend((t, k) for t in range(k))
        self.members = self._autoreduce(basis)

    def _pair_key(self, basis):
        def key(pair):
            i, j = pair
            li = self._real_leading(basis[i])
            lj = self._real_leading(basis[j])
            if li is None or lj is None or li[0][0] != lj[0][0]:
                return (0, 0, (), i, j)
            lcm = _exp_lcm(li[0][1], lj[0][1])
            return (sum(lcm), li[0][0], self.ring.monomial_key(lcm), i, j)
        return key

    def _spair(self, g1, g2):
        l1 = self._real_leading(g1)
        l2 = self._real_leading(g2)
        (p1, e1), c1 = l1
        (p2, e2), c2 = l2
        if p1 != p2:
            return None
        ring = self.ring
        field = ring.field
        lcm = _exp_lcm(e1, e2)
        m1 = ring.monomial(_exp_sub(lcm, e1), field.inv(c1))
        m2 = ring.monomial(_exp_sub(lcm, e2), field.inv(c2))
        return g1.scale(m1).sub_scaled(g2.scale(ring.one), m2)

    def _autoreduce(self, basis):
        # drop members whose leading term another member divides, then
        # tail-reduce each survivor against the rest
        alive = list(basis)
        changed = True
        while changed:
            changed = False
            for i in range(len(alive)):
                others = alive[:i] + alive[i + 1 :]
                red = self._reduce_real(alive[i], others)
                if self._real_leading(red) is None:
                    sh = self._shadow(red)
                    if not sh.is_zero():
                        self.syzygy_shadows.append(sh)
                    alive = others
                    changed = True
                    break
                red = self._monic(red)
                if red.polys != alive[i].polys:
                    alive[i] = red
                    changed = True
        alive.sort(key=lambda g: self.ring.term_key(self._real_leading(g)[0]))
        return alive

    # -- queries ------------------------------------------------------

    def basis_vectors(self):
        """The reduced basis elements (real blocks only)."""
        return [self._real(m) for m in self.members]

    def lift_records(self):
        """Shadow blocks: each basis element as a combination of the gens."""
        return [self._shadow(m) for m in self.members]

    def normal_form(self, vec):
        """Normal form of a rank-`rank` vector against the basis."""
        aug = self._aug(vec, [self.ring.zero] * len(self.gens))
        red = self._reduce_real(aug, self.members)
        return self._real(red)

    def reduce_with_lift(self, vec):
        """(normal form, coefficients) with vec = sum(c_i * gens_i) + nf."""
        aug = self._aug(vec, [self.ring.zero] * len(self.gens))
        red = self._reduce_real(aug, self.members)
        nf = self._real(red)
        coeffs = [-p for p in red.polys[self.rank :]]
        return nf, coeffs

    def contains(self, vec):
        return self.normal_form(vec).is_zero()


def groebner_basis(gens, rank):
    """Buchberger-complete auto-reduced basis with lift records."""
    if not gens:
        raise WrongLength("groebner_basis needs at least one generator")
    return GroebnerBasis(gens[0].ring, rank, gens)


def _column_basis(a):
    """Groebner basis of the column span of the matrix `a`."""
    gens = [MVec(a.ring, a.column(j)) for j in range(a.cols)]
    return GroebnerBasis(a.ring, a.rows, gens)


def solve_lift(a, y, basis=None):
    """Solve a @ z == y exactly; z is the deterministic normal-form lift.

    Raises NotInImage on the first column of y whose normal form is nonzero.
    A precomputed column basis of `a` may be passed to amortize repeated
    solves against the same matrix.
    """
    if basis is None:
        basis = _column_basis(a)
    cols = []
    for j in range(y.cols):
        vec = MVec(a.ring, y.column(j))
        nf, coeffs = basis.reduce_with_lift(vec)
        if not nf.is_zero():
            raise NotInImage(j, nf)
        cols.append(coeffs)
    return PolyMatrix.from_columns(a.ring, cols, a.cols)


def syzygy_module(a):
    """Generators of {v : a @ v == 0}, via the augmented basis computation."""
    basis = _column_basis(a)
    syz = [MVec(a.ring, s.polys) for s in basis.syzygy_shadows]
    syz.sort(key=lambda v: a.ring.term_key(v.leading()[0]))
    return syz


def invert_unimodular(a):
    """Inverse of a square matrix whose determinant is a nonzero constant."""
    det = unimodular_det(a)  # raises NotUnimodular otherwise
    del det
    try:
        b = solve_lift(a, PolyMatrix.identity(a.ring, a.rows))
    except NotInImage as exc:  # pragma: no cover - det check rules this out
        raise NotUnimodular(a.ring.zero) from exc
    ident = PolyMatrix.identity(a.ring, a.rows)
    assert (a @ b) == ident and (b @ a) == ident
    return b


def ideal_dimension(gens):
    """Krull dimension of P/(gens), read off the leading-term ideal.

    The dimension equals the largest size of a set S of variables such that
    no leading monomial involves only variables from S.
    """
    if not gens:
        raise WrongLength("empty generating set")
    ring = gens[0].ring
    basis = GroebnerBasis(ring, 1, [MVec(ring, [g]) for g in gens if not g.is_zero()])
    lead_exps = []
    for m in basis.basis_vectors():
        (pos, exp), _ = m.leading()
        lead_exps.append(exp)
    if any(sum(e) == 0 for e in lead_exps):
        return -1  # the unit ideal
    n = ring.nvars
    best = 0
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        ok = True
        for exp in lead_exps:
            if all(exp[i] == 0 or (mask >> i) & 1 for i in range(n)):
                ok = False
                break
        if ok:
            best = size
    return best


def check_regular_sequence(gens):
    """True iff the four given polynomials form a regular sequence.

    Over a polynomial ring over a field this is a codimension count: the
    quotient by the ideal they generate must have dimension nvars - 4.
    """
    if len(gens) != 4:
        raise WrongLength(f"expected exactly 4 generators, got {len(gens)}")
    if any(g.is_zero() for g in gens):
        return False
    ring = gens[0].ring
    return ideal_dimension(gens) == ring.nvars - 4
