"""DG algebra bundles with divided squares and Poincare duality.

A `DgaBundle` packages a length-4 free complex M together with its
multiplication tensors, the divided-square table on degree 2, an
orientation unit identifying the top piece with the ring, and (optionally)
a split of degree 1 into a distinguished rank-4 block and its complement.

`KoszulAlgebra` is the exterior algebra on four generators killing a
length-4 sequence; it doubles as the standard self-dual example and as the
target algebra for the duality pairings used elsewhere.
"""

from itertools import combinations

from .complexes import FreeComplex, check_complex
from .errors import (
    CharTwoNeedsTables,
    NotPerfectPairing,
    ShapeMismatch,
    WrongLength,
)
from .matrix import PolyMatrix, unimodular_det


def _merge_sign(s, t):
    """(merged subset, sign) for juxtaposing e_s and e_t; (None, 0) if they meet."""
    if set(s) & set(t):
        return None, 0
    inversions = sum(1 for a in s for b in t if a > b)
    sign = -1 if inversions % 2 else 1
    return tuple(sorted(s + t)), sign


class KoszulAlgebra:
    """Exterior algebra on e_1..e_4 with differential sending e_i to a_i."""

    def __init__(self, ring, sequence):
        if len(sequence) != 4:
            raise WrongLength("a Koszul algebra here needs exactly 4 elements")
        self.ring = ring
        self.sequence = list(sequence)
        self.subsets = [list(combinations(range(4), i)) for i in range(5)]
        self.index = [
            {s: j for j, s in enumerate(level)} for level in self.subsets
        ]
        self.ranks = [len(level) for level in self.subsets]
        self.complex = FreeComplex(
            ring, self.ranks, [self._diff(i) for i in range(1, 5)]
        )

    def _diff(self, i):
        cols = []
        for s in self.subsets[i]:
            col = [self.ring.zero] * self.ranks[i - 1]
            for j, v in enumerate(s):
                face = tuple(x for x in s if x != v)
                coef = self.sequence[v]
                if j % 2:
                    coef = -coef
                col[self.index[i - 1][face]] = col[self.index[i - 1][face]] + coef
            cols.append(col)
        return PolyMatrix.from_columns(self.ring, cols, self.ranks[i - 1])

    def d(self, i):
        return self.complex.d(i)

    def wedge(self, i, j, x, y):
        """Wedge product of vectors of degrees i and j (lists of Poly)."""
        out = [self.ring.zero] * self.ranks[i + j]
        for si, s in enumerate(self.subsets[i]):
            cs = x[si]
            if cs.is_zero():
                continue
            for ti, t in enumerate(self.subsets[j]):
                ct = y[ti]
                if ct.is_zero():
                    continue
                merged, sign = _merge_sign(s, t)
                if merged is None:
                    continue
                term = cs * ct
                if sign < 0:
                    term = -term
                k = self.index[i + j][merged]
                out[k] = out[k] + term
        return out

    def bracket(self, vec4):
        """Coefficient of the top form e_1234 (the orientation is 1)."""
        return vec4[0]

    def divided_square(self, vec2):
        """Divided square of a degree-2 element: the pure cross-term sum."""
        out = [self.ring.zero] * self.ranks[4]
        pairs = self.subsets[2]
        for si in range(len(pairs)):
            if vec2[si].is_zero():
                continue
            for ti in range(si + 1, len(pairs)):
                if vec2[ti].is_zero():
                    continue
                merged, sign = _merge_sign(pairs[si], pairs[ti])
                if merged is None:
                    continue
                term = vec2[si] * vec2[ti]
                if sign < 0:
                    term = -term
                k = self.index[4][merged]
                out[k] = out[k] + term
        return out

    def contraction(self, i):
        """Gram matrix G[s][t] = [e_s wedge e_t] pairing degrees i and 4-i."""
        rows = []
        for s in self.subsets[i]:
            row = []
            for t in self.subsets[4 - i]:
                merged, sign = _merge_sign(s, t)
                if merged is None:
                    row.append(self.ring.zero)
                else:
                    row.append(self.ring.constant(sign))
            rows.append(row)
        return PolyMatrix(self.ring, rows)

    def wedge_with(self, i, vec):
        """Matrix of (wedge by the degree-1 element `vec`): degree i -> i+1."""
        cols = []
        for s in range(self.ranks[i]):
            unit = [self.ring.zero] * self.ranks[i]
            unit[s] = self.ring.one
            cols.append(self.wedge(i, 1, unit, vec))
        return PolyMatrix.from_columns(self.ring, cols, self.ranks[i + 1])


class DgaBundle:
    """A rank-(1, m1, m2, m3, 1) DG algebra with divided squares and duality."""

    def __init__(
        self,
        complex_,
        mult,
        sq2,
        orientation,
        split=None,
        sq2_autofilled=False,
        label="",
    ):
        self.complex = complex_
        self.ring = complex_.ring
        if complex_.length != 4:
            raise ShapeMismatch("the algebra must live in degrees 0..4")
        if complex_.rank(0) != 1 or complex_.rank(4) != 1:
            raise ShapeMismatch("degrees 0 and 4 must have rank 1")
        self.mult = dict(mult)  # (i, j) with i <= j -> tensor matrix
        self.sq2 = sq2  # rank(4) x rank(2)
        self.orientation = orientation
        self.split = split  # (list of 4 degree-1 indices, the complement)
        self.sq2_autofilled = sq2_autofilled
        self.label = label
        for (i, j), tensor in self.mult.items():
            if i > j:
                raise ShapeMismatch("multiplication tensors are stored with i <= j")
            if tensor.rows != self.rank(i + j) or tensor.cols != self.rank(
                i
            ) * self.rank(j):
                raise ShapeMismatch(f"mult tensor ({i},{j}) has the wrong shape")
        if sq2.rows != self.rank(4) or sq2.cols != self.rank(2):
            raise ShapeMismatch("divided-square table has the wrong shape")
        if split is not None:
            m11, m12 = split
            if sorted(list(m11) + list(m12)) != list(range(self.rank(1))):
                raise ShapeMismatch("degree-1 split is not a partition")
            if len(m11) != 4:
                raise ShapeMismatch("the distinguished degree-1 block must have rank 4")

    # -- structure ----------------------------------------------------

    def rank(self, i):
        return self.complex.rank(i)

    def d(self, i):
        return self.complex.d(i)

    def basis_product(self, i, j, s, t):
        """The product of basis elements b_i_s and b_j_t, as a vector."""
        if i == 0:
            unit = [self.ring.zero] * self.rank(j)
            unit[t] = self.ring.one
            return unit
        if j == 0:
            unit = [self.ring.zero] * self.rank(i)
            unit[s] = self.ring.one
            return unit
        if i + j > 4:
            return []
        if i <= j:
            tensor = self.mult[(i, j)]
            return tensor.column(s * self.rank(j) + t)
        flipped = self.basis_product(j, i, t, s)
        if (i * j) % 2:
            return [-p for p in flipped]
        return flipped

    def multiply(self, i, j, x, y):
        """Product of vectors x in degree i and y in degree j."""
        if i == 0:
            return [x[0] * p for p in y]
        if j == 0:
            return [y[0] * p for p in x]
        out = [self.ring.zero] * self.rank(i + j)
        for s in range(self.rank(i)):
            if x[s].is_zero():
                continue
            for t in range(self.rank(j)):
                if y[t].is_zero():
                    continue
                col = self.basis_product(i, j, s, t)
                c = x[s] * y[t]
                for k, p in enumerate(col):
                    if not p.is_zero():
                        out[k] = out[k] + c * p
        return out

    def mult_map(self, i, j, x):
        """Matrix of (multiply by the degree-i vector x): degree j -> i+j."""
        cols = []
        for t in range(self.rank(j)):
            unit = [self.ring.zero] * self.rank(j)
            unit[t] = self.ring.one
            cols.append(self.multiply(i, j, x, unit))
        return PolyMatrix.from_columns(self.ring, cols, self.rank(i + j))

    def bracket(self, vec4):
        """The coefficient functional on the top degree, times the orientation."""
        return self.orientation * vec4[0]

    def pair(self, i, x, y):
        """[x . y] for x in degree i, y in degree 4-i."""
        return self.bracket(self.multiply(i, 4 - i, x, y))

    def pairing_gram(self, i):
        """Gram matrix G[s][t] = [b_i_s . b_{4-i}_t]; must be unimodular."""
        rows = []
        for s in range(self.rank(i)):
            row = []
            for t in range(self.rank(4 - i)):
                xs = [self.ring.zero] * self.rank(i)
                xs[s] = self.ring.one
                yt = [self.ring.zero] * self.rank(4 - i)
                yt[t] = self.ring.one
                row.append(self.pair(i, xs, yt))
            rows.append(row)
        g = PolyMatrix(self.ring, rows) if rows else PolyMatrix.zero(
            self.ring, self.rank(i), self.rank(4 - i)
        )
        try:
            unimodular_det(g)
        except Exception as exc:
            raise NotPerfectPairing(
                f"degree-{i} duality pairing is not perfect: {exc}"
            ) from exc
        return g

    def divided_square(self, vec2):
        """x^(2) for a degree-2 vector, via the table plus cross terms."""
        field = self.ring.field
        out = [self.ring.zero] * self.rank(4)
        for s in range(self.rank(2)):
            cs = vec2[s]
            if cs.is_zero():
                continue
            sq = self.sq2.column(s)
            c2 = cs * cs
            for k, p in enumerate(sq):
                if not p.is_zero():
                    out[k] = out[k] + c2 * p
            for t in range(s + 1, self.rank(2)):
                ct = vec2[t]
                if ct.is_zero():
                    continue
                col = self.basis_product(2, 2, s, t)
                c = cs * ct
                for k, p in enumerate(col):
                    if not p.is_zero():
                        out[k] = out[k] + c * p
        del field
        return out


def autofill_sq2(complex_, mult):
    """Divided-square table (b.b)/2 for each degree-2 basis vector.

    Only valid away from characteristic 2; callers in characteristic 2 must
    supply the table explicitly.
    """
    ring = complex_.ring
    if ring.field.characteristic == 2:
        raise CharTwoNeedsTables(
            "divided squares cannot be derived from the product in characteristic 2"
        )
    half = ring.constant(ring.field.fraction(1, 2))
    cols = []
    r2 = complex_.rank(2)
    tensor = mult[(2, 2)]
    for s in range(r2):
        col = tensor.column(s * r2 + s)
        cols.append([half * p for p in col])
    return PolyMatrix.from_columns(ring, cols, complex_.rank(4))


def build_koszul(ring, sequence):
    """The Koszul DG algebra of a length-4 sequence, as a bundle."""
    kos = KoszulAlgebra(ring, sequence)
    mult = {}
    for i in range(1, 4):
        for j in range(i, 5 - i):
            cols = []
            for s in range(kos.ranks[i]):
                for t in range(kos.ranks[j]):
                    xs = [ring.zero] * kos.ranks[i]
                    xs[s] = ring.one
                    yt = [ring.zero] * kos.ranks[j]
                    yt[t] = ring.one
                    cols.append(kos.wedge(i, j, xs, yt))
            mult[(i, j)] = PolyMatrix.from_columns(
                ring, cols, kos.ranks[i + j]
            )
    # basis squares of wedge monomials vanish; only cross terms survive
    sq2 = PolyMatrix.zero(ring, 1, kos.ranks[2])
    return DgaBundle(
        kos.complex,
        mult,
        sq2,
        ring.one,
        split=(list(range(4)), []),
        label="koszul",
    )


class SplitM3:
    """The degree-3 decomposition dual to the degree-1 split.

    The first summand is { theta : theta annihilates the degree-1
    complement }; its basis is T1, coordinates are read off by R1, and
    proj1 = T1 @ R1.  Likewise T2, R2, proj2 for the second summand.
    """

    def __init__(self, gram, t1, t2, r1, r2, proj1, proj2):
        self.gram = gram  # pairing matrix degree 3 x degree 1
        self.T1 = t1
        self.T2 = t2
        self.R1 = r1
        self.R2 = r2
        self.proj1 = proj1
        self.proj2 = proj2


def degree_pairing(bundle, i):
    """Matrix of [b_i_s . b_{4-i}_t] over all basis pairs (no unimodular check)."""
    ring = bundle.ring
    rows = []
    for s in range(bundle.rank(i)):
        unit_s = [ring.zero] * bundle.rank(i)
        unit_s[s] = ring.one
        row = []
        for t in range(bundle.rank(4 - i)):
            unit_t = [ring.zero] * bundle.rank(4 - i)
            unit_t[t] = ring.one
            row.append(bundle.pair(i, unit_s, unit_t))
        rows.append(row)
    return PolyMatrix(ring, rows, bundle.rank(i), bundle.rank(4 - i))


def split_M3(bundle):
    """Split degree 3 along the duals of the two degree-1 blocks.

    Verifies the annihilation conditions, that the projections are
    complementary idempotents, and that both restricted pairings are
    perfect; NotPerfectPairing on any duality failure.
    """
    from .groebner import invert_unimodular

    ring = bundle.ring
    m11, m12 = bundle.split
    r1, r3 = bundle.rank(1), bundle.rank(3)
    gram = degree_pairing(bundle, 3)  # r3 x r1
    try:
        q = invert_unimodular(gram)
    except Exception as exc:
        raise NotPerfectPairing(
            f"the degree-3/degree-1 pairing is not perfect: {exc}"
        ) from exc
    qt = q.transpose()
    t1 = qt.select_columns(list(m11))
    t2 = qt.select_columns(list(m12))
    pt = gram.transpose()
    r1m = pt.select_rows(list(m11))
    r2m = pt.select_rows(list(m12))
    proj1 = t1 @ r1m
    proj2 = t2 @ r2m
    ident = PolyMatrix.identity(ring, r3)
    if proj1 + proj2 != ident or proj1 @ proj1 != proj1 or proj2 @ proj2 != proj2:
        raise NotPerfectPairing(
            "the degree-3 projections are not complementary idempotents"
        )

    def annihilates(basis_mat, indices):
        for col in range(basis_mat.cols):
            for t in indices:
                unit = [ring.zero] * r1
                unit[t] = ring.one
                if not bundle.pair(3, basis_mat.column(col), unit).is_zero():
                    return False
        return True

    if not annihilates(t1, m12):
        raise NotPerfectPairing(
            "the first degree-3 summand does not annihilate the degree-1 complement"
        )
    if not annihilates(t2, m11):
        raise NotPerfectPairing(
            "the second degree-3 summand does not annihilate the distinguished block"
        )
    for basis_mat, indices, tag in [(t1, m11, "first"), (t2, m12, "second")]:
        if basis_mat.cols == 0:
            continue
        rows = []
        for s in indices:
            unit = [ring.zero] * r1
            unit[s] = ring.one
            rows.append(
                [
                    bundle.pair(3, basis_mat.column(j), unit)
                    for j in range(basis_mat.cols)
                ]
            )
        try:
            invert_unimodular(PolyMatrix(ring, rows))
        except Exception as exc:
            raise NotPerfectPairing(
                f"the {tag} restricted degree pairing is not perfect: {exc}"
            ) from exc
    return SplitM3(gram, t1, t2, r1m, r2m, proj1, proj2)


def dagger(bundle, h):
    """The pairing-adjoint of a degree-1 to degree-2 map, landing in degree 3.

    Defined by pairing: the image of each degree-2 basis vector pairs
    against degree 1 exactly as that vector pairs against the values of h.
    """
    from .groebner import invert_unimodular

    ring = bundle.ring
    gram = degree_pairing(bundle, 3)
    try:
        qt = invert_unimodular(gram.transpose())
    except Exception as exc:
        raise NotPerfectPairing(
            f"the degree-3/degree-1 pairing is not perfect: {exc}"
        ) from exc
    cols = []
    for s in range(bundle.rank(2)):
        unit = [ring.zero] * bundle.rank(2)
        unit[s] = ring.one
        rhs = [
            bundle.pair(2, unit, h.column(t)) for t in range(bundle.rank(1))
        ]
        cols.append(qt.apply(rhs))
    return PolyMatrix.from_columns(ring, cols, bundle.rank(3))


class DgaCheck:
    """One named validation outcome."""

    def __init__(self, name, ok, detail=""):
        self.name = name
        self.ok = ok
        self.detail = detail

    def __repr__(self):
        flag = "ok" if self.ok else "FAIL"
        return f"[{flag}] {self.name}" + (f": {self.detail}" if self.detail else "")


class ValidationReport:
    """All validation outcomes; never raised, always returned."""

    def __init__(self, checks):
        self.checks = checks

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.ok]

    def __iter__(self):
        return iter(self.checks)


def _vec_eq(a, b):
    return all((x - y).is_zero() for x, y in zip(a, b))


def validate_dga(bundle, sequence=None):
    """Run every structural check on a bundle; collect results, never raise."""
    checks = []

    def run(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # structural validators must not throw
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        checks.append(DgaCheck(name, ok, detail))

    ring = bundle.ring
    r = bundle.rank

    def chk_shapes():
        ok = bundle.complex.length == 4 and r(0) == 1 and r(4) == 1
        return ok, "" if ok else f"ranks {bundle.complex.ranks}"

    run("shape", chk_shapes)
    run(
        "complex property",
        lambda: (check_complex(bundle.complex), ""),
    )

    def chk_tables():
        need = [(1, 1)]
        if r(2):
            need += [(1, 2), (2, 2)]
        if r(3):
            need.append((1, 3))
        missing = [p for p in need if p not in bundle.mult]
        return not missing, f"missing tensors {missing}" if missing else ""

    run("multiplication tables", chk_tables)

    def chk_unital():
        for j in range(5):
            for t in range(r(j)):
                unit = [ring.zero] * r(j)
                unit[t] = ring.one
                if not _vec_eq(bundle.multiply(0, j, [ring.one], unit), unit):
                    return False, f"1 . b_{j}_{t} != b_{j}_{t}"
        return True, ""

    run("unitality", chk_unital)

    def chk_anticommute():
        for s in range(r(1)):
            for t in range(r(1)):
                st = bundle.basis_product(1, 1, s, t)
                ts = bundle.basis_product(1, 1, t, s)
                if not _vec_eq(st, [-p for p in ts]):
                    return False, f"degree-1 products ({s},{t}) not antisymmetric"
        return True, ""

    run("graded commutativity", chk_anticommute)

    def chk_odd_squares():
        for s in range(r(1)):
            sq = bundle.basis_product(1, 1, s, s)
            if any(not p.is_zero() for p in sq):
                return False, f"square of degree-1 basis vector {s} is nonzero"
        return True, ""

    run("odd squares vanish", chk_odd_squares)

    def chk_assoc():
        degree_triples = [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)]
        for (i, j, k) in degree_triples:
            if i + j + k > 4:
                continue
            for s in range(r(i)):
                xs = [ring.zero] * r(i)
                xs[s] = ring.one
                for t in range(r(j)):
                    yt = [ring.zero] * r(j)
                    yt[t] = ring.one
                    for u in range(r(k)):
                        zu = [ring.zero] * r(k)
                        zu[u] = ring.one
                        left = bundle.multiply(
                            i + j, k, bundle.multiply(i, j, xs, yt), zu
                        )
                        right = bundle.multiply(
                            i, j + k, xs, bundle.multiply(j, k, yt, zu)
                        )
                        if not _vec_eq(left, right):
                            return (
                                False,
                                f"degrees {(i, j, k)} basis {(s, t, u)}",
                            )
        return True, ""

    run("associativity", chk_assoc)

    def chk_leibniz():
        for (i, j) in [(1, 1), (1, 2), (1, 3), (2, 2)]:
            if i + j > 4 or not r(i) or not r(j):
                continue
            for s in range(r(i)):
                xs = [ring.zero] * r(i)
                xs[s] = ring.one
                dx = bundle.d(i).column(s)
                for t in range(r(j)):
                    yt = [ring.zero] * r(j)
                    yt[t] = ring.one
                    dy = bundle.d(j).column(t)
                    lhs = bundle.d(i + j).apply(bundle.multiply(i, j, xs, yt))
                    rhs = bundle.multiply(i - 1, j, dx, yt)
                    second = bundle.multiply(i, j - 1, xs, dy)
                    if i % 2:
                        second = [-p for p in second]
                    rhs = [a + b for a, b in zip(rhs, second)]
                    if not _vec_eq(lhs, rhs):
                        return False, f"degrees {(i, j)} basis {(s, t)}"
        return True, ""

    run("Leibniz rule", chk_leibniz)

    def chk_sq2_boundary():
        for s in range(r(2)):
            lhs = bundle.d(4).apply(bundle.sq2.column(s))
            es = [ring.zero] * r(2)
            es[s] = ring.one
            rhs = bundle.multiply(1, 2, bundle.d(2).column(s), es)
            if not _vec_eq(lhs, rhs):
                return False, f"degree-2 basis vector {s}"
        return True, ""

    run("divided-square boundary", chk_sq2_boundary)

    def chk_orientation():
        o = bundle.orientation
        ok = (not o.is_zero()) and o.is_constant()
        return ok, "" if ok else f"orientation {o} is not a unit constant"

    run("orientation unit", chk_orientation)

    def chk_pairings():
        for i in range(5):
            try:
                bundle.pairing_gram(i)
            except NotPerfectPairing as exc:
                return False, str(exc)
        return True, ""

    run("Poincare duality pairings", chk_pairings)

    if bundle.split is not None:

        def chk_split():
            m11, m12 = bundle.split
            ok = len(m11) == 4 and sorted(list(m11) + list(m12)) == list(
                range(r(1))
            )
            return ok, "" if ok else "split is not a partition with a rank-4 block"

        run("degree-1 split", chk_split)

        if sequence is not None:

            def chk_split_ideal():
                from .groebner import GroebnerBasis, MVec

                m11 = bundle.split[0]
                block = [bundle.d(1)[0, s] for s in m11]
                g1 = GroebnerBasis(
                    ring, 1, [MVec(ring, [p]) for p in block if not p.is_zero()]
                )
                g2 = GroebnerBasis(
                    ring, 1, [MVec(ring, [p]) for p in sequence if not p.is_zero()]
                )
                for p in sequence:
                    if not g1.contains(MVec(ring, [p])):
                        return False, f"{p} is not in the ideal of the rank-4 block"
                for p in block:
                    if not g2.contains(MVec(ring, [p])):
                        return False, f"{p} is not in the ideal of the sequence"
                return True, ""

            run("split block generates the sequence ideal", chk_split_ideal)

    if bundle.sq2_autofilled:
        checks.append(
            DgaCheck(
                "divided-square table",
                True,
                "derived from the product (characteristic is not 2)",
            )
        )

    return ValidationReport(checks)
