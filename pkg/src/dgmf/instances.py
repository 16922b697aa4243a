"""Shipped example instances: ring, sequence, hypersurface element, bundle.

E1 and E2 are Koszul bundles over four and five variables.  E3 is a
rank-(1, 8, 14, 8, 1) self-dual algebra resolving the residue field of
F_101[x, y, z, w]: the exterior algebra on u_1..u_4 extended by four
contractible strands in degrees 2 -> 1 and four in degrees 3 -> 2, with a
degree-1 basis change so that four generators map onto the squares of the
variables.  Its multiplication is given in closed form and validated on
construction.
"""

from itertools import combinations

from .complexes import FreeComplex, check_complex
from .dga import DgaBundle, KoszulAlgebra, build_koszul, validate_dga
from .errors import InternalCheckFailed
from .field import field_from_characteristic
from .matrix import PolyMatrix
from .poly import PolyRing


class Instance:
    """A named example: bundle plus the sequence and hypersurface element."""

    def __init__(self, name, ring, sequence, f, bundle):
        self.name = name
        self.ring = ring
        self.sequence = sequence
        self.f = f
        self.bundle = bundle


def build_e1():
    ring = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
    seq = [ring.variable(v) for v in "xyzw"]
    f = ring.one + ring.variable("x")
    return Instance("E1", ring, seq, f, build_koszul(ring, seq))


def build_e2():
    ring = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w", "u"])
    seq = [ring.variable(v) for v in "xyzw"]
    f = ring.variable("u")
    return Instance("E2", ring, seq, f, build_koszul(ring, seq))


def _unit(ring, n, i):
    col = [ring.zero] * n
    col[i] = ring.one
    return col


def build_e3_complex(ring):
    """The rank-(1, 8, 14, 8, 1) resolution of the residue field.

    Degree-1 basis: s_0..s_3 (mapping to the squared variables) then
    u_0..u_3 (mapping to the variables).  Degree 2: sigma_0..3 with
    d(sigma_i) = s_i - x_i u_i, then the six wedges u_a u_b, then the
    cycles rho_0..3.  Degree 3: t_0..3 with d(t_i) = rho_i, then the four
    triple wedges.  Degree 4: the top wedge.
    """
    xs = ring.gens()[:4]
    Z = ring.zero
    pairs = list(combinations(range(4), 2))
    triples = list(combinations(range(4), 3))

    def mat(rows, cols, entries):
        m = [[Z] * cols for _ in range(rows)]
        for (i, j), v in entries.items():
            m[i][j] = m[i][j] + v
        return PolyMatrix(ring, m, rows=rows, cols=cols)

    m1 = mat(
        1,
        8,
        {(0, i): xs[i] * xs[i] for i in range(4)}
        | {(0, 4 + i): xs[i] for i in range(4)},
    )
    ent = {}
    for i in range(4):
        ent[(i, i)] = ring.one
        ent[(4 + i, i)] = -xs[i]
    for j, (a, b) in enumerate(pairs):
        ent[(4 + b, 4 + j)] = xs[a]
        ent[(4 + a, 4 + j)] = -xs[b]
    m2 = mat(8, 14, ent)
    ent = {}
    for i in range(4):
        ent[(10 + i, i)] = ring.one
    for j, S in enumerate(triples):
        for k, a in enumerate(S):
            rest = tuple(x for x in S if x != a)
            ent[(4 + pairs.index(rest), 4 + j)] = xs[a] if k % 2 == 0 else -xs[a]
    m3 = mat(14, 8, ent)
    ent = {}
    for k, a in enumerate(range(4)):
        rest = tuple(x for x in range(4) if x != a)
        ent[(4 + triples.index(rest), 0)] = xs[a] if k % 2 == 0 else -xs[a]
    m4 = mat(8, 1, ent)
    return FreeComplex(ring, [1, 8, 14, 8, 1], [m1, m2, m3, m4])


def build_e3():
    ring = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
    xs = ring.gens()
    seq = [p * p for p in xs]
    f = xs[0] * xs[1] * xs[2] * xs[3]
    cx = build_e3_complex(ring)
    if not check_complex(cx):
        raise InternalCheckFailed("the shipped degree-8 complex is broken")
    kos = KoszulAlgebra(ring, xs)
    pairs = kos.subsets[2]
    triples = kos.subsets[3]
    Z = ring.zero

    def kvec(level, offset, total, vec):
        """Embed a wedge-block vector at the given basis offset."""
        out = [Z] * total
        for k, p in enumerate(vec):
            out[offset + k] = p
        return out

    def kunit(level, subset):
        v = [Z] * kos.ranks[level]
        v[kos.index[level][subset]] = ring.one
        return v

    m4top = cx.d(4).column(0)

    def mult11(a, b):
        """Column of the product of degree-1 basis vectors a and b."""
        if a == b:
            return [Z] * 14
        if a >= 4 and b >= 4:
            return kvec(2, 4, 14, kos.wedge(1, 1, kunit(1, (a - 4,)), kunit(1, (b - 4,))))
        if a < 4 and b >= 4:
            i, j = a, b - 4
            col = [Z] * 14
            col[i] = col[i] - xs[j]
            if i != j:
                w = kos.wedge(1, 1, kunit(1, (i,)), kunit(1, (j,)))
                for k, p in enumerate(w):
                    col[4 + k] = col[4 + k] + xs[i] * p
            return col
        if a >= 4 and b < 4:
            return [-p for p in mult11(b, a)]
        i, j = a, b
        col = [Z] * 14
        col[j] = col[j] + xs[i] * xs[i]
        col[i] = col[i] - xs[j] * xs[j]
        w = kos.wedge(1, 1, kunit(1, (i,)), kunit(1, (j,)))
        for k, p in enumerate(w):
            col[4 + k] = col[4 + k] + xs[i] * xs[j] * p
        return col

    def mult12(a, m):
        """Column of the product of degree-1 basis a with degree-2 basis m."""
        col = [Z] * 8
        if a >= 4:
            j = a - 4
            if 4 <= m < 10:
                w = kos.wedge(1, 2, kunit(1, (j,)), kunit(2, pairs[m - 4]))
                return kvec(3, 4, 8, w)
            if m >= 10:
                col[m - 10] = xs[j]
            return col
        i = a
        if m < 4:
            return col
        if m < 10:
            w = kos.wedge(1, 2, kunit(1, (i,)), kunit(2, pairs[m - 4]))
            return [xs[i] * p for p in kvec(3, 4, 8, w)]
        k = m - 10
        col[k] = xs[i] * xs[i]
        if k == i:
            col = [p + q for p, q in zip(col, m4top)]
        return col

    def mult13(a, n):
        """The top coefficient of the product with a degree-3 basis vector."""
        if a >= 4:
            j = a - 4
            if n >= 4:
                w = kos.wedge(1, 3, kunit(1, (j,)), kunit(3, triples[n - 4]))
                return w[0]
            return Z
        i = a
        if n < 4:
            return -ring.one if n == i else Z
        w = kos.wedge(1, 3, kunit(1, (i,)), kunit(3, triples[n - 4]))
        return xs[i] * w[0]

    def mult22(m, n):
        if m < 4 and n >= 10:
            return ring.one if n - 10 == m else Z
        if n < 4 and m >= 10:
            return ring.one if m - 10 == n else Z
        if 4 <= m < 10 and 4 <= n < 10:
            w = kos.wedge(2, 2, kunit(2, pairs[m - 4]), kunit(2, pairs[n - 4]))
            return w[0]
        return Z

    mult = {
        (1, 1): PolyMatrix.from_columns(
            ring, [mult11(a, b) for a in range(8) for b in range(8)], 14
        ),
        (1, 2): PolyMatrix.from_columns(
            ring, [mult12(a, m) for a in range(8) for m in range(14)], 8
        ),
        (1, 3): PolyMatrix.from_columns(
            ring, [[mult13(a, n)] for a in range(8) for n in range(8)], 1
        ),
        (2, 2): PolyMatrix.from_columns(
            ring, [[mult22(m, n)] for m in range(14) for n in range(14)], 1
        ),
    }
    sq2 = PolyMatrix.zero(ring, 1, 14)
    bundle = DgaBundle(
        cx,
        mult,
        sq2,
        ring.one,
        split=([0, 1, 2, 3], [4, 5, 6, 7]),
        label="E3",
    )
    report = validate_dga(bundle, sequence=seq)
    if not report.ok:
        raise InternalCheckFailed(
            "the shipped degree-8 algebra fails validation: "
            + "; ".join(repr(c) for c in report.failures)
        )
    return Instance("E3", ring, seq, f, bundle)


BUILDERS = {"E1": build_e1, "E2": build_e2, "E3": build_e3}
