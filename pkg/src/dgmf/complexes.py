"""Finite free complexes, chain maps, homotopy lifting, cones, reduction.

A `FreeComplex` stores ranks C_0..C_n and differentials d_i : C_i -> C_{i-1}.
Homotopies are found degree by degree through `solve_lift`; prescribed blocks
(whole maps or individual columns) are honored by checking their residuals and
lifting only the free columns.
"""

from .errors import (
    ComplexCheckFailed,
    LiftFailed,
    NotAChainMap,
    NotInImage,
    ShapeMismatch,
)
from .groebner import GroebnerBasis, MVec, solve_lift
from .matrix import PolyMatrix, block_matrix, hstack, vstack


class FreeComplex:
    """C_n -> ... -> C_1 -> C_0 with differentials d_i : C_i -> C_{i-1}."""

    def __init__(self, ring, ranks, diffs):
        self.ring = ring
        self.ranks = list(ranks)
        self.diffs = list(diffs)
        if len(self.diffs) != len(self.ranks) - 1:
            raise ShapeMismatch(
                f"{len(self.ranks)} ranks need {len(self.ranks)-1} differentials"
            )
        for i, d in enumerate(self.diffs, start=1):
            if d.rows != self.ranks[i - 1] or d.cols != self.ranks[i]:
                raise ShapeMismatch(
                    f"d_{i} is {d.rows}x{d.cols}, expected "
                    f"{self.ranks[i-1]}x{self.ranks[i]}"
                )

    @property
    def length(self):
        return len(self.ranks) - 1

    def rank(self, i):
        if 0 <= i < len(self.ranks):
            return self.ranks[i]
        return 0

    def d(self, i):
        """The differential C_i -> C_{i-1}; zero-shaped outside range."""
        if 1 <= i <= self.length:
            return self.diffs[i - 1]
        return PolyMatrix.zero(self.ring, self.rank(i - 1), self.rank(i))


def check_complex(c):
    """True iff d_i * d_{i+1} = 0 for every adjacent pair."""
    for i in range(1, c.length):
        if not (c.d(i) @ c.d(i + 1)).is_zero():
            return False
    return True


class ChainMap:
    """A degree-0 family of maps F_i : C_i -> D_i."""

    def __init__(self, source, target, maps):
        self.source = source
        self.target = target
        self.maps = list(maps)
        for i, m in enumerate(self.maps):
            if m.rows != target.rank(i) or m.cols != source.rank(i):
                raise ShapeMismatch(
                    f"map {i} is {m.rows}x{m.cols}, expected "
                    f"{target.rank(i)}x{source.rank(i)}"
                )

    def map(self, i):
        if 0 <= i < len(self.maps):
            return self.maps[i]
        return PolyMatrix.zero(
            self.source.ring, self.target.rank(i), self.source.rank(i)
        )


def check_chain_map(f):
    """True iff target_d o F_i = F_{i-1} o source_d in every degree."""
    top = max(len(f.maps) - 1, f.source.length)
    for i in range(1, top + 1):
        lhs = f.target.d(i) @ f.map(i)
        rhs = f.map(i - 1) @ f.source.d(i)
        if lhs != rhs:
            return False
    return True


class Homotopy:
    """Maps h_i : C_i -> D_{i+1} satisfying the identity that produced them."""

    def __init__(self, maps):
        self.maps = list(maps)

    def map(self, i):
        return self.maps[i]


def build_homotopy(c, prescribed=None):
    """Find h with c_i = h_{i-1} o b_i + d_{i+1} o h_i in every degree.

    `c` is a ChainMap B -> D.  `prescribed` maps a degree i to either a full
    matrix for h_i, or a dict {column index: column vector (list of Poly)}
    pinning individual columns.  Prescribed entries whose residual cannot
    vanish raise LiftFailed; so does any unliftable residual.
    """
    prescribed = prescribed or {}
    source, target = c.source, c.target
    ring = source.ring
    hs = []
    prev = None  # h_{i-1}
    for i in range(source.length + 1):
        # residual that d_{i+1} o h_i must equal
        res = c.map(i)
        if prev is not None:
            res = res - prev @ source.d(i)
        d_next = target.d(i + 1)
        rows_h = target.rank(i + 1)
        cols_h = source.rank(i)
        spec = prescribed.get(i)
        if isinstance(spec, PolyMatrix):
            h_i = spec
            if (d_next @ h_i) != res:
                raise LiftFailed(
                    f"degree {i}: prescribed map does not solve the residual"
                )
        elif rows_h == 0:
            h_i = PolyMatrix.zero(ring, 0, cols_h)
            if not res.is_zero():
                raise LiftFailed(f"degree {i}: nonzero residual with rank-0 target")
        else:
            pinned = dict(spec) if spec else {}
            free = [j for j in range(cols_h) if j not in pinned]
            cols = [None] * cols_h
            for j, col in pinned.items():
                got = d_next.apply(col)
                want = res.column(j)
                if got != want:
                    raise LiftFailed(
                        f"degree {i}: pinned column {j} does not solve the residual"
                    )
                cols[j] = list(col)
            if free:
                try:
                    z = solve_lift(d_next, res.select_columns(free))
                except NotInImage as exc:
                    raise LiftFailed(
                        f"degree {i}: residual column {free[exc.column]} "
                        f"not in the image of the next differential"
                    ) from exc
                for idx, j in enumerate(free):
                    cols[j] = z.column(idx)
            h_i = PolyMatrix.from_columns(ring, cols, rows_h)
        hs.append(h_i)
        prev = h_i
    # exact postcondition, re-verified
    for i in range(source.length + 1):
        lhs = target.d(i + 1) @ hs[i]
        if i >= 1:
            lhs = lhs + hs[i - 1] @ source.d(i)
        if lhs != c.map(i):
            raise LiftFailed(f"degree {i}: homotopy identity failed after assembly")
    return Homotopy(hs)


def mapping_cone(f):
    """Cone of a chain map C -> D: L_i = C_{i-1} + D_i.

    Differential blocks [[c_d, 0], [F, -d_d]], matching the convention in
    which the length-5 cone of a length-4 map has l_4 = [m_3, 0; F_3, -k_4].
    """
    if not check_chain_map(f):
        raise NotAChainMap("mapping_cone requires a chain map")
    src, tgt = f.source, f.target
    ring = src.ring
    length = max(src.length + 1, tgt.length)
    ranks = [src.rank(i - 1) + tgt.rank(i) for i in range(length + 1)]
    diffs = []
    for i in range(1, length + 1):
        top = hstack(
            [
                src.d(i - 1),
                PolyMatrix.zero(ring, src.rank(i - 2), tgt.rank(i)),
            ]
        )
        bottom = hstack([f.map(i - 1), -tgt.d(i)])
        diffs.append(vstack([top, bottom]))
    cone = FreeComplex(ring, ranks, diffs)
    if not check_complex(cone):  # pragma: no cover - construction guarantee
        raise ComplexCheckFailed("mapping cone failed the complex property")
    return cone


class ModFReducer:
    """Entrywise normal form modulo the principal ideal (f)."""

    def __init__(self, f):
        if f.is_zero():
            raise ValueError("reduction modulo the zero element")
        self.ring = f.ring
        self.f = f
        self._basis = GroebnerBasis(self.ring, 1, [MVec(self.ring, [f])])

    def poly(self, p):
        return self._basis.normal_form(MVec(self.ring, [p])).polys[0]

    def matrix(self, m):
        return m.map_entries(self.poly)


def reduce_mod_f(a, f):
    """Every entry of the matrix replaced by its normal form modulo (f)."""
    return ModFReducer(f).matrix(a)
