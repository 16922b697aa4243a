"""Matrix factorizations of f, the cone homotopy, and periodic resolutions.

From a completed pipeline state this module assembles:

* the large matrix factorization (valid for any r in the decomposition
  f = r*beta_0(1) + k_1(sigma)),
* the reduced matrix factorization, which needs r to be a unit,
* the mapping cone L of the scaled comparison map, together with the
  degree +1 maps rho exhibiting multiplication by f on L as null-homotopic,
  with every block identity checked and named,
* the eventually-2-periodic free resolutions over the hypersurface ring,
  obtained by reducing everything modulo f.
"""

from .complexes import ChainMap, ModFReducer, check_chain_map, mapping_cone
from .errors import (
    ChainMapCheckFailed,
    ComplexCheckFailed,
    IdentityFailed,
    RNotUnit,
)
from .linkage import IdentityResult
from .matrix import PolyMatrix, block_matrix, hstack, vstack


class MatrixFactorization:
    """A pair (even, odd) of square matrices with both products f times 1."""

    def __init__(self, ring, f, even, odd, even_blocks, odd_blocks, label):
        self.ring = ring
        self.f = f
        self.even = even
        self.odd = odd
        self.even_blocks = list(even_blocks)  # (name, size) of even summands
        self.odd_blocks = list(odd_blocks)
        self.label = label

    @property
    def rank(self):
        return self.even.rows


def _blocks(state):
    """The named ingredients every factorization display is made of."""
    bundle = state.bundle
    r = state.r
    m12 = state.m12
    return {
        "rX_w1_12": (state.X * r - state.w[1]).select_columns(m12),
        "proj12_m2": bundle.d(2).select_rows(m12),
        "rb2_Y": state.beta[2] * r - state.Y,
        "rXd_w2": state.Xdag * r + state.w[2],
        "alpha2": state.alpha[2],
        "alpha3": state.alpha[3],
        "alpha4": state.alpha[4],
        "rb3": state.beta[3] * r,
        "rb4": state.beta[4] * r,
        "m3": bundle.d(3),
        "m4": bundle.d(4),
        "k3": state.kos.d(3),
        "k4": state.kos.d(4),
        "z2": state.z[2],
        "z3": state.z[3],
        "w3": state.w[3],
    }


def build_mf1(state):
    """The large factorization; exists for every decomposition of f."""
    ring = state.ring
    b = _blocks(state)
    r1 = state.bundle.rank(1)
    zero = PolyMatrix.zero
    n12 = len(state.m12)
    r2, r3 = state.bundle.rank(2), state.bundle.rank(3)
    even = block_matrix(
        [
            [b["rX_w1_12"], b["alpha2"], b["m3"], zero(ring, r2, 1)],
            [zero(ring, 4, n12), -b["z2"], b["rb3"], -b["k4"]],
            [zero(ring, 1, n12), zero(ring, 1, 6), -b["w3"], b["alpha4"]],
        ]
    )
    odd = block_matrix(
        [
            [b["proj12_m2"], zero(ring, n12, 4), zero(ring, n12, 1)],
            [b["rb2_Y"], -b["k3"], zero(ring, 6, 1)],
            [b["rXd_w2"], b["alpha3"], b["m4"]],
            [zero(ring, 1, r2), b["z3"], b["rb4"]],
        ]
    )
    del r1
    return MatrixFactorization(
        ring,
        state.f,
        even,
        odd,
        [("M12", n12), ("K2", 6), ("M3", r3), ("K4", 1)],
        [("M2", r2), ("K3", 4), ("M4", 1)],
        "mf1",
    )


def r_unit_inverse(state):
    """1/r as a constant polynomial; RNotUnit unless r is a unit constant."""
    r = state.r
    if r.is_zero() or not r.is_constant():
        raise RNotUnit(f"r = {r} is not a unit constant")
    field = state.ring.field
    return state.ring.constant(field.inv(r.constant_value()))


def build_mf2(state):
    """The reduced factorization of size rank(M_2); needs r to be a unit."""
    ring = state.ring
    rinv = r_unit_inverse(state)
    b = _blocks(state)
    n12 = len(state.m12)
    r2 = state.bundle.rank(2)
    even = hstack(
        [
            b["rX_w1_12"],
            b["alpha2"] + state.W * rinv,
            b["m3"] @ state.T2,
        ]
    )
    odd = vstack(
        [
            b["proj12_m2"],
            b["rb2_Y"],
            state.R2 @ b["rXd_w2"],
        ]
    )
    n32 = state.bundle.rank(1) - 4
    if even.rows != r2 or even.cols != r2 or odd.rows != r2:
        raise ComplexCheckFailed("the reduced factorization is not square")
    return MatrixFactorization(
        ring,
        state.f,
        even,
        odd,
        [("M12", n12), ("K2", 6), ("M32", n32)],
        [("M2", r2)],
        "mf2",
    )


def _block_offsets(blocks):
    offs = []
    start = 0
    for name, size in blocks:
        offs.append((name, start, size))
        start += size
    return offs


def verify_mf(mf):
    """Both products compared against f times the identity, block by block."""
    ring, f = mf.ring, mf.f
    results = []
    for label, left, right, row_blocks, col_blocks in [
        ("even odd", mf.even, mf.odd, mf.odd_blocks, mf.odd_blocks),
        ("odd even", mf.odd, mf.even, mf.even_blocks, mf.even_blocks),
    ]:
        prod = left @ right
        want = PolyMatrix.scalar(ring, prod.rows, f)
        diff = prod - want
        for bi, (rname, r0, rsz) in enumerate(_block_offsets(row_blocks)):
            for bj, (cname, c0, csz) in enumerate(_block_offsets(col_blocks)):
                sub = [
                    [diff[r0 + i, c0 + j] for j in range(csz)]
                    for i in range(rsz)
                ]
                ok = all(p.is_zero() for row in sub for p in row)
                results.append(
                    IdentityResult(
                        f"{mf.label}:({label})({bi + 1},{bj + 1})",
                        ok,
                        f"{rname} x {cname}",
                    )
                )
    return results


def build_scaled_beta(state):
    """The comparison map scaled so that degree 0 carries 1 to f."""
    bundle, kos, ring = state.bundle, state.kos, state.ring
    r = state.r
    bp0 = state.beta[0] * r + bundle.d(1) @ state.w[0]
    bp1 = state.beta[1] * r + state.z[0] @ bundle.d(1)
    beta_prime = [bp0, bp1] + [state.beta[i] * r for i in range(2, 5)]
    cm = ChainMap(bundle.complex, kos.complex, beta_prime)
    if not check_chain_map(cm):
        raise ChainMapCheckFailed(
            "the scaled comparison map does not commute with the differentials"
        )
    if beta_prime[0][0, 0] != state.f:
        raise ChainMapCheckFailed(
            "the scaled comparison map does not carry 1 to f in degree 0"
        )
    return cm


def build_cone_and_rho(state):
    """The cone L of the scaled comparison map and its f-homotopy rho.

    Returns (L, rho, results); every named block identity is included in
    the results, and an IdentityFailed is raised if any of them fails.
    """
    bundle, kos, ring = state.bundle, state.kos, state.ring
    cm = build_scaled_beta(state)
    L = mapping_cone(cm)
    zero = PolyMatrix.zero
    r1, r2, r3 = bundle.rank(1), bundle.rank(2), bundle.rank(3)
    rho = [
        vstack([state.alpha[0], zero(ring, 4, 1)]),
        block_matrix(
            [
                [zero(ring, r1, 1), -state.alpha[1]],
                [zero(ring, 6, 1), -state.z[1]],
            ]
        ),
        block_matrix(
            [
                [state.X * state.r - state.w[1], state.alpha[2]],
                [zero(ring, 4, r1), -state.z[2]],
            ]
        ),
        block_matrix(
            [
                [-(state.Xdag * state.r + state.w[2]), -state.alpha[3]],
                [zero(ring, 1, r2), -state.z[3]],
            ]
        ),
        hstack([-state.w[3], state.alpha[4]]),
    ]
    f = state.f
    results = []

    def partition(i):
        """Block sizes of L_i = M_{i-1} + K_i."""
        out = []
        if bundle.complex.rank(i - 1):
            out.append((f"M{i - 1}", bundle.complex.rank(i - 1)))
        if kos.ranks[i] if 0 <= i <= 4 else 0:
            out.append((f"K{i}", kos.ranks[i]))
        return out

    def add_blockwise(name, diff, row_blocks, col_blocks):
        for bi, (rname, r0, rsz) in enumerate(_block_offsets(row_blocks)):
            for bj, (cname, c0, csz) in enumerate(_block_offsets(col_blocks)):
                ok = all(
                    diff[r0 + i, c0 + j].is_zero()
                    for i in range(rsz)
                    for j in range(csz)
                )
                results.append(
                    IdentityResult(
                        f"{name}({bi + 1},{bj + 1})", ok, f"{rname} x {cname}"
                    )
                )

    # l_1 rho_0 = f on L_0, rho_4 l_5 = f on L_5
    add_blockwise(
        "L17-oct20:(l1 rho0)",
        L.d(1) @ rho[0] - PolyMatrix.scalar(ring, 1, f),
        [("K0", 1)],
        [("K0", 1)],
    )
    add_blockwise(
        "L17-oct20:(rho4 l5)",
        rho[4] @ L.d(5) - PolyMatrix.scalar(ring, 1, f),
        [("M4", 1)],
        [("M4", 1)],
    )
    # alternating homotopy identities on L_1..L_4
    for i, sign in [(1, 1), (2, -1), (3, 1), (4, -1)]:
        expr = rho[i - 1] @ L.d(i) - L.d(i + 1) @ rho[i]
        want = PolyMatrix.scalar(ring, L.rank(i), f * sign)
        add_blockwise(
            f"L17-oct20:(rho{i - 1} l{i} - l{i + 1} rho{i})",
            expr - want,
            partition(i),
            partition(i),
        )
    # rho o rho vanishes
    for i in range(4):
        add_blockwise(
            f"L17-oct20:(rho{i + 1} rho{i})",
            rho[i + 1] @ rho[i],
            partition(i + 2),
            partition(i),
        )
    bad = [r for r in results if not r.ok]
    if bad:
        raise IdentityFailed(bad[0].name, f"{len(bad)} cone identities failed")
    del r3
    return L, rho, results


class PeriodicResolution:
    """A free resolution over P/(f): a finite head, then a repeating pair.

    `diff(i)` returns the i-th differential for any i >= 1; matrices are
    reduced modulo f entrywise.
    """

    def __init__(self, ring, f, ranks_head, head, tail_pair, label):
        self.ring = ring
        self.f = f
        self.ranks_head = list(ranks_head)
        self.head = list(head)  # differentials 1 .. len(head)
        self.tail_pair = tail_pair  # applied at len(head)+1, len(head)+2, ...
        self.label = label

    def rank(self, i):
        if i < len(self.ranks_head):
            return self.ranks_head[i]
        return self.tail_pair[0].cols

    def diff(self, i):
        if i < 1:
            raise ValueError("differentials start at index 1")
        if i <= len(self.head):
            return self.head[i - 1]
        return self.tail_pair[(i - len(self.head) - 1) % 2]

    def verify(self, check_len=10):
        """Adjacent products vanish modulo f up to the requested index."""
        red = ModFReducer(self.f)
        results = []
        for i in range(1, check_len + 1):
            prod = red.matrix(self.diff(i) @ self.diff(i + 1))
            results.append(
                IdentityResult(
                    f"{self.label}:d{i} d{i + 1} = 0 mod f", prod.is_zero()
                )
            )
        return results


def build_resolution(state, variant="N", check_len=10):
    """The periodic resolution of the linked quotient over P/(f).

    `variant` "N" uses the large factorization as the tail; "acute" uses
    the reduced one and therefore needs r to be a unit.  Every adjacent
    product up to `check_len` is verified; ComplexCheckFailed on violation.
    """
    bundle, kos, ring = state.bundle, state.kos, state.ring
    red = ModFReducer(state.f)
    b = _blocks(state)
    n12 = len(state.m12)
    zero = PolyMatrix.zero
    n1 = -kos.d(1)
    n2 = hstack(
        [
            (state.beta[1] * state.r + state.z[0] @ bundle.d(1)).select_columns(
                state.m12
            ),
            -kos.d(2),
        ]
    )
    if variant == "N":
        mf = build_mf1(state)
        n3 = block_matrix(
            [
                [b["proj12_m2"], zero(ring, n12, 4)],
                [b["rb2_Y"], -b["k3"]],
            ]
        )
        n4 = block_matrix(
            [
                [
                    b["rX_w1_12"],
                    b["alpha2"],
                    b["m3"],
                    zero(ring, bundle.rank(2), 1),
                ],
                [zero(ring, 4, n12), -b["z2"], b["rb3"], -b["k4"]],
            ]
        )
        head = [red.matrix(m) for m in (n1, n2, n3, n4)]
        tail = (red.matrix(mf.odd), red.matrix(mf.even))
        ranks_head = [1, 4, n12 + 6, bundle.rank(2) + 4, mf.even.cols]
        label = "N"
    elif variant == "acute":
        mf = build_mf2(state)
        n3 = vstack([b["proj12_m2"], b["rb2_Y"]])
        head = [red.matrix(m) for m in (n1, n2, n3)]
        tail = (red.matrix(mf.even), red.matrix(mf.odd))
        ranks_head = [1, 4, n12 + 6, bundle.rank(2)]
        label = "N-acute"
    else:
        raise ValueError(f"unknown resolution variant {variant!r}")
    res = PeriodicResolution(ring, state.f, ranks_head, head, tail, label)
    bad = [r for r in res.verify(check_len) if not r.ok]
    if bad:
        raise ComplexCheckFailed(
            f"{bad[0].name} (and {len(bad) - 1} further products) failed"
        )
    return res
