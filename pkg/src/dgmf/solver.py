"""Best-effort completion of a multiplication on a self-dual resolution.

Given only the differentials of a length-4 free resolution with rank-1 ends,
attempt to construct multiplication tensors satisfying the Leibniz rule by
lifting degree by degree, derive the divided-square table away from
characteristic 2, and validate the result.  On validation failure the
degree-1 products are perturbed by seeded random boundaries and the higher
products re-derived, up to a retry budget.  A bundle is returned only if it
passes every validation check.
"""

import random

from .dga import DgaBundle, validate_dga
from .errors import CharTwoNeedsTables, LiftFailed, NotInImage, SolverGaveUp
from .groebner import solve_lift
from .matrix import PolyMatrix


class SolverConfig:
    """Retry budget, symmetrization toggle, and the seed for perturbations."""

    def __init__(self, budget=4, symmetrize=True, seed=0):
        if budget < 0:
            raise ValueError("the retry budget must be nonnegative")
        self.budget = budget
        self.symmetrize = symmetrize
        self.seed = seed


def _lift_columns(target_diff, rhs_cols, ring, stage):
    try:
        lifted = solve_lift(
            target_diff, PolyMatrix.from_columns(ring, rhs_cols, target_diff.rows)
        )
    except NotInImage as exc:
        raise LiftFailed(
            f"{stage}: product boundary not in the image of the differential "
            f"(column {exc.column})"
        ) from exc
    return lifted


def _derive_mult(complex_, mu11_cols, ring):
    """Tensors for (1,2), (1,3), (2,2) from the degree-1 products."""
    r1, r2, r3 = complex_.rank(1), complex_.rank(2), complex_.rank(3)
    m1, m2, m3, m4 = (complex_.d(i) for i in range(1, 5))

    def mu11(s, t):
        if s == t:
            return [ring.zero] * r2
        if s < t:
            return mu11_cols[(s, t)]
        return [-p for p in mu11_cols[(t, s)]]

    rhs = []
    for s in range(r1):
        for t in range(r2):
            col = [ring.zero] * r2
            col[t] = col[t] + m1[0, s]
            for p in range(r1):
                c = m2[p, t]
                if c.is_zero():
                    continue
                prod = mu11(s, p)
                col = [a - c * b for a, b in zip(col, prod)]
            rhs.append(col)
    mu12 = _lift_columns(m3, rhs, ring, "degree (1,2) products")

    def mu12_col(s, t):
        return mu12.column(s * r2 + t)

    rhs = []
    for s in range(r1):
        for t in range(r3):
            col = [ring.zero] * r3
            col[t] = col[t] + m1[0, s]
            for p in range(r2):
                c = m3[p, t]
                if c.is_zero():
                    continue
                prod = mu12_col(s, p)
                col = [a - c * b for a, b in zip(col, prod)]
            rhs.append(col)
    mu13 = _lift_columns(m4, rhs, ring, "degree (1,3) products")

    rhs = []
    for s in range(r2):
        for t in range(r2):
            col = [ring.zero] * r3
            for p in range(r1):
                c = m2[p, s]
                if not c.is_zero():
                    prod = mu12_col(p, t)
                    col = [a + c * b for a, b in zip(col, prod)]
                c = m2[p, t]
                if not c.is_zero():
                    prod = mu12_col(p, s)
                    col = [a + c * b for a, b in zip(col, prod)]
            rhs.append(col)
    mu22 = _lift_columns(m4, rhs, ring, "degree (2,2) products")

    mu11_tensor = PolyMatrix.from_columns(
        ring, [mu11(s, t) for s in range(r1) for t in range(r1)], r2
    )
    return {(1, 1): mu11_tensor, (1, 2): mu12, (1, 3): mu13, (2, 2): mu22}


def complete_multiplication(complex_, orientation, cfg=None, split=None, label="solved"):
    """A validated bundle on the given resolution, or a loud failure.

    The construction is best-effort; every returned bundle has passed the
    full validator.  SolverGaveUp carries the last validation report.
    """
    cfg = cfg or SolverConfig()
    ring = complex_.ring
    field = ring.field
    if field.characteristic == 2:
        raise CharTwoNeedsTables(
            "multiplication completion needs explicit divided-square tables "
            "in characteristic 2"
        )
    r1 = complex_.rank(1)
    m1, m2 = complex_.d(1), complex_.d(2)

    rhs = []
    pairs = [(s, t) for s in range(r1) for t in range(s + 1, r1)]
    for (s, t) in pairs:
        col = [ring.zero] * r1
        col[t] = col[t] + m1[0, s]
        col[s] = col[s] - m1[0, t]
        rhs.append(col)
    base = _lift_columns(m2, rhs, ring, "degree (1,1) products")
    base_cols = {pq: base.column(j) for j, pq in enumerate(pairs)}

    m3 = complex_.d(3)
    r3 = complex_.rank(3)
    half = ring.constant(field.fraction(1, 2))
    last_report = None
    for attempt in range(cfg.budget + 1):
        mu11_cols = dict(base_cols)
        if attempt > 0:
            rng = random.Random(cfg.seed * 1000003 + attempt)
            for pq in pairs:
                pert = [
                    ring.constant(rng.randrange(3) - 1) for _ in range(r3)
                ]
                boundary = m3.apply(pert)
                mu11_cols[pq] = [
                    a + b for a, b in zip(mu11_cols[pq], boundary)
                ]
        try:
            mult = _derive_mult(complex_, mu11_cols, ring)
        except LiftFailed as exc:
            last_report = [str(exc)]
            continue
        r2 = complex_.rank(2)
        sq2_cols = [
            [half * p for p in mult[(2, 2)].column(s * r2 + s)]
            for s in range(r2)
        ]
        sq2 = PolyMatrix.from_columns(ring, sq2_cols, complex_.rank(4))
        try:
            bundle = DgaBundle(
                complex_,
                mult,
                sq2,
                orientation,
                split=split,
                sq2_autofilled=True,
                label=label,
            )
        except Exception as exc:
            last_report = [f"{type(exc).__name__}: {exc}"]
            continue
        report = validate_dga(bundle)
        if report.ok:
            return bundle
        last_report = [repr(c) for c in report.failures]
    raise SolverGaveUp(last_report or ["no attempt produced a candidate"])
