"""The multiplication solver and the rank-8 stretch instance E3.

First the solver completes a multiplication from the Koszul differentials
alone and the result passes the validator.  Then the same solver is pointed
at the rank-(1, 8, 14, 8, 1) resolution underlying E3; the naive lift does
not close there, which is recorded honestly.  E3 itself ships with a
closed-form multiplication, and the full pipeline runs on it with a
nonzero homotopy matrix X.
"""

from dgmf import (
    KoszulAlgebra,
    SolverConfig,
    build_e3,
    build_mf1,
    complete_multiplication,
    run_pipeline,
    validate_dga,
)
from dgmf.errors import SolverGaveUp
from dgmf.instances import build_e3_complex


def main():
    inst = build_e3()
    ring = inst.ring

    kos = KoszulAlgebra(ring, ring.gens())
    solved = complete_multiplication(
        kos.complex, ring.one, SolverConfig(), split=([0, 1, 2, 3], [])
    )
    print("solver on Koszul differentials:", validate_dga(solved).ok)

    try:
        complete_multiplication(
            build_e3_complex(ring),
            ring.one,
            SolverConfig(),
            split=([0, 1, 2, 3], [4, 5, 6, 7]),
        )
        print("solver on the rank-8 resolution: closed")
    except SolverGaveUp as exc:
        print("solver on the rank-8 resolution: gave up;", exc.report[0])

    state = run_pipeline(inst.bundle, inst.sequence, inst.f)
    print("E3: r =", state.r, "| X is zero:", state.X.is_zero())
    bad = [r for r in state.identity_results if not r.ok]
    print("E3 identity suite failures:", len(bad))
    mf = build_mf1(state)
    print("E3 factorization rank:", mf.rank)


if __name__ == "__main__":
    main()
