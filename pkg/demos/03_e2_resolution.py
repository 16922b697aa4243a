"""E2 end to end: the eventually periodic resolution over a hypersurface.

Over F_101[x, y, z, w, u] with the sequence (x, y, z, w) and f = u, the
scalar r comes out as u, which is not a unit, so only the larger rank-11
factorization and the resolution N are available; requesting the reduced
variants raises the documented precondition error.
"""

from dgmf import build_e2, build_mf1, build_mf2, build_resolution, run_pipeline
from dgmf.errors import RNotUnit


def main():
    inst = build_e2()
    state = run_pipeline(inst.bundle, inst.sequence, inst.f)
    print("r =", state.r, "(not a unit)")
    mf = build_mf1(state)
    print("factorization rank:", mf.rank)
    res = build_resolution(state, variant="N", check_len=10)
    print("resolution ranks:", [res.rank(i) for i in range(8)], "...")
    for result in res.verify(10):
        print(repr(result))
    try:
        build_mf2(state)
    except RNotUnit as exc:
        print("reduced variant refused as expected:", exc)


if __name__ == "__main__":
    main()
