"""E1 end to end: the reduced rank-6 matrix factorization of 1 + x.

Runs the pipeline on the Koszul bundle over F_101[x, y, z, w] with the
sequence (x, y, z, w) and f = 1 + x, then assembles the reduced
factorization and prints both products, which equal (1 + x) times the
identity exactly.
"""

from dgmf import build_e1, build_mf2, run_pipeline, verify_mf


def main():
    inst = build_e1()
    state = run_pipeline(inst.bundle, inst.sequence, inst.f)
    print("r =", state.r)
    print("sigma =", [str(p) for p in state.sigma])
    print("X is zero:", state.X.is_zero())
    mf = build_mf2(state)
    print("factorization rank:", mf.rank)
    product = mf.even @ mf.odd
    print("even @ odd diagonal:", [str(product[i, i]) for i in range(mf.rank)])
    for result in verify_mf(mf):
        print(repr(result))


if __name__ == "__main__":
    main()
