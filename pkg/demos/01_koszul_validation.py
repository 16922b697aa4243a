"""Build the exterior-algebra bundle on (x, y, z, w) and validate it.

Shows the validator's structured report: every axiom (complex property,
unitality, graded commutativity, odd squares, associativity, the Leibniz
rule, divided-square boundaries, orientation, Poincare duality pairings,
and the degree-1 split) is checked exactly and reported by name.
"""

from dgmf import build_koszul, field_from_characteristic, validate_dga
from dgmf.poly import PolyRing


def main():
    ring = PolyRing(field_from_characteristic(101), ["x", "y", "z", "w"])
    sequence = ring.gens()
    bundle = build_koszul(ring, sequence)
    report = validate_dga(bundle, sequence=sequence)
    for check in report.checks:
        print(repr(check))
    print()
    print("all green:", report.ok)


if __name__ == "__main__":
    main()
