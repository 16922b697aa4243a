"""Exact matrix factorizations and periodic free resolutions.

Given a length-4 regular sequence K in a polynomial ring, a hypersurface
element f, and a self-dual DG-algebra resolution bundle, this package
constructs the comparison maps, the homotopy matrix X and its corrected
dual, two matrix factorizations of f, and eventually periodic free
resolutions over the hypersurface ring — every identity checked by exact
symbolic arithmetic.
"""

from .complexes import (
    ChainMap,
    FreeComplex,
    Homotopy,
    build_homotopy,
    check_chain_map,
    check_complex,
    mapping_cone,
    reduce_mod_f,
)
from .dga import (
    DgaBundle,
    KoszulAlgebra,
    autofill_sq2,
    build_koszul,
    dagger,
    split_M3,
    validate_dga,
)
from .errors import DgmfError
from .factorization import (
    MatrixFactorization,
    PeriodicResolution,
    build_cone_and_rho,
    build_mf1,
    build_mf2,
    build_resolution,
    verify_mf,
)
from .field import PrimeField, RationalField, field_from_characteristic
from .groebner import (
    GroebnerBasis,
    check_regular_sequence,
    ideal_dimension,
    invert_unimodular,
    solve_lift,
    syzygy_module,
)
from .instances import BUILDERS, Instance, build_e1, build_e2, build_e3
from .linkage import (
    IdentityResult,
    run_pipeline,
    verify_identity_suite,
    verify_section10,
)
from .matrix import PolyMatrix, block_matrix, hstack, vstack
from .poly import Poly, PolyRing, divide_exact
from .solver import SolverConfig, complete_multiplication

__all__ = [
    "BUILDERS",
    "ChainMap",
    "DgaBundle",
    "DgmfError",
    "FreeComplex",
    "GroebnerBasis",
    "Homotopy",
    "IdentityResult",
    "Instance",
    "KoszulAlgebra",
    "MatrixFactorization",
    "PeriodicResolution",
    "Poly",
    "PolyMatrix",
    "PolyRing",
    "PrimeField",
    "RationalField",
    "SolverConfig",
    "autofill_sq2",
    "block_matrix",
    "build_cone_and_rho",
    "build_e1",
    "build_e2",
    "build_e3",
    "build_homotopy",
    "build_koszul",
    "build_mf1",
    "build_mf2",
    "build_resolution",
    "check_chain_map",
    "check_complex",
    "check_regular_sequence",
    "complete_multiplication",
    "dagger",
    "divide_exact",
    "field_from_characteristic",
    "hstack",
    "ideal_dimension",
    "invert_unimodular",
    "mapping_cone",
    "reduce_mod_f",
    "run_pipeline",
    "solve_lift",
    "split_M3",
    "syzygy_module",
    "validate_dga",
    "verify_identity_suite",
    "verify_mf",
    "verify_section10",
    "vstack",
]
