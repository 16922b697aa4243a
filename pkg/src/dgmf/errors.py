"""Exception types shared across the package."""


class DgmfError(Exception):
    """Base class for all errors raised by this package."""


class PolySyntaxError(DgmfError):
    """Raised when polynomial text does not conform to the grammar."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariable(DgmfError):
    """Raised when a polynomial mentions an undeclared variable."""

    def __init__(self, name, position):
        super().__init__(f"unknown variable {name!r} (at position {position})")
        self.name = name
        self.position = position


class DivisionInCoefficient(DgmfError):
    """Raised for a literal fraction whose denominator is not invertible."""


class NotDivisible(DgmfError):
    """Raised by exact division when the divisor does not divide the dividend.

    Carries the nonzero remainder as a witness.
    """

    def __init__(self, remainder):
        super().__init__(f"not divisible; remainder {remainder}")
        self.remainder = remainder


class ShapeMismatch(DgmfError):
    """Matrix or complex dimensions do not line up."""


class NotInImage(DgmfError):
    """A column of the right-hand side is not in the column span.

    Reports the first offending column index and the nonzero residual.
    """

    def __init__(self, column, residual):
        super().__init__(f"column {column} not in image; residual {residual}")
        self.column = column
        self.residual = residual


class NotUnimodular(DgmfError):
    """Determinant is zero or a non-constant polynomial."""

    def __init__(self, det):
        super().__init__(f"matrix is not unimodular; det = {det}")
        self.det = det


class NotPerfectPairing(DgmfError):
    """A multiplication pairing has a non-unimodular Gram matrix."""


class WrongLength(DgmfError):
    """A sequence argument does not have the required length."""


class NotAChainMap(DgmfError):
    """The given maps do not commute with the differentials."""


class LiftFailed(DgmfError):
    """Homotopy lifting hit a residual that is not in the required image."""


class SplitNotAligned(DgmfError):
    """The distinguished rank-4 summand cannot present the given generators."""


class ChainMapCheckFailed(DgmfError):
    """A constructed family of maps failed its chain-map postcondition."""


class NoDecomposition(DgmfError):
    """f cannot be written as r*b0 + (element of the input ideal)."""


class InternalCheckFailed(DgmfError):
    """A construction-time identity failed; the input bundle is invalid."""


class IdentityFailed(DgmfError):
    """A named exact identity failed during assembly."""

    def __init__(self, name, detail=""):
        msg = f"identity failed: {name}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.name = name


class RNotUnit(DgmfError):
    """The reduced variant was requested but r is not a unit."""


class ComplexCheckFailed(DgmfError):
    """Consecutive differentials fail to compose to zero."""


class SolverGaveUp(DgmfError):
    """The multiplication solver exhausted its retry budget."""

    def __init__(self, report):
        super().__init__("multiplication solver gave up; see attached report")
        self.report = report


class CharTwoNeedsTables(DgmfError):
    """In characteristic two divided squares must be supplied explicitly."""


class BundleFormatError(DgmfError):
    """A bundle file failed schema validation."""
