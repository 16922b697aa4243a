"""Coefficient fields: a prime field GF(p) or the rationals.

Elements are plain Python values (ints in [0, p) for GF(p),
`fractions.Fraction` for the rationals); the field object supplies the
arithmetic.  Characteristic 2 is allowed, but DG bundles over such a field
must supply explicit divided-square tables.
"""

from fractions import Fraction

from .errors import DivisionInCoefficient


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """GF(p) for a machine-word prime p."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def coerce(self, n):
        return int(n) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionInCoefficient(f"0 is not invertible in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fraction(self, num, den):
        if den % self.p == 0:
            raise DivisionInCoefficient(
                f"denominator {den} is not invertible in GF({self.p})"
            )
        return self.div(self.coerce(num), self.coerce(den))

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class RationalField:
    """The field of rational numbers."""

    def __init__(self):
        self.characteristic = 0
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def coerce(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionInCoefficient("0 is not invertible")
        return 1 / Fraction(a)

    def div(self, a, b):
        return a * self.inv(b)

    def fraction(self, num, den):
        if den == 0:
            raise DivisionInCoefficient("denominator 0")
        return Fraction(num, den)

    def format(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


def field_from_characteristic(p):
    """0 gives the rationals, a prime p gives GF(p)."""
    return RationalField() if p == 0 else PrimeField(p)
