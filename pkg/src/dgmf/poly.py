"""Exact sparse multivariate polynomials with the graded-reverse-lex order.

A `PolyRing` fixes the coefficient field and the ordered variable names;
`Poly` values are immutable term dictionaries mapping exponent tuples to
nonzero field elements.  The monomial order is graded-reverse-lex and is
not configurable at runtime.
"""

from .errors import NotDivisible, PolySyntaxError, UnknownVariable


class PolyRing:
    """A polynomial ring over a fixed field with named variables."""

    def __init__(self, field, variables):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        self.field = field
        self.variables = variables
        self.nvars = len(variables)
        self._var_index = {v: i for i, v in enumerate(variables)}
        self.zero = Poly(self, {})
        self.one = Poly(self, {(0,) * self.nvars: field.one})

    def monomial_key(self, exp):
        """Sort key; larger key means larger monomial in grevlex."""
        return (sum(exp), tuple(-e for e in reversed(exp)))

    def term_key(self, pos_exp):
        """Position-over-term key for module terms (lower position wins)."""
        pos, exp = pos_exp
        return (-pos, self.monomial_key(exp))

    def constant(self, c):
        c = self.field.coerce(c)
        if c == self.field.zero:
            return self.zero
        return Poly(self, {(0,) * self.nvars: c})

    def variable(self, name):
        i = self._var_index[name]
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {exp: self.field.one})

    def gens(self):
        return [self.variable(v) for v in self.variables]

    def monomial(self, exp, coeff=None):
        coeff = self.field.one if coeff is None else coeff
        if coeff == self.field.zero:
            return self.zero
        return Poly(self, {tuple(exp): coeff})

    def parse(self, text):
        return _Parser(self, text).parse()

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.variables == self.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.variables)}]"


def _mul_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """An immutable polynomial; terms map exponent tuples to field elements."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        """The field element of a constant polynomial."""
        if not self.terms:
            return self.ring.field.zero
        ((exp, c),) = self.terms.items()
        if sum(exp) != 0:
            raise ValueError(f"{self} is not constant")
        return c

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self):
        """(exponent, coefficient) of the grevlex-leading term."""
        exp = max(self.terms, key=self.ring.monomial_key)
        return exp, self.terms[exp]

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda t: self.ring.monomial_key(t[0]), reverse=True
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = f.add(terms.get(exp, f.zero), c)
            if s == f.zero:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return Poly(self.ring, terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.ring.field
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mul_exp(e1, e2)
                s = f.add(terms.get(e, f.zero), f.mul(c1, c2))
                if s == f.zero:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return Poly(self.ring, terms)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        f = self.ring.field
        c = f.coerce(c) if not isinstance(c, type(f.zero)) else c
        if c == f.zero:
            return self.ring.zero
        return Poly(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        if not isinstance(other, (int, type(self.ring.field.zero))):
            return NotImplemented
        return self.ring.constant(other)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        return isinstance(other, Poly) and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.ring.variables, exp)
                if e > 0
            )
            cs = field.format(c)
            negative = cs.startswith("-")
            if negative:
                cs = cs[1:]
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def divide_exact(num, den):
    """Return q with q*den == num, or raise NotDivisible with the remainder.

    Greedy leading-term division; for a single divisor this succeeds exactly
    when den divides num in the polynomial ring.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = num.ring
    f = ring.field
    den_exp, den_c = den.leading()
    q = ring.zero
    rem = num
    while not rem.is_zero():
        exp, c = rem.leading()
        diff = tuple(a - b for a, b in zip(exp, den_exp))
        if any(d < 0 for d in diff):
            raise NotDivisible(rem)
        t = ring.monomial(diff, f.div(c, den_c))
        q = q + t
        rem = rem - t * den
    return q


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := nat ('/' nat)? | var | '(' expr ')'
    with an optional unary minus before a term; whitespace is ignored.
    """

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.pos = 0

    def parse(self):
        value = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise PolySyntaxError(
                f"unexpected character {self.text[self.pos]!r}", self.pos
            )
        return value

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self):
        sign = 1
        if self._peek() == "-":
            self.pos += 1
            sign = -1
        elif self._peek() == "+":
            self.pos += 1
        value = self._term()
        if sign < 0:
            value = -value
        while self._peek() and self._peek() in "+-":
            op = self._peek()
            self.pos += 1
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self):
        value = self._factor()
        while self._peek() == "*":
            self.pos += 1
            value = value * self._factor()
        return value

    def _factor(self):
        value = self._base()
        if self._peek() == "^":
            self.pos += 1
            value = value ** self._nat()
        return value

    def _base(self):
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                raise PolySyntaxError("expected ')'", self.pos)
            self.pos += 1
            return value
        if ch.isdigit():
            num = self._nat()
            if self._peek() == "/":
                self.pos += 1
                den = self._nat()
                return self.ring.constant(self.ring.field.fraction(num, den))
            return self.ring.constant(num)
        if ch.isalpha() or ch == "_":
            start = self.pos
            name = self._name()
            if name not in self.ring._var_index:
                raise UnknownVariable(name, start)
            return self.ring.variable(name)
        if ch == "":
            raise PolySyntaxError("unexpected end of input", self.pos)
        raise PolySyntaxError(f"unexpected character {ch!r}", self.pos)

    def _nat(self):
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise PolySyntaxError("expected a number", self.pos)
        return int(self.text[start : self.pos])

    def _name(self):
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]
