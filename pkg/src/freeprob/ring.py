"""Exact sparse multivariate polynomials over the rationals.

Everything symbolic in this package (cumulant identities, truncated series
coefficients, moment polynomials) lives in Q[x1, ..., xn] with named
indeterminates.  Coefficients are ``fractions.Fraction``; monomials are sorted
tuples of ``(name, exponent)`` pairs, so equality is structural and exact.

The class is deliberately small: add / sub / mul / pow, substitution, and a
few predicates.  No division, no normal forms.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


Monomial = tuple[tuple[str, int], ...]

_ONE: Monomial = ()


def _as_coeff(value):
    if isinstance(value, Poly):
        raise TypeError("coefficient must be scalar, not Poly")
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, exp in b:
        d[name] = d.get(name, 0) + exp
    return tuple(sorted(d.items()))


class Poly:
    """Sparse polynomial: mapping monomial -> nonzero Fraction coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    self.terms[mono] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, value) -> "Poly":
        c = _as_coeff(value)
        return cls({_ONE: c}) if c else cls()

    @classmethod
    def var(cls, name: str, exponent: int = 1) -> "Poly":
        if exponent < 0:
            raise ValueError("negative exponent")
        if exponent == 0:
            return cls.const(1)
        return cls({((name, exponent),): Fraction(1)})

    @staticmethod
    def coerce(value) -> "Poly":
        return value if isinstance(value, Poly) else Poly.const(value)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == _ONE for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ONE, Fraction(0))

    def variables(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = Poly.coerce(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = out.get(mono, Fraction(0)) + coeff
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        result = Poly()
        result.terms = out
        return result

    __radd__ = __add__

    def __neg__(self):
        result = Poly()
        result.terms = {m: -c for m, c in self.terms.items()}
        return result

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) + (-self)

    def __mul__(self, other):
        other = Poly.coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                c = out.get(mono, Fraction(0)) + c1 * c2
                if c:
                    out[mono] = c
                else:
                    out.pop(mono, None)
        result = Poly()
        result.terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, Rational):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- evaluation --------------------------------------------------------

    def subs(self, assignment: dict):
        """Substitute values (scalars or Poly) for variables.

        Variables absent from ``assignment`` stay symbolic; if every variable
        gets a scalar the result collapses to a plain scalar (Fraction, or
        float when any substituted value is a float).
        """
        fully_numeric = self.variables() <= {
            k for k, v in assignment.items() if not isinstance(v, Poly)
        }
        if fully_numeric:
            out = Fraction(0)
            for mono, coeff in self.terms.items():
                term = coeff
                for name, exp in mono:
                    term = term * assignment[name] ** exp
                out = out + term
            return out
        out_poly = Poly()
        for mono, coeff in self.terms.items():
            term = Poly.const(coeff)
            for name, exp in mono:
                if name in assignment:
                    term = term * Poly.coerce(assignment[name]) ** exp
                else:
                    term = term * Poly.var(name, exp)
            out_poly = out_poly + term
        return out_poly

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def degree(self, name: str | None = None) -> int:
        if not self.terms:
            return 0
        if name is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    # -- display -----------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (sum(e for _, e in m), m)):
            coeff = self.terms[mono]
            factors = [f"{n}^{e}" if e > 1 else n for n, e in mono]
            body = "*".join(factors)
            if body:
                parts.append(f"{coeff}*{body}" if coeff != 1 else body)
            else:
                parts.append(str(coeff))
        return " + ".join(parts)


class RationalExpr:
    """Quotient of a Poly by ``(den_base)**den_power``.

    The symbolic negative-moment pipeline produces values of exactly this
    shape.  Equality is decided by cross multiplication; evaluation
    substitutes into numerator and denominator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    def evaluate(self, assignment: dict):
        num = self.num.subs(assignment)
        den = self.den.subs(assignment)
        if isinstance(num, Poly) or isinstance(den, Poly):
            raise ValueError("assignment leaves free variables")
        return num / den

    def __eq__(self, other):
        if not isinstance(other, RationalExpr):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalExpr is unhashable")

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"
