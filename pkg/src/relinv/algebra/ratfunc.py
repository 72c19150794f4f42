"""Rational functions as reduced-but-not-GCD-normalized quotients of Polys."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping

from .poly import Coeff, Poly, mono_div, mono_gcd, q, try_divide


class DegenerateSubstitution(ZeroDivisionError):
    """A substitution sent a denominator to the zero polynomial."""


_ONE = Poly.const(1)


class RatFunc:
    """Quotient num/den of polynomials.

    Normalization strips the common monomial factor, makes the denominator
    primitive with positive leading coefficient, and collapses to a
    polynomial when the denominator divides the numerator exactly.  No
    multivariate GCD is taken, so equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            self.num, self.den = num, _ONE
            return
        if not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if _reduced:
            self.num, self.den = num, den
            return
        self.num, self.den = _reduce(num, den)

    @classmethod
    def var(cls, i: int) -> "RatFunc":
        return cls(Poly.var(i))

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(Poly.const(c))

    # queries
    def is_poly(self) -> bool:
        return self.den is _ONE or self.den == _ONE

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError("rational function is not a polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.is_poly() and self.num.is_constant()

    def constant_value(self) -> Coeff:
        return self.as_poly().constant_value()

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None  # type: ignore[assignment]

    # arithmetic
    @staticmethod
    def _coerce(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return RatFunc(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.is_poly():
                return RatFunc(self.num + other.num)
            return RatFunc(self.num + other.num, self.den)
        if self.is_poly():
            return RatFunc(self.num * other.den + other.num, other.den)
        if other.is_poly():
            return RatFunc(self.num + other.num * self.den, self.den)
        k = try_divide(other.den, self.den)
        if k is not None:
            return RatFunc(self.num * k + other.num, other.den)
        k = try_divide(self.den, other.den)
        if k is not None:
            return RatFunc(self.num + other.num * k, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(other), self.den, _reduced=True) if other != 0 else RatFunc(Poly())
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_poly() and other.is_poly():
            return RatFunc(self.num * other.num)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # cheap cross cancellation
        if not d2.is_constant():
            k = try_divide(n1, d2)
            if k is not None:
                n1, d2 = k, _ONE
        if not d1.is_constant():
            k = try_divide(n2, d1)
            if k is not None:
                n2, d1 = k, _ONE
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return RatFunc(self.num.scale(Fraction(1) / other), self.den, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if not isinstance(n, int):
            raise ValueError("exponent must be an integer")
        if n >= 0:
            return RatFunc(self.num ** n, self.den ** n)
        return self.inverse() ** (-n)

    # calculus
    def diff(self, v: int) -> "RatFunc":
        dn = self.num.diff(v)
        if self.is_poly():
            return RatFunc(dn)
        dd = self.den.diff(v)
        if dd.is_zero():
            return RatFunc(dn, self.den)
        top = dn * self.den - self.num * dd
        k = try_divide(top, self.den)
        if k is not None:
            return RatFunc(k, self.den)
        return RatFunc(top, self.den * self.den)

    def evaluate(self, point: Mapping[int, Coeff]) -> Coeff:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at point")
        return q(Fraction(self.num.evaluate(point)) / d)

    def rename(self, mapping: Mapping[int, int]) -> "RatFunc":
        return RatFunc(self.num.rename(mapping), self.den.rename(mapping), _reduced=True)

    def __repr__(self) -> str:
        if self.is_poly():
            return f"RatFunc({self.num!r})"
        return f"RatFunc({self.num!r} / {self.den!r})"


def _reduce(num: Poly, den: Poly):
    if num.is_zero():
        return Poly(), _ONE
    if den.is_constant():
        c = den.constant_value()
        return (num if c == 1 else num.scale(Fraction(1) / c)), _ONE
    g = mono_gcd(num.monomial_content(), den.monomial_content())
    if g:
        num = Poly({mono_div(m, g): c for m, c in num.terms.items()}, _clean=True)
        den = Poly({mono_div(m, g): c for m, c in den.terms.items()}, _clean=True)
        if den.is_constant():
            return _reduce(num, den)
    c = den.content()
    if den.leading_term()[1] < 0:
        c = -c
    if c != 1:
        inv = Fraction(1) / c
        num, den = num.scale(inv), den.scale(inv)
    if len(den.terms) > 1 and num.degree() >= den.degree():
        k = try_divide(num, den)
        if k is not None:
            return k, _ONE
    return num, den


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(x)


def substitute(f, sigma: Mapping[int, "RatFunc"]) -> RatFunc:
    """Simultaneous substitution of variables by rational functions.

    Variables missing from ``sigma`` are left fixed.  Each monomial is brought
    over a shared denominator (grouping identical substituted denominators) so
    that no rational additions are needed.
    """
    f = as_ratfunc(f)
    sig = {v: as_ratfunc(r) for v, r in sigma.items()}
    top, top_den = _subst_poly(f.num, sig)
    bot, bot_den = _subst_poly(f.den, sig)
    if bot.is_zero():
        raise DegenerateSubstitution("denominator maps to zero")
    # f = (top / top_den) / (bot / bot_den)
    return RatFunc(top * bot_den, bot * top_den)


def _subst_poly(p: Poly, sig: Mapping[int, RatFunc]):
    """Return (N, D) with p∘sig = N/D, D a product of substituted denominators."""
    if p.is_zero():
        return Poly(), _ONE
    dens: list = []  # distinct denominators
    den_of: Dict[int, int] = {}
    for v, r in sig.items():
        if r.is_poly():
            continue
        for k, d in enumerate(dens):
            if d == r.den:
                den_of[v] = k
                break
        else:
            den_of[v] = len(dens)
            dens.append(r.den)
    # required power of each denominator
    need = [0] * len(dens)
    per_term = []
    for m, _ in p.terms.items():
        k_m = [0] * len(dens)
        for v, e in m:
            if v in den_of:
                k_m[den_of[v]] += e
        per_term.append(k_m)
        for i, k in enumerate(k_m):
            if k > need[i]:
                need[i] = k
    cache: Dict = {}

    def power(key, base: Poly, e: int) -> Poly:
        if e == 0:
            return _ONE
        ck = (key, e)
        if ck not in cache:
            cache[ck] = base ** e
        return cache[ck]

    total = Poly()
    for (m, c), k_m in zip(p.terms.items(), per_term):
        term = Poly.const(c)
        fixed = []
        for v, e in m:
            r = sig.get(v)
            if r is None:
                fixed.append((v, e))
            else:
                term = term * power(("n", v), r.num, e)
        if fixed:
            term = term.mul_monomial(tuple(fixed))
        for i, d in enumerate(dens):
            extra = need[i] - k_m[i]
            if extra:
                term = term * power(("d", i), d, extra)
        total = total + term
    D = _ONE
    for i, d in enumerate(dens):
        if need[i]:
            D = D * power(("d", i), d, need[i])
    return total, D


__all__ = ["RatFunc", "DegenerateSubstitution", "substitute", "as_ratfunc"]
