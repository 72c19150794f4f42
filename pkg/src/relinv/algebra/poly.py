"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable_id, exponent)`` pairs sorted by id with
no zero exponents, so the empty tuple is the constant monomial.  Coefficients
are kept as ``int`` when integral and ``Fraction`` otherwise, which keeps the
common integer case fast.

>>> x, y = Poly.var(0), Poly.var(1)
>>> poly_exact_divide(x**2 - y**2, x - y) == x + y
True
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Monomial = Tuple[Tuple[int, int], ...]
Coeff = Union[int, Fraction]

ONE_MONO: Monomial = ()


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def q(c) -> Coeff:
    """Normalize a rational scalar: integral values become ``int``."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    if isinstance(c, str):
        return q(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def qdiv(a: Coeff, b: Coeff) -> Coeff:
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return q(Fraction(a) / b)


# ---------------------------------------------------------------- monomials

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_div(a: Monomial, b: Monomial):
    """Return a/b if b divides a, else None."""
    if not b:
        return a
    da = dict(a)
    for v, e in b:
        ea = da.get(v, 0)
        if ea < e:
            return None
        if ea == e:
            del da[v]
        else:
            da[v] = ea - e
    return tuple(sorted(da.items()))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    db = dict(b)
    return tuple((v, min(e, db[v])) for v, e in a if v in db)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial):
    """Sort key realizing graded lex order (variable 0 most significant)."""
    return (sum(e for _, e in m), tuple((-v, e) for v, e in m))


def mono_vars(m: Monomial) -> Iterator[int]:
    return (v for v, _ in m)


# ---------------------------------------------------------------- polynomials

class Poly:
    """Immutable sparse polynomial over Q.

    Parameters
    ----------
    terms : mapping Monomial -> rational
        Zero coefficients are dropped.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None, *, _clean: bool = False):
        if terms is None:
            self.terms: Dict[Monomial, Coeff] = {}
        elif _clean:
            self.terms = terms  # type: ignore[assignment]
        else:
            self.terms = {m: q(c) for m, c in terms.items() if c != 0}
        self._hash = None

    # construction
    @classmethod
    def const(cls, c) -> "Poly":
        c = q(c)
        return cls({(): c}, _clean=True) if c != 0 else cls()

    @classmethod
    def var(cls, i: int, power: int = 1) -> "Poly":
        if power == 0:
            return cls.const(1)
        return cls({((i, power),): 1}, _clean=True)

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Poly":
        c = q(c)
        return cls({m: c}, _clean=True) if c != 0 else cls()

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, v: int) -> int:
        best = 0
        for m in self.terms:
            for w, e in m:
                if w == v and e > best:
                    best = e
        return best

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def coefficient(self, m: Monomial) -> Coeff:
        return self.terms.get(m, 0)

    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=descending)

    def leading_term(self) -> Tuple[Monomial, Coeff]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    # equality / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): q(other)} if other != 0 else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # ring operations
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s == 0:
                res.pop(m, None)
            else:
                res[m] = s
        return Poly({m: q(c) for m, c in res.items()}, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = q(c)
        if c == 0:
            return Poly()
        if c == 1:
            return self
        return Poly({m: q(v * c) for m, v in self.terms.items()}, _clean=True)

    def mul_monomial(self, mono: Monomial, c=1) -> "Poly":
        c = q(c)
        if c == 0:
            return Poly()
        return Poly({mono_mul(m, mono): q(v * c) for m, v in self.terms.items()}, _clean=True)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return Poly({mono_mul(m, mb): q(c * cb) for m, c in a.items()}, _clean=True)
        res: Dict[Monomial, Coeff] = {}
        get = res.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = mono_mul(m1, m2)
                res[m] = get(m, 0) + c1 * c2
        return Poly({m: q(c) for m, c in res.items() if c != 0}, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # calculus
    def diff(self, v: int) -> "Poly":
        res: Dict[Monomial, Coeff] = {}
        for m, c in self.terms.items():
            for idx, (w, e) in enumerate(m):
                if w == v:
                    if e == 1:
                        nm = m[:idx] + m[idx + 1:]
                    else:
                        nm = m[:idx] + ((w, e - 1),) + m[idx + 1:]
                    res[nm] = res.get(nm, 0) + c * e
                    break
        return Poly({m: q(c) for m, c in res.items() if c != 0}, _clean=True)

    def evaluate(self, point: Mapping[int, Coeff]) -> Coeff:
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * point[v] ** e
            total += t
        return q(total)

    def partial_evaluate(self, point: Mapping[int, Coeff]) -> "Poly":
        res: Dict[Monomial, Coeff] = {}
        for m, c in self.terms.items():
            keep = []
            for v, e in m:
                if v in point:
                    c = c * point[v] ** e
                else:
                    keep.append((v, e))
            km = tuple(keep)
            res[km] = res.get(km, 0) + c
        return Poly(res)

    def rename(self, mapping: Mapping[int, int]) -> "Poly":
        """Re-index variables; ``mapping`` must be injective on used variables."""
        res: Dict[Monomial, Coeff] = {}
        for m, c in self.terms.items():
            nm = tuple(sorted((mapping[v], e) for v, e in m))
            res[nm] = c
        return Poly(res, _clean=True)

    # normal forms
    def monomial_content(self) -> Monomial:
        it = iter(self.terms)
        try:
            g = next(it)
        except StopIteration:
            return ()
        for m in it:
            if not g:
                break
            g = mono_gcd(g, m)
        return g

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            if type(c) is int:
                num = gcd(num, c)
            else:
                num = gcd(num, c.numerator)
                den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Content-free with positive leading coefficient (graded lex)."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return self.scale(1 / c)

    def __repr__(self) -> str:
        return f"Poly({self.sorted_terms()!r})"


def poly_exact_divide(g: Poly, f: Poly) -> Poly:
    """Exact quotient g/f, raising :class:`NotDivisible` on a remainder.

    Leading-term reduction under graded lex: for a single divisor the
    remainder vanishes exactly when f divides g, so we stop at the first
    leading term that f's leading term does not divide.
    """
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if g.is_zero():
        return Poly()
    fm, fc = f.leading_term()
    if len(f.terms) == 1:
        out = {}
        for m, c in g.terms.items():
            d = mono_div(m, fm)
            if d is None:
                raise NotDivisible("monomial divisor does not divide")
            out[d] = qdiv(c, fc)
        return Poly(out, _clean=True)
    if g.degree() < f.degree():
        raise NotDivisible("degree too small")
    rest = [(m, c) for m, c in f.terms.items() if m != fm]
    r = dict(g.terms)
    quot: Dict[Monomial, Coeff] = {}
    while r:
        m = max(r, key=mono_key)
        d = mono_div(m, fm)
        if d is None:
            raise NotDivisible("leading term not divisible")
        c = qdiv(r.pop(m), fc)
        quot[d] = c
        for fm2, fc2 in rest:
            mm = mono_mul(fm2, d)
            s = r.get(mm, 0) - c * fc2
            if s == 0:
                r.pop(mm, None)
            else:
                r[mm] = s
    return Poly({m: q(c) for m, c in quot.items()}, _clean=True)


def try_divide(g: Poly, f: Poly):
    """Like :func:`poly_exact_divide` but returns None instead of raising."""
    try:
        return poly_exact_divide(g, f)
    except NotDivisible:
        return None


def monomials_up_to(variables: Iterable[int], degree: int, min_degree: int = 0):
    """All monomials in ``variables`` with min_degree <= total degree <= degree.

    Returned in ascending graded lex order.
    """
    vs = sorted(variables)
    out = []

    def rec(start, remaining, acc):
        out.append(tuple(acc))
        if remaining == 0:
            return
        for k in range(start, len(vs)):
            v = vs[k]
            if acc and acc[-1][0] == v:
                acc[-1] = (v, acc[-1][1] + 1)
                rec(k, remaining - 1, acc)
                acc[-1] = (v, acc[-1][1] - 1)
            else:
                acc.append((v, 1))
                rec(k, remaining - 1, acc)
                acc.pop()

    rec(0, degree, [])
    res = [m for m in out if mono_degree(m) >= min_degree]
    res.sort(key=mono_key)
    return res
