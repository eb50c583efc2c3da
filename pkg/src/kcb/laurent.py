"""Exact integer Laurent-polynomial arithmetic in one variable v.

All Fock-space coefficients live in Z[v, v^-1].  Coefficients are plain
Python ints, so nothing ever overflows silently.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Mapping


class NotDivisibleError(ArithmeticError):
    """No exact quotient exists in Z[v, v^-1]."""


class LaurentPoly:
    """An integer-coefficient Laurent polynomial in v.

    Terms are stored sparsely as exponent -> nonzero coefficient.
    Instances are immutable by convention: every operation builds a new
    object, so values can be shared freely between workers.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        t: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = c
        self._terms = t

    # construction helpers

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({exp: coeff})

    @staticmethod
    def from_int(n: int) -> "LaurentPoly":
        return LaurentPoly({0: n})

    # inspection

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        """Terms as (exponent, coefficient), ascending exponent."""
        return iter(sorted(self._terms.items()))

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    def in_v_zv(self) -> bool:
        """True iff every exponent is strictly positive (the poly lies in vZ[v])."""
        return all(e > 0 for e in self._terms)

    # arithmetic

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other._terms:
            return self
        if not self._terms:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            n = t.get(e, 0) + c
            if n:
                t[e] = n
            elif e in t:
                del t[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = t
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return _ZERO
            out = LaurentPoly.__new__(LaurentPoly)
            out._terms = {e: c * other for e, c in self._terms.items()}
            return out
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        if len(other._terms) == 1:
            ((oe, oc),) = other._terms.items()
            out = LaurentPoly.__new__(LaurentPoly)
            out._terms = {e + oe: c * oc for e, c in self._terms.items()}
            return out
        t: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                n = t.get(e, 0) + c1 * c2
                if n:
                    t[e] = n
                elif e in t:
                    del t[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = t
        return out

    __rmul__ = __mul__

    def shift(self, exp: int) -> "LaurentPoly":
        """Multiply by the monomial v^exp."""
        if exp == 0:
            return self
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e + exp: c for e, c in self._terms.items()}
        return out

    def bar(self) -> "LaurentPoly":
        """The bar involution v -> v^-1 (exponent negation term-wise)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {-e: c for e, c in self._terms.items()}
        return out

    # comparisons

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # rendering / serialization

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        bits = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                head = "v" if e == 1 else f"v^{e}"
                mono = head if abs(c) == 1 else f"{abs(c)}*{head}"
            if not bits:
                bits.append(mono if c > 0 else f"-{mono}")
            else:
                bits.append(f"+ {mono}" if c > 0 else f"- {mono}")
        return " ".join(bits)

    __repr__ = __str__

    def to_json(self) -> dict[str, int]:
        """Exponent-string -> coefficient map, exponents ascending."""
        return {str(e): c for e, c in sorted(self._terms.items())}

    @staticmethod
    def from_json(data: Mapping[str, int]) -> "LaurentPoly":
        return LaurentPoly({int(e): int(c) for e, c in data.items()})


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """Balanced quantum integer [n] = v^(n-1) + v^(n-3) + ... + v^-(n-1); [0] = 0."""
    if n < 0:
        raise ValueError(f"qint needs n >= 0, got {n}")
    if n == 0:
        return _ZERO
    return LaurentPoly({e: 1 for e in range(-(n - 1), n, 2)})


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentPoly:
    """Quantum factorial [n]! = [n][n-1]...[1]; [0]! = 1."""
    if n < 0:
        raise ValueError(f"qfact needs n >= 0, got {n}")
    if n == 0:
        return _ONE
    return qfact(n - 1) * qint(n)


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Exact quotient r with r*q = p; raises NotDivisibleError otherwise.

    Used to realize divided powers; a failure here means an upstream
    coefficient computation is wrong, so it must never be swallowed.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return _ZERO
    plo, phi = p.min_exponent(), p.max_exponent()
    qlo, qhi = q.min_exponent(), q.max_exponent()
    a = [p.coeff(e) for e in range(plo, phi + 1)]
    b = [q.coeff(e) for e in range(qlo, qhi + 1)]
    dn = len(a) - len(b)
    if dn < 0:
        raise NotDivisibleError(f"({p}) is not divisible by ({q})")
    out = [0] * (dn + 1)
    lead = b[-1]
    for i in range(dn, -1, -1):
        c = a[i + len(b) - 1]
        if c % lead:
            raise NotDivisibleError(f"({p}) is not divisible by ({q})")
        f = c // lead
        out[i] = f
        if f:
            for j, bj in enumerate(b):
                a[i + j] -= f * bj
    if any(a):
        raise NotDivisibleError(f"({p}) is not divisible by ({q})")
    return LaurentPoly({plo - qlo + i: c for i, c in enumerate(out)})


def bar(p: LaurentPoly) -> LaurentPoly:
    """Free-standing form of LaurentPoly.bar (v -> v^-1)."""
    return p.bar()


def bar_symmetrize_nonpos(p: LaurentPoly) -> LaurentPoly:
    """The unique bar-fixed polynomial agreeing with p in all degrees <= 0.

    beta = c_0 + sum_{i>0} c_{-i} (v^i + v^-i).  Subtracting beta from p
    leaves only strictly positive exponents whenever p's non-positive part
    determines it; this is the scalar correction used by the canonical
    basis reduction.
    """
    t: dict[int, int] = {}
    c0 = p.coeff(0)
    if c0:
        t[0] = c0
    for e, c in p._terms.items():
        if e < 0:
            t[e] = t.get(e, 0) + c
            t[-e] = t.get(-e, 0) + c
    return LaurentPoly(t)
