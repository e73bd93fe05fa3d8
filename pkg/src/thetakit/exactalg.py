"""Exact algebra: big rationals, univariate polynomials, and sparse
trivariate integer polynomials driven by a differential recurrence.

All exact data downstream of this module lives in Q[m], where m stands for
the squared elliptic parameter.  Trivariate polynomials exist only to run
the Schett recurrence X_n = (yz d/dx + zx d/dy + xy d/dz) X_{n-1}; their
odd-index evaluations on the slice (0, k, i*k') collapse back into Z[m].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

__all__ = [
    "BigRat",
    "ConsistencyError",
    "UniPoly",
    "TriPoly",
    "binomial",
    "schett_raw",
    "schett_reduced",
    "unipoly_add",
    "unipoly_mul",
    "unipoly_scale",
    "unipoly_evaluate",
    "compose_affine",
]

# Exact rational scalar type.  fractions.Fraction already guarantees the
# invariants required here: always reduced, denominator positive, exact
# field operations on arbitrary-size integers.
BigRat = Fraction


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; this signals a pipeline bug."""


def _trim(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return coeffs[:end]


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial in m with exact rational coefficients.

    Coefficients are ascending in powers of m with no trailing zeros, so
    equal polynomials have identical representations.  The zero polynomial
    has an empty coefficient tuple and degree -1 (the sentinel).

    >>> p = UniPoly.from_ints([0, 2, -2])   # 2m - 2m^2
    >>> p.evaluate(Fraction(1, 2))
    Fraction(1, 2)
    >>> str(p)
    '-2*m^2 + 2*m'
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        normalized = _trim(tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "coeffs", normalized)

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly(())

    @staticmethod
    def one() -> "UniPoly":
        return UniPoly((Fraction(1),))

    @staticmethod
    def variable() -> "UniPoly":
        """The monomial m."""
        return UniPoly((Fraction(0), Fraction(1)))

    @classmethod
    def from_ints(cls, ints: Iterable[int]) -> "UniPoly":
        return cls(tuple(Fraction(i) for i in ints))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "UniPoly | int | Fraction") -> "UniPoly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(n))
        )

    __radd__ = __add__

    def __sub__(self, other: "UniPoly | int | Fraction") -> "UniPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "UniPoly | int | Fraction") -> "UniPoly":
        return _as_poly(other) + (-self)

    def __mul__(self, other: "UniPoly | int | Fraction") -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out))

    def __rmul__(self, other: "int | Fraction") -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> "UniPoly":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, x):
        """Horner evaluation; exact for Fraction x, works for any ring
        element supporting + and * with Fraction coefficients."""
        result = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def compose_affine(self, alpha, beta) -> "UniPoly":
        """Return p(alpha*m + beta) as an exact polynomial."""
        inner = UniPoly((Fraction(beta), Fraction(alpha)))
        result = UniPoly.zero()
        for c in reversed(self.coeffs):
            result = result * inner + UniPoly((Fraction(c),))
        return result

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def divisible_by_m_one_minus_m(self) -> bool:
        """True iff m(1-m) divides the polynomial.

        m and 1-m are coprime linear factors over Q, so divisibility is
        equivalent to vanishing at m = 0 and m = 1.
        """
        if not self.coeffs:
            return True
        return self.evaluate(Fraction(0)) == 0 and self.evaluate(Fraction(1)) == 0

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if mag.denominator == 1:
                coef = str(mag.numerator)
            else:
                coef = f"({mag})"
            if k == 0:
                body = coef
            else:
                var = "m" if k == 1 else f"m^{k}"
                body = var if mag == 1 else f"{coef}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def _as_poly(value: "UniPoly | int | Fraction") -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return UniPoly((Fraction(value),))
    raise TypeError(f"cannot coerce {type(value).__name__} to UniPoly")


def unipoly_add(p: UniPoly, q: UniPoly) -> UniPoly:
    return p + q


def unipoly_mul(p: UniPoly, q: UniPoly) -> UniPoly:
    return p * q


def unipoly_scale(p: UniPoly, s: "int | Fraction") -> UniPoly:
    return p * Fraction(s)


def unipoly_evaluate(p: UniPoly, x):
    return p.evaluate(x)


def compose_affine(p: UniPoly, alpha, beta) -> UniPoly:
    return p.compose_affine(alpha, beta)


Exponents = tuple[int, int, int]


@dataclass(frozen=True)
class TriPoly:
    """Sparse trivariate integer polynomial in (x, y, z).

    Terms are a canonically sorted tuple of ((a, b, c), coefficient) pairs
    for monomials x^a y^b z^c; no zero coefficients are stored.
    """

    terms: tuple[tuple[Exponents, int], ...]

    @staticmethod
    def from_dict(d: dict[Exponents, int]) -> "TriPoly":
        return TriPoly(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @staticmethod
    def zero() -> "TriPoly":
        return TriPoly(())

    def as_dict(self) -> dict[Exponents, int]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "TriPoly") -> "TriPoly":
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return TriPoly.from_dict(out)

    def __neg__(self) -> "TriPoly":
        return TriPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "TriPoly") -> "TriPoly":
        return self + (-other)

    def __mul__(self, other: "TriPoly | int") -> "TriPoly":
        if isinstance(other, int):
            return TriPoly(tuple((e, c * other) for e, c in self.terms)) if other else TriPoly.zero()
        if not isinstance(other, TriPoly):
            return NotImplemented
        out: dict[Exponents, int] = {}
        for (a1, b1, c1), u in self.terms:
            for (a2, b2, c2), v in other.terms:
                key = (a1 + a2, b1 + b2, c1 + c2)
                out[key] = out.get(key, 0) + u * v
        return TriPoly.from_dict(out)

    __rmul__ = __mul__

    def diff(self, var: int) -> "TriPoly":
        """Exact partial derivative; var is 0 for x, 1 for y, 2 for z."""
        if var not in (0, 1, 2):
            raise ValueError("var must be 0, 1 or 2")
        out: dict[Exponents, int] = {}
        for exps, c in self.terms:
            n = exps[var]
            if n == 0:
                continue
            shifted = list(exps)
            shifted[var] = n - 1
            key = (shifted[0], shifted[1], shifted[2])
            out[key] = out.get(key, 0) + c * n
        return TriPoly.from_dict(out)

    def total_degrees(self) -> set[int]:
        return {a + b + c for (a, b, c), _ in self.terms}

    def monomials(self) -> Iterator[tuple[Exponents, int]]:
        return iter(self.terms)


def _schett_step(poly: TriPoly) -> TriPoly:
    """Apply the operator yz d/dx + zx d/dy + xy d/dz."""
    out: dict[Exponents, int] = {}
    for (a, b, c), coef in poly.terms:
        if a:
            key = (a - 1, b + 1, c + 1)
            out[key] = out.get(key, 0) + coef * a
        if b:
            key = (a + 1, b - 1, c + 1)
            out[key] = out.get(key, 0) + coef * b
        if c:
            key = (a + 1, b + 1, c - 1)
            out[key] = out.get(key, 0) + coef * c
    return TriPoly.from_dict(out)


_schett_memo: list[TriPoly] = [TriPoly.from_dict({(1, 0, 0): 1})]


def schett_raw(n: int) -> TriPoly:
    """The n-th Schett polynomial X_n(x, y, z), exact integer coefficients.

    X_0 = x and X_n is obtained from X_{n-1} by one application of the
    differential operator above.  Values are memoized.
    """
    if n < 0:
        raise ValueError("schett index must be >= 0")
    while len(_schett_memo) <= n:
        _schett_memo.append(_schett_step(_schett_memo[-1]))
    return _schett_memo[n]


_reduced_memo: dict[int, UniPoly] = {}


def schett_reduced(n: int) -> UniPoly:
    """The polynomial S_n(m) defined by X_{2n+1}(0, k, i*k') = i*k*k'*S_n(m).

    Substitutes x = 0, y = k, z = i*k' into X_{2n+1}, reduces even powers
    of k' through k'^2 = 1 - m, and strips exactly one factor i*k*k'.  The
    recurrence forces every surviving monomial to have odd y and z degrees;
    anything else raises ConsistencyError.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    cached = _reduced_memo.get(n)
    if cached is not None:
        return cached
    raw = schett_raw(2 * n + 1)
    total = UniPoly.zero()
    for (a, b, c), coef in raw.terms:
        if a != 0:
            continue  # killed by x = 0
        if b % 2 == 0 or c % 2 == 0:
            raise ConsistencyError(
                f"X_{2 * n + 1} has an x-free monomial y^{b} z^{c} with even degree"
            )
        # y^b z^c -> k^b (i k')^c = i * k * k' * (-1)^((c-1)/2) * m^((b-1)/2) (1-m)^((c-1)/2)
        j = (c - 1) // 2
        sign = -1 if j % 2 else 1
        term = UniPoly.from_ints([1, -1]) ** j  # (1 - m)^j
        shift = (b - 1) // 2
        shifted = UniPoly(tuple(Fraction(0) for _ in range(shift)) + tuple(term.coeffs))
        total = total + shifted * (coef * sign)
    if total.degree != n or not total.is_integral():
        raise ConsistencyError(f"S_{n} has unexpected shape: {total}")
    _reduced_memo[n] = total
    return total


def binomial(n: int, r: int) -> int:
    """Exact binomial coefficient with strict range validation."""
    if n < 0 or r < 0 or r > n:
        raise ValueError(f"binomial({n}, {r}) is out of range")
    return math.comb(n, r)
