"""Moments of the theta-weighted integer distribution.

Contains the graded complete Bell recursion that turns exact cumulant
polynomials into exact moment polynomials R_{2n}(m), the integer sequence
d(n) = 2^n R_{4n}(1/2) and its rational generalization to moduli 1/sqrt(p),
the integrality-conjecture explorer, the Q sequence with two independent
recurrences, and three mutually independent moment-from-cumulant formulas
(plain recurrence, Hessenberg determinant, set-partition sum).

Grading convention: the exact pipeline works in Z[m]; a value of grade 2n
carries an implicit transcendental factor (z/2)^(2n).  Because the order-2
cumulant is not polynomial in m, the exact grade excludes it; exact moments
are therefore moments of the variance-removed variable.  Numeric-grade
moments include the variance and match the direct series.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import ConsistencyError, UniPoly, binomial
from .cumulants import cumulant_poly, cumulant_value
from .numkernel import HPFloat, ModulusContext, hpf

__all__ = [
    "MomentPoly",
    "ConjectureRow",
    "bell_moments",
    "d_sequence",
    "dk_sequence",
    "conjecture_check",
    "q_sequence",
    "q_value",
    "a_sequence",
    "q_from_a",
    "kappa_recurrence_check",
    "moments_from_cumulants",
    "moments_determinant",
    "moments_partition",
]


@dataclass(frozen=True)
class MomentPoly:
    """Exact moment of order 2n in graded form: mu_{2n} = (z/2)^(2n) R(m)."""

    n: int
    R: UniPoly


def _graded_cumulant(order: int) -> UniPoly:
    """Grade coefficient of the order-th cumulant: zero for odd orders and
    for order 2 (the variance is excluded from the exact grade)."""
    if order % 2 or order == 2:
        return UniPoly.zero()
    return cumulant_poly(order // 2).coefficient


def bell_moments(N: int) -> list[MomentPoly]:
    """Moment polynomials R_{2n} for n = 0..N via the complete Bell
    recursion B_{j+1} = sum_i C(j, i) c_{i+1} B_{j-i}, B_0 = 1, run on the
    graded cumulant coefficients."""
    if N < 0:
        raise ValueError("N must be >= 0")
    top = 2 * N
    kappa = [UniPoly.zero()] * (top + 1)
    for order in range(1, top + 1):
        kappa[order] = _graded_cumulant(order)
    bell = [UniPoly.one()]
    for j in range(top):
        nxt = UniPoly.zero()
        for i in range(j + 1):
            c = kappa[i + 1]
            if not c:
                continue
            nxt = nxt + c * bell[j - i] * binomial(j, i)
        bell.append(nxt)
    for j in range(1, top + 1, 2):
        if bell[j]:
            raise ConsistencyError(f"odd-order graded moment B_{j} is nonzero")
    return [MomentPoly(n=n, R=bell[2 * n]) for n in range(N + 1)]


def d_sequence(N: int) -> list[int]:
    """The integer sequence d(n) = 2^n R_{4n}(1/2) for n = 1..N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    polys = bell_moments(2 * N)
    out: list[int] = []
    for n in range(1, N + 1):
        value = polys[2 * n].R.evaluate(Fraction(1, 2)) * 2 ** n
        if value.denominator != 1:
            raise ConsistencyError(f"d({n}) = {value} is not an integer")
        out.append(value.numerator)
    return out


def dk_sequence(p: int, N: int) -> list[Fraction]:
    """Exact rational values R_{4n}(1/p) for n = 0..N (modulus 1/sqrt(p))."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if N < 0:
        raise ValueError("N must be >= 0")
    polys = bell_moments(2 * N)
    point = Fraction(1, p)
    return [polys[2 * n].R.evaluate(point) for n in range(N + 1)]


# Scaling prefactors alpha_m for the integrality table, keyed by p.  Each
# maps the term index m >= 1 to an exact rational.  The p = 2 entry makes
# the scaled sequence coincide with d(m).
_ALPHA: dict[int, object] = {
    2: lambda m: Fraction(2) ** m,
    3: lambda m: Fraction(9, 4) ** m,
    4: lambda m: Fraction(8 ** m, 3),
    5: lambda m: Fraction(25, 8) ** m,
    6: lambda m: Fraction(18 ** m, 5),
    7: lambda m: Fraction(49 ** m, 4 ** m * 3),
}


@dataclass(frozen=True)
class ConjectureRow:
    """One scaled term of the integrality table for modulus 1/sqrt(p).

    For p in 2..7 the known prefactor alpha is applied and integrality is
    reported; for other p no prefactor is known, so alpha, scaled and
    is_integer are None and the prime factorization of the denominator of
    the raw value is supplied instead.
    """

    p: int
    m: int
    value: Fraction
    alpha: Fraction | None
    scaled: Fraction | None
    is_integer: bool | None
    denominator_factors: dict[int, int] | None = None


def _factorize(x: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= x:
        while x % d == 0:
            out[d] = out.get(d, 0) + 1
            x //= d
        d += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def conjecture_check(p: int, N: int) -> list[ConjectureRow]:
    """Scaled integrality rows for m = 1..N at modulus 1/sqrt(p)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if N < 0:
        raise ValueError("N must be >= 0")
    values = dk_sequence(p, N)
    alpha_fn = _ALPHA.get(p)
    rows: list[ConjectureRow] = []
    for m in range(1, N + 1):
        value = values[m]
        if alpha_fn is not None:
            alpha = alpha_fn(m)
            scaled = alpha * value
            rows.append(
                ConjectureRow(
                    p=p,
                    m=m,
                    value=value,
                    alpha=alpha,
                    scaled=scaled,
                    is_integer=(scaled.denominator == 1),
                )
            )
        else:
            rows.append(
                ConjectureRow(
                    p=p,
                    m=m,
                    value=value,
                    alpha=None,
                    scaled=None,
                    is_integer=None,
                    denominator_factors=_factorize(value.denominator),
                )
            )
    return rows


def q_value(n: int) -> int:
    """Q_{2n}, the cumulant coefficient in the self-dual grading
    kappa_{2n} = (z/(2 sqrt 2))^(2n) Q_{2n}; equals (-1)^(n-1) 2^n P_{2n-2}(1/2)."""
    if n < 2:
        raise ValueError("Q is defined for order >= 4")
    sign = 1 if (n - 1) % 2 == 0 else -1
    value = cumulant_poly(n).P.evaluate(Fraction(1, 2)) * sign * 2 ** n
    if value.denominator != 1:
        raise ConsistencyError(f"Q_{2 * n} = {value} is not an integer")
    return value.numerator


def q_sequence(N: int) -> list[int]:
    """Q_{2n} for 2n = 4, 6, ..., 4N; asserts the 4l+2 entries vanish."""
    if N < 1:
        raise ValueError("N must be >= 1")
    out: list[int] = []
    for n in range(2, 2 * N + 1):
        q = q_value(n)
        if n % 2 == 1 and q != 0:
            raise ConsistencyError(f"Q_{2 * n} = {q}, expected 0 at order 4l+2")
        out.append(q)
    return out


def a_sequence(N: int) -> list[int]:
    """The quadratic-recurrence integers A_0..A_N:
    A_{n+1} = sum_{j=0}^{n} C(4n+4, 4j+2) A_j A_{n-j}, A_0 = 1."""
    if N < 0:
        raise ValueError("N must be >= 0")
    a = [1]
    for n in range(N):
        nxt = sum(binomial(4 * n + 4, 4 * j + 2) * a[j] * a[n - j] for j in range(n + 1))
        a.append(nxt)
    return a


def q_from_a(N: int) -> list[int]:
    """Second route to the nonzero Q entries: Q_{4n} = 2 (-12)^(n-1) A_{n-1}."""
    if N < 1:
        raise ValueError("N must be >= 1")
    a = a_sequence(N - 1)
    return [2 * (-12) ** (n - 1) * a[n - 1] for n in range(1, N + 1)]


def kappa_recurrence_check(N: int) -> bool:
    """Exact check of the self-dual quadratic cumulant recurrence
    kappa_{4n} = -6 sum_{j=0}^{n-2} C(4n-4, 4j+2) kappa_{4j+4} kappa_{4n-4j-4}
    for 2 <= n <= N, in the grade-free form gamma_{2t} = (-1)^(t-1) P_{2t-2}(1/2)
    (the common factor (z/2)^(4n) cancels)."""
    if N < 2:
        raise ValueError("N must be >= 2")

    def gamma(t: int) -> Fraction:
        sign = 1 if (t - 1) % 2 == 0 else -1
        return cumulant_poly(t).P.evaluate(Fraction(1, 2)) * sign

    for n in range(2, N + 1):
        rhs = Fraction(0)
        for j in range(n - 1):
            rhs += binomial(4 * n - 4, 4 * j + 2) * gamma(2 * j + 2) * gamma(2 * n - 2 * j - 2)
        if gamma(2 * n) != -6 * rhs:
            return False
    return True


def moments_from_cumulants(N: int, ctx: ModulusContext | None = None) -> list:
    """Moments of every order 0..2N by the plain recurrence
    mu_n = kappa_n + sum_{m=1}^{n-1} C(n-1, m-1) kappa_m mu_{n-m}.

    Without a context the computation is exact (grade coefficients in Z[m],
    order-2 cumulant excluded); the even entries reproduce bell_moments.
    With a context the cumulants are numeric and include the variance, so
    the result matches the direct theta-weighted series.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    top = 2 * N
    if ctx is None:
        kappa = [UniPoly.zero()] + [_graded_cumulant(order) for order in range(1, top + 1)]
        mu: list = [UniPoly.one()]
    else:
        kappa = [hpf(0, ctx.digits)] + [cumulant_value(order, ctx) for order in range(1, top + 1)]
        mu = [hpf(1, ctx.digits)]
    for order in range(1, top + 1):
        acc = kappa[order]
        for m in range(1, order):
            acc = acc + kappa[m] * mu[order - m] * binomial(order - 1, m - 1)
        mu.append(acc)
    return mu


def moments_determinant(n: int, cumulants: list) -> object:
    """The order-n moment as a scaled Hessenberg determinant.

    cumulants supplies kappa_1..kappa_n in the active grade (exact
    polynomials, rationals, or HPFloat).  The matrix H is n x n with
    H[r][0] = kappa_{r+1}/r!, unit superdiagonal, and
    H[r][c] = -kappa_{r-c+1}/(c (r-c)!) for 1 <= c <= r; then
    mu_n = (-1)^(n-1) (n-1)! det(H).  The determinant is evaluated by the
    Hessenberg recursion on the transpose (unit subdiagonal), never by
    general elimination.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if len(cumulants) < n:
        raise ValueError(f"need kappa_1..kappa_{n}, got {len(cumulants)} values")

    def entry(r: int, c: int):
        if c == 0:
            return cumulants[r] * Fraction(1, math.factorial(r))
        if c == r + 1:
            return 1
        if 1 <= c <= r:
            return cumulants[r - c] * Fraction(-1, c * math.factorial(r - c))
        return 0

    # determinant of the transpose (upper Hessenberg, unit subdiagonal):
    # D_k = A[k-1][k-1] D_{k-1} + sum_{j<k} (-1)^(k-j) A[j-1][k-1] D_{j-1}
    # with A[r][c] = entry(c, r).
    dets: list = [1]
    for k in range(1, n + 1):
        acc = entry(k - 1, k - 1) * dets[k - 1]
        for j in range(1, k):
            sign = -1 if (k - j) % 2 else 1
            term = entry(k - 1, j - 1) * dets[j - 1] * sign
            acc = acc + term
        dets.append(acc)
    prefactor = math.factorial(n - 1) * (1 if (n - 1) % 2 == 0 else -1)
    return dets[n] * prefactor


def _is_zero(v) -> bool:
    if isinstance(v, UniPoly):
        return not v
    if isinstance(v, HPFloat):
        return v.value == 0
    return v == 0


def moments_partition(n: int, cumulants: list, cap: int = 12) -> object:
    """The order-n moment as a sum over set partitions of {1..n} of the
    product of block-size cumulants.

    Partitions are enumerated explicitly (each exactly once) by assigning
    the smallest remaining element a block and recursing; branches whose
    block cumulant is zero are pruned, which drops exactly the terms with a
    zero factor.  This is a cross-check oracle, deterministic, with a desk
    budget: cap defaults to 12 and may be raised to at most 14.
    """
    if not 1 <= n <= min(cap, 14):
        raise ValueError(f"order must be between 1 and {min(cap, 14)}")
    if len(cumulants) < n:
        raise ValueError(f"need kappa_1..kappa_{n}, got {len(cumulants)} values")
    kappa = list(cumulants)
    zero_size = [_is_zero(kappa[t]) for t in range(n)]

    def over_partitions(elems: tuple[int, ...]):
        if not elems:
            return 1
        rest = elems[1:]
        total = 0
        for t in range(len(rest) + 1):  # block size t+1 around elems[0]
            if zero_size[t]:
                continue
            kv = kappa[t]
            for members in itertools.combinations(rest, t):
                chosen = set(members)
                remaining = tuple(e for e in rest if e not in chosen)
                total = total + kv * over_partitions(remaining)
        return total

    # seed with a typed zero so a fully pruned sum stays in the input ring
    return kappa[0] * 0 + over_partitions(tuple(range(n)))
