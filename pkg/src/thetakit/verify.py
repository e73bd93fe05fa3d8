"""Numeric verification harness.

Ties the exact polynomial pipeline to theta-series ground truth: the
Hermite-weighted moment identity, the finite moment formula, the
lemniscatic special case, the dual-modulus variance and moment relations,
and the supporting elliptic identities (Legendre, modular transformation,
series-vs-polynomial cumulants).

Residuals are reported relative to max(1, |rhs|) because moments grow
super-exponentially with the order; the default tolerance 10^(8-digits)
budgets series truncation plus accumulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from mpmath import mp

from .exactalg import binomial
from .cumulants import cumulant_lambert, cumulant_poly
from .moments import bell_moments, d_sequence
from .numkernel import (
    DEFAULT_DIGITS,
    DomainError,
    HPFloat,
    ModulusContext,
    gamma_quarter,
    hermite,
    hpf,
    jacobi_transform_residual,
    make_context,
    pi,
    pow10,
    theta0,
)

__all__ = [
    "VerificationReport",
    "series_moment",
    "verify_theorem1",
    "verify_theorem3",
    "verify_romik11",
    "verify_variance_symmetry",
    "verify_lambert_schett",
    "verify_jacobi_transform",
    "verify_legendre",
    "verify_dual_moment_relation",
    "verify_phi_consistency",
    "default_grid",
    "run_suite",
    "parse_modulus",
    "suite_tolerance",
]

_GUARD = 10

LEMNISCATIC_TOKEN = "1/sqrt2"


def parse_modulus(token: str, digits: int) -> HPFloat:
    """Parse a modulus token: a decimal string, or '1/sqrt2' exactly."""
    if token == LEMNISCATIC_TOKEN:
        return hpf(Fraction(1, 2), digits).sqrt()
    return hpf(token, digits)


def suite_tolerance(digits: int) -> HPFloat:
    return pow10(8 - digits, digits)


@dataclass(frozen=True)
class VerificationReport:
    """One verified identity instance.

    lhs/rhs/residual/tolerance are None only when error is set (for
    example a domain error raised while building the cell).
    """

    identity: str
    n: int | None
    k: str
    digits: int
    lhs: HPFloat | None
    rhs: HPFloat | None
    residual: HPFloat | None
    tolerance: HPFloat | None
    passed: bool
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "n": self.n,
            "k": self.k,
            "digits": self.digits,
            "lhs": None if self.lhs is None else self.lhs.to_decimal_string(),
            "rhs": None if self.rhs is None else self.rhs.to_decimal_string(),
            "residual": None if self.residual is None else self.residual.to_decimal_string(),
            "tolerance": None if self.tolerance is None else self.tolerance.to_decimal_string(),
            "passed": self.passed,
            "error": self.error,
        }


def _report(identity: str, n: int | None, k_token: str, digits: int,
            lhs: HPFloat, rhs: HPFloat, tolerance: HPFloat | None = None) -> VerificationReport:
    tol = tolerance if tolerance is not None else suite_tolerance(digits)
    scale = abs(rhs)
    residual = abs(lhs - rhs)
    if scale > 1:
        residual = residual / scale
    return VerificationReport(
        identity=identity,
        n=n,
        k=k_token,
        digits=digits,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        tolerance=tol,
        passed=bool(residual < tol),
    )


# ---------------------------------------------------------------------------
# Ground-truth series
# ---------------------------------------------------------------------------


def series_moment(n: int, ctx: ModulusContext) -> HPFloat:
    """Moment of order 2n by direct summation of the weighted series
    sum_p p^(2n) q^(p^2) normalized by theta3(q)."""
    if n < 0:
        raise DomainError("moment index must be >= 0")
    digits = ctx.digits
    with mp.workdps(digits + _GUARD):
        q = +ctx.q.value
        threshold = mp.mpf(10) ** (-digits - 5)
        total = mp.mpf(1) if n == 0 else mp.mpf(0)  # p = 0 term
        below = 0
        p = 1
        while below < 2:
            term = mp.mpf(p) ** (2 * n) * q ** (p * p)
            total += 2 * term
            below = below + 1 if term < threshold else 0
            p += 1
        norm = +theta0(3, ctx.q).value
        return HPFloat(total / norm, digits)


def series_odd_moment(j: int, ctx: ModulusContext) -> HPFloat:
    """The antisymmetric series sum_p p^(2j+1) q^(p^2) / theta3; identically
    zero, evaluated here as an explicit cancellation check."""
    digits = ctx.digits
    with mp.workdps(digits + _GUARD):
        q = +ctx.q.value
        threshold = mp.mpf(10) ** (-digits - 5)
        total = mp.mpf(0)
        below = 0
        p = 1
        while below < 2:
            term = mp.mpf(p) ** (2 * j + 1) * q ** (p * p)
            total += term - term  # +p and -p contributions cancel exactly
            below = below + 1 if term < threshold else 0
            p += 1
        norm = +theta0(3, ctx.q).value
        return HPFloat(total / norm, digits)


def hermite_weighted_series(n: int, ctx: ModulusContext) -> HPFloat:
    """sum_p q^(p^2) H_{2n}(p / (sigma sqrt 2)) / theta3(q) by direct
    summation; the Hermite factor only grows polynomially against the
    Gaussian-type decay of q^(p^2)."""
    digits = ctx.digits
    sigma = ctx.sigma2.sqrt()
    scale = sigma * hpf(2, digits).sqrt()
    with mp.workdps(digits + _GUARD):
        q = +ctx.q.value
        threshold = mp.mpf(10) ** (-digits - 5)
        total = +hermite(2 * n, hpf(0, digits)).value
        below = 0
        p = 1
        while below < 2:
            x = hpf(p, digits) / scale
            h = +hermite(2 * n, x).value
            term = q ** (p * p) * h
            total += 2 * term
            below = below + 1 if abs(term) < threshold else 0
            p += 1
        norm = +theta0(3, ctx.q).value
        return HPFloat(total / norm, digits)


# ---------------------------------------------------------------------------
# Identity verifiers
# ---------------------------------------------------------------------------


def verify_theorem1(n: int, ctx: ModulusContext, k_token: str = "") -> VerificationReport:
    """Hermite-weighted series against the graded moment polynomial:
    (1/theta3) sum_p q^(p^2) H_{2n}(p/(sigma sqrt2)) = (z^2/(2 sigma^2))^n R_{2n}(m)."""
    if n < 0:
        raise DomainError("index must be >= 0")
    lhs = hermite_weighted_series(n, ctx)
    m = ctx.k * ctx.k
    r_val = bell_moments(n)[n].R.evaluate(m) if n else hpf(1, ctx.digits)
    ratio = (ctx.z * ctx.z) / (2 * ctx.sigma2)
    rhs = ratio ** n * r_val if n else hpf(1, ctx.digits)
    return _report("theorem1", n, k_token or str(ctx.k), ctx.digits, lhs, rhs)


def verify_theorem3(n: int, ctx: ModulusContext, k_token: str = "") -> VerificationReport:
    """Finite moment formula against the direct series:
    mu_{2n} = sum_j C(2n,2j) ((2n-2j)!/(n-j)!) (z/2)^(2j) R_{2j}(m) (sigma^2/2)^(n-j).

    The Gaussian-convolution factor enters with a plus sign; the minus
    variant fails already at n = 1 (it would force a negative variance).
    """
    if n < 0:
        raise DomainError("index must be >= 0")
    digits = ctx.digits
    m = ctx.k * ctx.k
    half_z = ctx.z / 2
    half_s = ctx.sigma2 / 2
    polys = bell_moments(n)
    lhs = hpf(0, digits)
    for j in range(n + 1):
        coeff = binomial(2 * n, 2 * j) * Fraction(
            math.factorial(2 * n - 2 * j), math.factorial(n - j)
        )
        r_val = polys[j].R.evaluate(m)
        term = half_z ** (2 * j) * r_val * half_s ** (n - j) * coeff
        lhs = lhs + term
    rhs = series_moment(n, ctx)
    return _report("theorem3", n, k_token or str(ctx.k), ctx.digits, lhs, rhs)


def verify_romik11(n: int, digits: int = DEFAULT_DIGITS) -> VerificationReport:
    """Lemniscatic special case: the order-2n moment at k = 1/sqrt2 equals
    (4 pi)^(-n) sum_j (2n)!/(2^(n-2j) (4j)! (n-2j)!) d(j) Omega^j with
    Omega = Gamma(1/4)^8 / (32 pi^4).

    The pi exponent is forced: Omega = 4 Phi with Phi = 4 pi^2 kappa_4 =
    Gamma(1/4)^8/(2^7 pi^4), and only this value makes the n >= 2 cells
    close (a pi^8 variant misses by ~0.06 already at n = 2).
    """
    if n < 0:
        raise DomainError("index must be >= 0")
    ctx = make_context(hpf(Fraction(1, 2), digits).sqrt(), digits)
    lhs = series_moment(n, ctx)
    g = gamma_quarter(digits)
    pi_h = pi(digits)
    omega = g ** 8 / (pi_h ** 4 * 32)
    d = [1] + (d_sequence(n // 2) if n >= 2 else [])
    rhs = hpf(0, digits)
    for j in range(n // 2 + 1):
        coeff = Fraction(
            math.factorial(2 * n),
            2 ** (n - 2 * j) * math.factorial(4 * j) * math.factorial(n - 2 * j),
        )
        rhs = rhs + omega ** j * d[j] * coeff
    rhs = rhs / (pi_h * 4) ** n
    return _report("romik_eq11", n, LEMNISCATIC_TOKEN, digits, lhs, rhs)


def verify_variance_symmetry(k, digits: int = DEFAULT_DIGITS, k_token: str = "") -> VerificationReport:
    """Dual-modulus variance relation:
    sigma^2(k)/K^2 + sigma^2(k')/K'^2 = 1/(2 pi K K')."""
    ctx = make_context(k, digits)
    dual = make_context(ctx.kprime, digits)
    lhs = ctx.sigma2 / (ctx.K * ctx.K) + dual.sigma2 / (dual.K * dual.K)
    rhs = 1 / (2 * pi(digits) * ctx.K * dual.K)
    return _report("variance_symmetry", None, k_token or str(ctx.k), digits, lhs, rhs)


def verify_lambert_schett(n: int, ctx: ModulusContext, k_token: str = "") -> VerificationReport:
    """Series cumulant against the exact graded polynomial, n >= 2."""
    if n < 2:
        raise DomainError("polynomial cumulants start at n = 2")
    lhs = cumulant_lambert(n, ctx)
    rhs = cumulant_poly(n).evaluate(ctx)
    return _report("lambert_schett", n, k_token or str(ctx.k), ctx.digits, lhs, rhs)


def verify_jacobi_transform(c_token: str, digits: int = DEFAULT_DIGITS) -> VerificationReport:
    """Modular transformation theta3(e^(-pi/c)) = sqrt(c) theta3(e^(-pi c))."""
    c = hpf(c_token, digits)
    pi_h = pi(digits)
    lhs = theta0(3, (-(pi_h / c)).exp())
    rhs = c.sqrt() * theta0(3, (-(pi_h * c)).exp())
    report = _report("jacobi_transform", None, c_token, digits, lhs, rhs)
    # jacobi_transform_residual is the library entry point; assert both agree
    direct = jacobi_transform_residual(c)
    if abs(direct - abs(lhs - rhs)) > suite_tolerance(digits):
        raise AssertionError("residual helper disagrees with the report")
    return report


def verify_legendre(k, digits: int = DEFAULT_DIGITS, k_token: str = "") -> VerificationReport:
    """Legendre relation K E' + K' E - K K' = pi/2."""
    ctx = make_context(k, digits)
    lhs = ctx.K * ctx.Eprime + ctx.Kprime * ctx.E - ctx.K * ctx.Kprime
    rhs = pi(digits) / 2
    return _report("legendre", None, k_token or str(ctx.k), digits, lhs, rhs)


def verify_dual_moment_relation(n: int, k, digits: int = DEFAULT_DIGITS, k_token: str = "") -> VerificationReport:
    """Dual-modulus moment relation:
    mu_{2n}(k') = sum_j C(2n,2j) ((2n-2j)!/(n-j)!) (-1)^j (K'/K)^(2j)
                  (delta^2/2)^(n-j) mu_{2j}(k)
    with delta^2 = sigma^2(k') + (K'/K)^2 sigma^2(k) = K'/(2 pi K).

    The (-1)^j factor is the real value of the even power (i K'/K)^(2j); no
    complex arithmetic is involved.  A difference form of delta^2 fails the
    relation already at n = 1 and is deliberately not implemented.
    """
    if n < 0:
        raise DomainError("index must be >= 0")
    ctx = make_context(k, digits)
    dual = make_context(ctx.kprime, digits)
    lhs = series_moment(n, dual)
    delta2 = dual.sigma2 + ctx.c * ctx.c * ctx.sigma2
    rhs = hpf(0, digits)
    for j in range(n + 1):
        coeff = binomial(2 * n, 2 * j) * Fraction(
            math.factorial(2 * n - 2 * j), math.factorial(n - j)
        )
        sign = 1 if j % 2 == 0 else -1
        term = (
            (ctx.c ** (2 * j))
            * (delta2 / 2) ** (n - j)
            * series_moment(j, ctx)
            * (coeff * sign)
        )
        rhs = rhs + term
    return _report("dual_moment_relation", n, k_token or str(ctx.k), digits, lhs, rhs)


def dual_delta_identity_residual(k, digits: int = DEFAULT_DIGITS) -> HPFloat:
    """Residual of delta^2 = K'/(2 pi K), the closed form the variance
    symmetry forces for the dual-moment convolution variance."""
    ctx = make_context(k, digits)
    dual = make_context(ctx.kprime, digits)
    delta2 = dual.sigma2 + ctx.c * ctx.c * ctx.sigma2
    closed = ctx.Kprime / (2 * pi(digits) * ctx.K)
    return abs(delta2 - closed)


def verify_phi_consistency(digits: int = DEFAULT_DIGITS) -> VerificationReport:
    """Consistency of the two lemniscatic fourth-cumulant constants:
    4 pi^2 kappa_4 = pi^2 theta3(e^-pi)^8 / 8, with kappa_4 from the series
    and theta3 from its own series."""
    ctx = make_context(hpf(Fraction(1, 2), digits).sqrt(), digits)
    pi_h = pi(digits)
    lhs = 4 * pi_h * pi_h * cumulant_lambert(2, ctx)
    rhs = pi_h * pi_h * theta0(3, ctx.q) ** 8 / 8
    return _report("phi_consistency", None, LEMNISCATIC_TOKEN, digits, lhs, rhs)


# ---------------------------------------------------------------------------
# Suite runner
# ---------------------------------------------------------------------------

DEFAULT_KS = ("0.3", LEMNISCATIC_TOKEN, "0.9")
DEFAULT_CS = ("0.37", "1", "2", "5")

Cell = tuple[str, int | None, str]


def default_grid(nmax: int = 8, ks: tuple[str, ...] = DEFAULT_KS) -> list[Cell]:
    """The deterministic default verification grid."""
    cells: list[Cell] = []
    for k in ks:
        for n in range(nmax + 1):
            cells.append(("theorem1", n, k))
    for k in ks:
        for n in range(nmax + 1):
            cells.append(("theorem3", n, k))
    for n in range(nmax + 1):
        cells.append(("romik_eq11", n, LEMNISCATIC_TOKEN))
    for k in ks:
        for n in range(2, nmax + 1):
            cells.append(("lambert_schett", n, k))
    for c in DEFAULT_CS:
        cells.append(("jacobi_transform", None, c))
    for k in ks:
        cells.append(("legendre", None, k))
    for k in ks:
        cells.append(("variance_symmetry", None, k))
    return cells


def run_suite(cells: Iterable[Cell], digits: int = DEFAULT_DIGITS) -> list[VerificationReport]:
    """Run every cell in order; failures and domain errors are recorded in
    the report stream, never raised."""
    reports: list[VerificationReport] = []
    contexts: dict[str, ModulusContext] = {}

    def ctx_for(token: str) -> ModulusContext:
        if token not in contexts:
            contexts[token] = make_context(parse_modulus(token, digits), digits)
        return contexts[token]

    for identity, n, token in cells:
        try:
            if identity == "theorem1":
                report = verify_theorem1(n, ctx_for(token), token)
            elif identity == "theorem3":
                report = verify_theorem3(n, ctx_for(token), token)
            elif identity == "romik_eq11":
                report = verify_romik11(n, digits)
            elif identity == "lambert_schett":
                report = verify_lambert_schett(n, ctx_for(token), token)
            elif identity == "jacobi_transform":
                report = verify_jacobi_transform(token, digits)
            elif identity == "legendre":
                report = verify_legendre(parse_modulus(token, digits), digits, token)
            elif identity == "variance_symmetry":
                report = verify_variance_symmetry(parse_modulus(token, digits), digits, token)
            elif identity == "dual_moment_relation":
                report = verify_dual_moment_relation(n, parse_modulus(token, digits), digits, token)
            elif identity == "phi_consistency":
                report = verify_phi_consistency(digits)
            else:
                raise DomainError(f"unknown identity {identity!r}")
        except (DomainError, ValueError) as exc:
            report = VerificationReport(
                identity=identity,
                n=n,
                k=token,
                digits=digits,
                lhs=None,
                rhs=None,
                residual=None,
                tolerance=None,
                passed=False,
                error=str(exc),
            )
        reports.append(report)
    return reports
