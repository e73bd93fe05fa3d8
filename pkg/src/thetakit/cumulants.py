"""Cumulants of the theta-weighted integer distribution.

Three independent routes to the same quantities:

  exact    kappa_{2n} = (-1)^(n-1) (z/2)^(2n) P_{2n-2}(m), where P_{2p} is
           the binomial self-convolution of reduced Schett evaluations;
  lambert  kappa_{2n} = sum_{r>=1} (-1)^(r-1) r^(2n-1) / sinh(c r pi);
  lattice  kappa_{2n} from a double sum over odd pairs (an Eisenstein-type
           series), absolutely convergent for 2n >= 4.

The exact route carries no transcendental factor: the grade index n implies
(z/2)^(2n), so CumulantPoly values live wholly in Z[m].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import mp

from .exactalg import UniPoly, binomial, schett_reduced
from .numkernel import (
    DEFAULT_DIGITS,
    DomainError,
    HPFloat,
    ModulusContext,
    hpf,
    make_context,
)

__all__ = [
    "CumulantPoly",
    "EisensteinValue",
    "p_poly",
    "cumulant_poly",
    "cumulant_lambert",
    "cumulant_value",
    "cumulant_eisenstein",
    "symmetry_check_P",
    "cumulant_symmetry_residual",
]

_GUARD = 10


@dataclass(frozen=True)
class CumulantPoly:
    """Exact cumulant of order 2n in graded form.

    kappa_{2n}(k) = sign * (z/2)^(2n) * P(m) with sign = (-1)^(n-1) and
    P = P_{2n-2}.  P is divisible by m(1-m) for n >= 2.
    """

    n: int
    P: UniPoly
    sign: int

    @property
    def coefficient(self) -> UniPoly:
        """The signed grade coefficient: kappa_{2n} = (z/2)^(2n) * coefficient(m)."""
        return self.P * self.sign

    def evaluate(self, ctx: ModulusContext) -> HPFloat:
        """Numeric cumulant kappa_{2n} at the context's modulus."""
        m = ctx.k * ctx.k
        half_z = ctx.z / 2
        return half_z ** (2 * self.n) * (self.coefficient.evaluate(m))


_p_memo: dict[int, UniPoly] = {}


def p_poly(p: int) -> UniPoly:
    """The self-convolution polynomial P_{2p}(m).

    P_{2p} = -m(1-m) * sum_{n=0}^{p-1} C(2p, 2n+1) S_n(m) S_{p-1-n}(m),
    the -m(1-m) factor being the product of the two stripped i*k*k'
    prefactors.  P_0 is the zero polynomial.
    """
    if p < 0:
        raise ValueError("index must be >= 0")
    if p == 0:
        return UniPoly.zero()
    cached = _p_memo.get(p)
    if cached is not None:
        return cached
    acc = UniPoly.zero()
    for n in range(p):
        acc = acc + schett_reduced(n) * schett_reduced(p - 1 - n) * binomial(2 * p, 2 * n + 1)
    prefactor = UniPoly.from_ints([0, -1, 1])  # -m(1-m) = m^2 - m
    result = prefactor * acc
    _p_memo[p] = result
    return result


def cumulant_poly(n: int) -> CumulantPoly:
    """Exact graded cumulant for order 2n, n >= 2.

    The order-2 cumulant is the variance, which is not polynomial in m and
    lives only in the numeric grade (ModulusContext.sigma2).
    """
    if n < 2:
        raise DomainError("exact cumulants start at order 4 (n >= 2)")
    sign = -1 if (n - 1) % 2 else 1
    return CumulantPoly(n=n, P=p_poly(n - 1), sign=sign)


def cumulant_lambert(n: int, ctx: ModulusContext) -> HPFloat:
    """Numeric kappa_{2n} by the alternating hyperbolic-sine series,
    truncated when a term falls below 10^(-digits-5)."""
    if n < 1:
        raise DomainError("cumulant order index must be >= 1")
    digits = ctx.digits
    with mp.workdps(digits + _GUARD):
        c = +ctx.c.value
        threshold = mp.mpf(10) ** (-digits - 5)
        total = mp.mpf(0)
        r = 1
        while True:
            term = mp.mpf(r) ** (2 * n - 1) / mp.sinh(c * r * mp.pi)
            total += -term if r % 2 == 0 else term
            if term < threshold:
                break
            r += 1
        return HPFloat(total, digits)


def cumulant_value(order: int, ctx: ModulusContext) -> HPFloat:
    """Numeric cumulant of any order: odd orders vanish identically."""
    if order < 1:
        raise DomainError("cumulant order must be >= 1")
    if order % 2:
        return hpf(0, ctx.digits)
    return cumulant_lambert(order // 2, ctx)


@dataclass(frozen=True)
class EisensteinValue:
    """A truncated lattice-sum cumulant and its crude tail estimate."""

    value: HPFloat
    tail: HPFloat


def cumulant_eisenstein(n: int, ctx: ModulusContext, lattice_cutoff: int) -> EisensteinValue:
    """kappa_{2n} as a truncated double sum over odd lattice pairs.

    The full-lattice form  (-1)^(n+1) (2n-1)!/pi^(2n) * sum over odd a, b
    of (a + i c b)^(-2n)  folds into the positive quadrant as
    4 * Re((a + i c b)^(-2n)); the quadrant is truncated at
    a, b <= 2*lattice_cutoff - 1.  Only n >= 2 is admitted: the 2n = 2 sum
    converges conditionally and would be ordering-dependent.

    The lattice is summed in float64 (numpy); its roundoff is orders of
    magnitude below the truncation tail O(cutoff^(2-2n)), which is what the
    returned tail field estimates.
    """
    if n < 2:
        raise DomainError("lattice-sum cumulants require n >= 2")
    if lattice_cutoff < 1:
        raise DomainError("lattice cutoff must be >= 1")
    digits = ctx.digits
    odd = np.arange(1, 2 * lattice_cutoff, 2, dtype=np.float64)
    c_f = float(ctx.c)
    total = 0.0
    chunk = 512
    for start in range(0, odd.size, chunk):
        a_block = odd[start : start + chunk, None]
        w = a_block + 1j * (c_f * odd[None, :])
        total += float(np.sum((w ** (-2 * n)).real))
    with mp.workdps(digits + _GUARD):
        sign = 1 if (n + 1) % 2 == 0 else -1
        prefactor = sign * 4 * mp.factorial(2 * n - 1) / mp.pi ** (2 * n)
        value = HPFloat(prefactor * mp.mpf(total), digits)
        # crude tail: odd-pair density 1/4, radial integral outside R
        c_mp = +ctx.c.value
        radius = (2 * lattice_cutoff - 1) * min(mp.mpf(1), c_mp)
        points = (mp.pi / (8 * c_mp)) * radius ** (2 - 2 * n) / (n - 1)
        tail = HPFloat(abs(prefactor) * points, digits)
    return EisensteinValue(value=value, tail=tail)


def symmetry_check_P(n: int) -> bool:
    """Exact check that P_{2n}(1 - m) = (-1)^(n-1) P_{2n}(m) in Z[m]."""
    if n < 1:
        raise ValueError("index must be >= 1")
    p = p_poly(n)
    flipped = p.compose_affine(-1, 1)
    expected = p if (n - 1) % 2 == 0 else -p
    return flipped == expected


def cumulant_symmetry_residual(n: int, k, digits: int | None = None) -> HPFloat:
    """Numeric residual of the dual-modulus cumulant relation
    kappa_{2n}(k') = (-1)^n (K'/K)^(2n) kappa_{2n}(k), both sides by the
    hyperbolic-sine series."""
    if n < 2:
        raise DomainError("dual-modulus relation applies for n >= 2")
    if digits is None:
        digits = k.digits if isinstance(k, HPFloat) else DEFAULT_DIGITS
    ctx = make_context(k, digits)
    dual = make_context(ctx.kprime, ctx.digits)
    lhs = cumulant_lambert(n, dual)
    ratio = ctx.c ** (2 * n)  # (K'/K)^(2n)
    sign = 1 if n % 2 == 0 else -1
    rhs = cumulant_lambert(n, ctx) * ratio * sign
    return abs(lhs - rhs)
