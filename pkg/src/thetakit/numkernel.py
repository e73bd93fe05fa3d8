"""Arbitrary-precision numeric kernel.

Provides the HPFloat scalar (an immutable wrapper around an mpmath value
carrying its decimal working precision), AGM-based complete elliptic
integrals, the nome, theta series with explicit tail bounds, Hermite
polynomial evaluation, and the per-modulus ModulusContext bundle.

Every primitive runs with guard digits so that its relative error stays
below 10^(2 - digits); all values are immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import mp

__all__ = [
    "DEFAULT_DIGITS",
    "DomainError",
    "HPFloat",
    "ModulusContext",
    "hpf",
    "pi",
    "pow10",
    "agm",
    "ellipK",
    "ellipK_series",
    "ellipE",
    "make_context",
    "lemniscatic_context",
    "theta",
    "theta0",
    "theta3_product",
    "jacobi_transform_residual",
    "hermite",
    "gamma_quarter",
]

DEFAULT_DIGITS = 50
_GUARD = 10  # extra working digits for every primitive

Scalar = Union["HPFloat", int, Fraction, str]


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


@dataclass(frozen=True, eq=False)
class HPFloat:
    """Immutable real scalar with a stated decimal working precision.

    Arithmetic between two HPFloat values is carried out at the larger of
    the two precisions (plus guard digits).  Exact inputs are accepted as
    int, Fraction, or decimal string; binary floats are rejected because
    they silently corrupt decimal intent.
    """

    value: object  # mpmath.mpf
    digits: int

    def __post_init__(self) -> None:
        if self.digits < 15:
            raise DomainError("precision must be at least 15 decimal digits")

    # -- construction helpers ------------------------------------------

    @staticmethod
    def from_int(i: int, digits: int = DEFAULT_DIGITS) -> "HPFloat":
        with mp.workdps(digits + _GUARD):
            return HPFloat(mp.mpf(i), digits)

    @staticmethod
    def from_fraction(f: Fraction, digits: int = DEFAULT_DIGITS) -> "HPFloat":
        with mp.workdps(digits + _GUARD):
            return HPFloat(mp.mpf(f.numerator) / mp.mpf(f.denominator), digits)

    @staticmethod
    def from_str(s: str, digits: int = DEFAULT_DIGITS) -> "HPFloat":
        with mp.workdps(digits + _GUARD):
            return HPFloat(mp.mpf(s), digits)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other: Scalar) -> "HPFloat":
        return other if isinstance(other, HPFloat) else hpf(other, self.digits)

    def _bin(self, other: Scalar, op) -> "HPFloat":
        rhs = self._coerce(other)
        digits = max(self.digits, rhs.digits)
        with mp.workdps(digits + _GUARD):
            return HPFloat(op(self.value, rhs.value), digits)

    def __add__(self, other: Scalar) -> "HPFloat":
        return self._bin(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "HPFloat":
        return self._bin(other, lambda a, b: a - b)

    def __rsub__(self, other: Scalar) -> "HPFloat":
        return self._bin(other, lambda a, b: b - a)

    def __mul__(self, other: Scalar) -> "HPFloat":
        return self._bin(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "HPFloat":
        return self._bin(other, lambda a, b: a / b)

    def __rtruediv__(self, other: Scalar) -> "HPFloat":
        return self._bin(other, lambda a, b: b / a)

    def __pow__(self, exponent: int) -> "HPFloat":
        if not isinstance(exponent, int):
            raise TypeError("HPFloat powers take integer exponents")
        with mp.workdps(self.digits + _GUARD):
            return HPFloat(self.value ** exponent, self.digits)

    def __neg__(self) -> "HPFloat":
        # negation rounds to the ambient mpmath precision, so wrap it too
        with mp.workdps(self.digits + _GUARD):
            return HPFloat(-self.value, self.digits)

    def __abs__(self) -> "HPFloat":
        with mp.workdps(self.digits + _GUARD):
            return HPFloat(abs(self.value), self.digits)

    # -- comparisons (by value, precision is not identity) ---------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (HPFloat, int, Fraction, str)):
            return self.value == self._coerce(other).value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __lt__(self, other: Scalar) -> bool:
        return self.value < self._coerce(other).value

    def __le__(self, other: Scalar) -> bool:
        return self.value <= self._coerce(other).value

    def __gt__(self, other: Scalar) -> bool:
        return self.value > self._coerce(other).value

    def __ge__(self, other: Scalar) -> bool:
        return self.value >= self._coerce(other).value

    # -- elementary functions --------------------------------------------

    def _unary(self, op) -> "HPFloat":
        with mp.workdps(self.digits + _GUARD):
            return HPFloat(op(self.value), self.digits)

    def sqrt(self) -> "HPFloat":
        if self.value < 0:
            raise DomainError("sqrt of a negative value")
        return self._unary(mp.sqrt)

    def exp(self) -> "HPFloat":
        return self._unary(mp.exp)

    def log(self) -> "HPFloat":
        if self.value <= 0:
            raise DomainError("log of a non-positive value")
        return self._unary(mp.log)

    def sinh(self) -> "HPFloat":
        return self._unary(mp.sinh)

    # -- conversions -------------------------------------------------------

    def to_decimal_string(self) -> str:
        return mp.nstr(self.value, self.digits)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return self.to_decimal_string()

    def __repr__(self) -> str:
        return f"HPFloat({self.to_decimal_string()!r}, digits={self.digits})"


def hpf(x: Scalar, digits: int = DEFAULT_DIGITS) -> HPFloat:
    """Build an HPFloat from an exact representation (never a float)."""
    if isinstance(x, HPFloat):
        if x.digits == digits:
            return x
        return HPFloat(x.value, digits)
    if isinstance(x, bool):
        raise TypeError("bool is not a numeric input")
    if isinstance(x, int):
        return HPFloat.from_int(x, digits)
    if isinstance(x, Fraction):
        return HPFloat.from_fraction(x, digits)
    if isinstance(x, str):
        return HPFloat.from_str(x, digits)
    if isinstance(x, float):
        raise TypeError("binary floats are ambiguous; pass a str, int or Fraction")
    raise TypeError(f"cannot build HPFloat from {type(x).__name__}")


def pi(digits: int = DEFAULT_DIGITS) -> HPFloat:
    with mp.workdps(digits + _GUARD):
        return HPFloat(+mp.pi, digits)


def pow10(exponent: int, digits: int = DEFAULT_DIGITS) -> HPFloat:
    """Exact power of ten as an HPFloat; handy for tolerances."""
    if exponent >= 0:
        return HPFloat.from_int(10 ** exponent, digits)
    return HPFloat.from_fraction(Fraction(1, 10 ** (-exponent)), digits)


# ---------------------------------------------------------------------------
# AGM and complete elliptic integrals
# ---------------------------------------------------------------------------


def agm(a: Scalar, b: Scalar, digits: int | None = None) -> HPFloat:
    """Arithmetic-geometric mean, iterated until |a_n - b_n| < 10^(1-digits)*a_n."""
    a_h = a if isinstance(a, HPFloat) else hpf(a, digits or DEFAULT_DIGITS)
    b_h = b if isinstance(b, HPFloat) else hpf(b, digits or a_h.digits)
    digits = digits or max(a_h.digits, b_h.digits)
    if a_h.value <= 0 or b_h.value <= 0:
        raise DomainError("agm requires positive inputs")
    with mp.workdps(digits + _GUARD):
        x, y = +a_h.value, +b_h.value
        eps = mp.mpf(10) ** (1 - digits)
        while abs(x - y) >= eps * x:
            x, y = (x + y) / 2, mp.sqrt(x * y)
        return HPFloat(x, digits)


def _require_modulus(k: HPFloat) -> None:
    if not (0 < k.value < 1):
        raise DomainError("elliptic modulus must satisfy 0 < k < 1")


def ellipK(k: HPFloat) -> HPFloat:
    """Complete elliptic integral of the first kind via pi/(2*agm(1, k'))."""
    _require_modulus(k)
    digits = k.digits
    with mp.workdps(digits + _GUARD):
        kp = mp.sqrt(1 - k.value * k.value)
        eps = mp.mpf(10) ** (1 - digits)
        x, y = mp.mpf(1), kp
        while abs(x - y) >= eps * x:
            x, y = (x + y) / 2, mp.sqrt(x * y)
        return HPFloat(mp.pi / (2 * x), digits)


def ellipK_series(k: HPFloat) -> HPFloat:
    """Slow cross-check for ellipK: the hypergeometric series
    (pi/2) * sum_n ((1/2)_n / n!)^2 m^n with m = k^2."""
    _require_modulus(k)
    digits = k.digits
    with mp.workdps(digits + _GUARD):
        m = k.value * k.value
        threshold = mp.mpf(10) ** (-digits - 5) * (1 - m)
        term = mp.mpf(1)
        total = mp.mpf(1)
        n = 0
        while term >= threshold:
            ratio = ((n + mp.mpf(1) / 2) / (n + 1)) ** 2 * m
            term = term * ratio
            total += term
            n += 1
        return HPFloat(mp.pi / 2 * total, digits)


def ellipE(k: HPFloat) -> HPFloat:
    """Complete elliptic integral of the second kind via the AGM companion
    sum E = K * (1 - sum_j 2^(j-1) c_j^2), c_0 = k, c_{j+1} = (a_j - b_j)/2."""
    _require_modulus(k)
    digits = k.digits
    with mp.workdps(digits + _GUARD):
        kp = mp.sqrt(1 - k.value * k.value)
        eps = mp.mpf(10) ** (-digits - 5)
        a_cur, b_cur = mp.mpf(1), kp
        c_cur = +k.value
        csum = mp.mpf(0)
        weight = mp.mpf(1) / 2  # 2^(j-1) at j = 0
        while True:
            csum += weight * c_cur * c_cur
            if c_cur < eps and abs(a_cur - b_cur) < eps * a_cur:
                break
            a_next = (a_cur + b_cur) / 2
            b_next = mp.sqrt(a_cur * b_cur)
            c_cur = (a_cur - b_cur) / 2
            a_cur, b_cur = a_next, b_next
            weight *= 2
        bigk = mp.pi / (2 * a_cur)
        return HPFloat(bigk * (1 - csum), digits)


# ---------------------------------------------------------------------------
# Theta series
# ---------------------------------------------------------------------------


def _require_nome(q: HPFloat) -> None:
    if not (0 < q.value < 1):
        raise DomainError("nome must satisfy 0 < q < 1")


def _theta_cutoff(qv, digits: int) -> int:
    # smallest N with q^(N^2) below the tail threshold 10^(-digits-5)
    with mp.workdps(digits + _GUARD):
        n = mp.sqrt((digits + 5) / (-mp.log10(qv)))
        return int(mp.ceil(n)) + 1


def theta(i: int, zarg: Scalar, q: HPFloat) -> HPFloat:
    """Theta function value theta_i(zarg, q) for real zarg, i in 1..4.

    Series are truncated at the first index N with q^(N^2) (or the
    half-integer analogue) below 10^(-digits-5); the geometric tail is then
    below the last retained term.
    """
    _require_nome(q)
    digits = q.digits
    z_h = zarg if isinstance(zarg, HPFloat) else hpf(zarg, digits)
    cutoff = _theta_cutoff(q.value, digits)
    with mp.workdps(digits + _GUARD):
        qv = +q.value
        zv = +z_h.value
        if i == 1:
            total = mp.mpf(0)
            for n in range(cutoff + 1):
                sign = -1 if n % 2 else 1
                total += sign * qv ** ((n + mp.mpf(1) / 2) ** 2) * mp.sin((2 * n + 1) * zv)
            return HPFloat(2 * total, digits)
        if i == 2:
            total = mp.mpf(0)
            for n in range(cutoff + 1):
                total += qv ** ((n + mp.mpf(1) / 2) ** 2) * mp.cos((2 * n + 1) * zv)
            return HPFloat(2 * total, digits)
        if i == 3:
            total = mp.mpf(1)
            for n in range(1, cutoff + 1):
                total += 2 * qv ** (n * n) * mp.cos(2 * n * zv)
            return HPFloat(total, digits)
        if i == 4:
            total = mp.mpf(1)
            for n in range(1, cutoff + 1):
                sign = -1 if n % 2 else 1
                total += 2 * sign * qv ** (n * n) * mp.cos(2 * n * zv)
            return HPFloat(total, digits)
    raise DomainError("theta index must be 1, 2, 3 or 4")


def theta0(i: int, q: HPFloat) -> HPFloat:
    """theta_i(0, q).  theta1 vanishes identically at 0."""
    _require_nome(q)
    digits = q.digits
    cutoff = _theta_cutoff(q.value, digits)
    with mp.workdps(digits + _GUARD):
        qv = +q.value
        if i == 1:
            return HPFloat(mp.mpf(0), digits)
        if i == 2:
            total = mp.mpf(0)
            for n in range(cutoff + 1):
                total += qv ** ((n + mp.mpf(1) / 2) ** 2)
            return HPFloat(2 * total, digits)
        if i == 3:
            total = mp.mpf(1)
            for n in range(1, cutoff + 1):
                total += 2 * qv ** (n * n)
            return HPFloat(total, digits)
        if i == 4:
            total = mp.mpf(1)
            for n in range(1, cutoff + 1):
                total += 2 * (-1 if n % 2 else 1) * qv ** (n * n)
            return HPFloat(total, digits)
    raise DomainError("theta index must be 1, 2, 3 or 4")


def theta3_product(q: HPFloat) -> HPFloat:
    """theta3 by its infinite product (q^2; q^2) (-q; q^2)^2, truncated when
    the running factor differs from 1 by less than the tail threshold."""
    _require_nome(q)
    digits = q.digits
    with mp.workdps(digits + _GUARD):
        qv = +q.value
        threshold = mp.mpf(10) ** (-digits - 5)
        total = mp.mpf(1)
        p = 1
        while True:
            even = qv ** (2 * p)
            odd = qv ** (2 * p - 1)
            total *= (1 - even) * (1 + odd) ** 2
            if 2 * odd < threshold:
                break
            p += 1
        return HPFloat(total, digits)


def jacobi_transform_residual(c: Scalar, digits: int = DEFAULT_DIGITS) -> HPFloat:
    """|theta3(e^(-pi/c)) - sqrt(c) * theta3(e^(-pi*c))|, which the modular
    transformation makes zero up to truncation error."""
    c_h = c if isinstance(c, HPFloat) else hpf(c, digits)
    if c_h.value <= 0:
        raise DomainError("transformation parameter must be positive")
    digits = c_h.digits
    pi_h = pi(digits)
    q_left = (-(pi_h / c_h)).exp()
    q_right = (-(pi_h * c_h)).exp()
    lhs = theta0(3, q_left)
    rhs = c_h.sqrt() * theta0(3, q_right)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Hermite values and the lemniscatic gamma constant
# ---------------------------------------------------------------------------


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n at x via the three-term recurrence
    H_0 = 1, H_1 = 2x, H_{n+1} = 2x H_n - 2n H_{n-1}.

    Generic over the scalar type of x (HPFloat, Fraction, int).
    """
    if n < 0:
        raise DomainError("Hermite index must be >= 0")
    h_prev = x ** 0  # multiplicative one of x's type
    if n == 0:
        return h_prev
    h_cur = 2 * x
    for j in range(1, n):
        h_prev, h_cur = h_cur, 2 * x * h_cur - (2 * j) * h_prev
    return h_cur


def gamma_quarter(digits: int = DEFAULT_DIGITS) -> HPFloat:
    """Gamma(1/4) obtained from the lemniscatic AGM only:
    K(1/sqrt2) = pi/(2*agm(1, 1/sqrt2)) and Gamma(1/4) = sqrt(4*sqrt(pi)*K)."""
    with mp.workdps(digits + _GUARD):
        eps = mp.mpf(10) ** (1 - digits)
        x, y = mp.mpf(1), mp.sqrt(mp.mpf(1) / 2)
        while abs(x - y) >= eps * x:
            x, y = (x + y) / 2, mp.sqrt(x * y)
        bigk = mp.pi / (2 * x)
        return HPFloat(mp.sqrt(4 * mp.sqrt(mp.pi) * bigk), digits)


# ---------------------------------------------------------------------------
# Per-modulus context
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModulusContext:
    """All numeric quantities attached to one elliptic modulus k.

    Fields: k, kprime = sqrt(1 - k^2), the four complete integrals K, E,
    Kprime, Eprime, the nome q = exp(-pi*c) with c = Kprime/K, the theta
    square z = (2/pi) K, and the variance sigma2 = (K^2/pi^2)(E/K - kprime^2).
    """

    k: HPFloat
    kprime: HPFloat
    K: HPFloat
    E: HPFloat
    Kprime: HPFloat
    Eprime: HPFloat
    q: HPFloat
    c: HPFloat
    z: HPFloat
    sigma2: HPFloat
    digits: int


def make_context(k: Scalar, digits: int = DEFAULT_DIGITS) -> ModulusContext:
    """Build the ModulusContext for modulus k at the requested precision."""
    k_h = hpf(k, digits)
    _require_modulus(k_h)
    kprime = (1 - k_h * k_h).sqrt()
    big_k = ellipK(k_h)
    big_e = ellipE(k_h)
    big_kp = ellipK(kprime)
    big_ep = ellipE(kprime)
    c = big_kp / big_k
    pi_h = pi(digits)
    q = (-(pi_h * c)).exp()
    z = big_k * 2 / pi_h
    sigma2 = (big_k * big_k / (pi_h * pi_h)) * (big_e / big_k - kprime * kprime)
    return ModulusContext(
        k=k_h,
        kprime=kprime,
        K=big_k,
        E=big_e,
        Kprime=big_kp,
        Eprime=big_ep,
        q=q,
        c=c,
        z=z,
        sigma2=sigma2,
        digits=digits,
    )


def lemniscatic_context(digits: int = DEFAULT_DIGITS) -> ModulusContext:
    """Context at the self-dual modulus k = 1/sqrt2 (where K = K', q = e^-pi)."""
    return make_context(hpf(Fraction(1, 2), digits).sqrt(), digits)
