"""Real-argument special functions: digamma, Hurwitz zeta at s=2, the
alternating-series beta function and its derivative, and the sine/cosine
integrals.

All functions take a positive real argument and return Python floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "EULER_GAMMA",
    "SpecFunResult",
    "SpecFunDomainError",
    "digamma",
    "hurwitz_zeta_2",
    "beta_fn",
    "beta_prime",
    "sici",
    "evaluate",
]

EULER_GAMMA = 0.57721566490153286060651209008240243

# B_{2k} / (2k) for k = 1..7, used by the digamma asymptotic series.
_DIGAMMA_ASYMP = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

# Bernoulli numbers B_2 .. B_14 for the Euler-Maclaurin tail of zeta(2, a).
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)

_DIGAMMA_SHIFT = 12.0
_ZETA_SHIFT = 10.0
_SICI_SWITCH = 4.0


class SpecFunDomainError(ValueError):
    """Raised when a special function is called outside its real domain."""


@dataclass(frozen=True)
class SpecFunResult:
    value: float
    est_error: float


def _check_positive(name: str, x: float) -> float:
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise SpecFunDomainError(f"{name} requires a finite argument > 0, got {x!r}")
    return x


def digamma(z: float) -> float:
    """Logarithmic derivative of the gamma function for ``z > 0``.

    Shifts the argument up to ``z >= 12`` with psi(z) = psi(z+1) - 1/z and
    finishes with the asymptotic expansion.
    """
    z = _check_positive("digamma", z)
    shift = []
    while z < _DIGAMMA_SHIFT:
        shift.append(1.0 / z)
        z += 1.0
    inv2 = 1.0 / (z * z)
    poly = 0.0
    for c in reversed(_DIGAMMA_ASYMP):
        poly = poly * inv2 + c
    tail = math.log(z) - 0.5 / z - poly * inv2
    if not shift:
        return tail
    return math.fsum([tail] + [-s for s in shift])


def hurwitz_zeta_2(a: float) -> float:
    """Hurwitz zeta function ``sum_{k>=0} (k+a)^-2`` (the trigamma function)."""
    a = _check_positive("hurwitz_zeta_2", a)
    head = []
    while a < _ZETA_SHIFT:
        head.append(1.0 / (a * a))
        a += 1.0
    inv = 1.0 / a
    inv2 = inv * inv
    poly = 0.0
    for b in reversed(_BERNOULLI):
        poly = poly * inv2 + b
    tail = inv + 0.5 * inv2 + poly * inv2 * inv
    return math.fsum(head + [tail])


def beta_fn(x: float) -> float:
    """``beta(x) = sum_k (-1)^k / (x+k) = [psi((x+1)/2) - psi(x/2)] / 2``."""
    x = _check_positive("beta_fn", x)
    return 0.5 * (digamma(0.5 * (x + 1.0)) - digamma(0.5 * x))


def beta_prime(x: float) -> float:
    """Derivative of :func:`beta_fn`, ``zeta(2, x) - zeta(2, x/2) / 2``.

    Note the sign: this equals ``-sum_k (-1)^k / (x+k)^2`` and is negative.
    """
    x = _check_positive("beta_prime", x)
    return hurwitz_zeta_2(x) - 0.5 * hurwitz_zeta_2(0.5 * x)


def _sici_series(x: float) -> tuple[float, float]:
    x2 = x * x
    # Si
    term = x
    si_sum = x
    k = 0
    while True:
        k += 1
        term *= -x2 / ((2 * k) * (2 * k + 1))
        contrib = term / (2 * k + 1)
        si_sum += contrib
        if abs(contrib) < 1e-18 * abs(si_sum):
            break
    # Ci - gamma - ln x
    term = 1.0
    ci_sum = 0.0
    k = 0
    while True:
        k += 1
        term *= -x2 / ((2 * k - 1) * (2 * k))
        contrib = term / (2 * k)
        ci_sum += contrib
        if abs(contrib) < 1e-18 * max(abs(ci_sum), 1e-300):
            break
    return si_sum, EULER_GAMMA + math.log(x) + ci_sum


def _sici_continued_fraction(x: float) -> tuple[float, float]:
    # Modified Lentz evaluation of E1(ix) = -Ci(x) + i(Si(x) - pi/2).
    tiny = 1e-300
    b = complex(1.0, x)
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(2, 100000):
        a = -float((i - 1) * (i - 1))
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta.real - 1.0) + abs(delta.imag) < 1e-16:
            break
    h *= complex(math.cos(x), -math.sin(x))
    return 0.5 * math.pi + h.imag, -h.real


def sici(x: float) -> tuple[float, float]:
    """Return ``(si(x), ci(x))`` where ``si(x) = Si(x) - pi/2``.

    Maclaurin series below ``x = 4``, complex continued fraction above.
    """
    x = _check_positive("sici", x)
    if x <= _SICI_SWITCH:
        big_si, ci = _sici_series(x)
    else:
        big_si, ci = _sici_continued_fraction(x)
    return big_si - 0.5 * math.pi, ci


def Si(x: float) -> float:
    return sici(x)[0] + 0.5 * math.pi


def Ci(x: float) -> float:
    return sici(x)[1]


_EPS = 2.220446049250313e-16

_FUNCTIONS = {
    "digamma": digamma,
    "hurwitz_zeta_2": hurwitz_zeta_2,
    "beta_fn": beta_fn,
    "beta_prime": beta_prime,
    "si": lambda x: sici(x)[0],
    "ci": lambda x: sici(x)[1],
}


def evaluate(name: str, x: float) -> SpecFunResult:
    """Evaluate a named function together with an a-priori error bound.

    The bound is a small multiple of machine epsilon scaled by the
    magnitudes that enter the final summation, which dominates the
    truncation error of every kernel here.
    """
    try:
        fn = _FUNCTIONS[name]
    except KeyError:
        raise KeyError(f"unknown special function {name!r}") from None
    value = fn(x)
    scale = max(1.0, abs(value), 1.0 / float(x))
    if name in ("hurwitz_zeta_2", "beta_prime"):
        scale = max(scale, 1.0 / float(x) ** 2)
    return SpecFunResult(value=value, est_error=32.0 * _EPS * scale)
