"""Infinitely divisible laws: log-characteristic functions, Khintchine pairs
``[a, m]``, Levy triples ``[b, sigma^2, M]`` and the catalogue of hyperbolic,
Laplace and background-driving laws.

Densities are vectorised over ``numpy`` arrays.  Every catalogued density has
a finite limit at the origin and returns it there, because quadrature nodes
can land arbitrarily close to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from . import quad
from .closedforms import CLOSED_FORM_TEXT, CLOSED_FORMS, VoiculescuFn
from .quad import DEFAULT_CONFIG, QuadConfig

__all__ = [
    "UnknownDistribution",
    "LogCharFn",
    "FiniteMeasure",
    "KhintchinePair",
    "LevyTriple",
    "CatalogEntry",
    "CATALOG_NAMES",
    "khintchine_to_levy",
    "levy_to_khintchine",
    "levy_exponent",
    "bdcf_log_cf",
    "check_levy_decay",
    "catalog_lookup",
]

Density = Callable[[np.ndarray], np.ndarray]

_PI = math.pi
_LN2 = math.log(2.0)
_SMALL = 1e-6


class UnknownDistribution(LookupError):
    """Name is not in the catalogue."""


@dataclass(frozen=True)
class LogCharFn:
    """``t -> log phi(t)`` on the continuous branch with ``log phi(0) = 0``."""

    eval: Callable[[np.ndarray], np.ndarray]
    symmetric: bool = False

    def __call__(self, t):
        scalar = np.ndim(t) == 0
        out = self.eval(np.atleast_1d(np.asarray(t, dtype=float)))
        return out[0] if scalar else out


@dataclass(frozen=True)
class FiniteMeasure:
    """Khintchine measure: an atom at 0 plus a density on the punctured line."""

    atom_at_zero: float = 0.0
    density: Optional[Density] = None
    even: bool = True
    mass_hint: Optional[float] = None

    def __post_init__(self):
        if self.atom_at_zero < 0:
            raise ValueError("atom at zero must be nonnegative")

    def pdf(self, x):
        if self.density is None:
            return np.zeros_like(np.asarray(x, dtype=float))
        return self.density(np.asarray(x, dtype=float))

    def total_mass(self, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
        if self.density is None:
            return self.atom_at_zero
        mass = quad.measure_integral(self.density, np.ones_like, self.even, cfg)
        return self.atom_at_zero + mass.real


@dataclass(frozen=True)
class KhintchinePair:
    a: float
    m: FiniteMeasure = field(default_factory=FiniteMeasure)


@dataclass(frozen=True)
class LevyTriple:
    """``[b, sigma^2, M]``.

    ``origin_limit`` is ``lim_{x->0} x^2 M(x)``; it lets the Khintchine
    density be evaluated at the origin without a 0/0.
    """

    b: float
    sigma2: float = 0.0
    levy_density: Optional[Density] = None
    even: bool = True
    origin_limit: float = 0.0

    def __post_init__(self):
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be nonnegative")

    def integrability(self, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
        """``int min(1, x^2) M(dx)``, finite for a genuine Levy measure."""
        if self.levy_density is None:
            return 0.0
        return quad.measure_integral(
            self.levy_density, lambda x: np.minimum(1.0, x * x), self.even, cfg
        ).real


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    log_cf: LogCharFn
    pair: KhintchinePair
    levy: LevyTriple
    closed_v: Optional[VoiculescuFn] = None
    bdcf_of: Optional[str] = None
    formulas: dict = field(default_factory=dict)

    @property
    def bdcf(self) -> Optional[str]:
        """Name of this law's background driving entry, if catalogued."""
        child = f"bdcf-{self.name}"
        return child if child in CATALOG_NAMES else None

    def metadata(self) -> dict:
        return {
            "name": self.name,
            "symmetric": self.log_cf.symmetric,
            "a": self.pair.a,
            "atom_at_zero": self.pair.m.atom_at_zero,
            "mass": self.pair.m.mass_hint,
            "bdcf_of": self.bdcf_of,
            "bdcf": self.bdcf,
            "formulas": dict(self.formulas),
        }


# -- conversions -------------------------------------------------------------


def _correction_kernel(x):
    return x * ((np.abs(x) <= 1.0) - 1.0 / (1.0 + x * x))


def khintchine_to_levy(p: KhintchinePair, cfg: QuadConfig = DEFAULT_CONFIG) -> LevyTriple:
    """``M(dx) = (1+x^2)/x^2 m(dx)``, ``sigma^2 = m({0})`` and the shifted drift."""
    dens = p.m.density
    if dens is None:
        return LevyTriple(b=p.a, sigma2=p.m.atom_at_zero)

    def levy_density(x):
        x = np.asarray(x, dtype=float)
        return (1.0 + x * x) / (x * x) * dens(x)

    origin = float(dens(np.array([0.0]))[0])
    if p.m.even:
        b = p.a
    else:
        b = p.a + quad.measure_integral(levy_density, _correction_kernel, False, cfg).real
    return LevyTriple(b, p.m.atom_at_zero, levy_density, p.m.even, origin)


def levy_to_khintchine(tr: LevyTriple, cfg: QuadConfig = DEFAULT_CONFIG) -> KhintchinePair:
    """Inverse of :func:`khintchine_to_levy`: ``m(dx) = x^2/(1+x^2) M(dx)``."""
    lev = tr.levy_density
    if lev is None:
        return KhintchinePair(tr.b, FiniteMeasure(atom_at_zero=tr.sigma2))

    origin = tr.origin_limit

    def density(x):
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        zero = x == 0.0
        nz = ~zero
        out[nz] = x[nz] ** 2 / (1.0 + x[nz] ** 2) * lev(x[nz])
        out[zero] = origin
        return out

    if tr.even:
        a = tr.b
    else:
        a = tr.b - quad.measure_integral(lev, _correction_kernel, False, cfg).real
    return KhintchinePair(a, FiniteMeasure(tr.sigma2, density, tr.even))


def _exponent_kernels(t: float):
    def real_part(x):
        # (cos tx - 1)(1 + x^2)/x^2 without cancellation near 0
        s = np.sin(0.5 * t * x)
        safe = np.where(x == 0.0, 1.0, x)
        return np.where(x == 0.0, -0.5 * t * t, -2.0 * s * s * (1.0 + x * x) / (safe * safe))

    def imag_part(x):
        # ((1 + x^2) sin tx - tx)/x^2 = (sin tx - tx)/x^2 + sin tx
        tx = t * x
        safe = np.where(x == 0.0, 1.0, x)
        small = np.abs(tx) < 1e-3
        head = np.where(
            small,
            t * t * t * x * (-1.0 / 6.0 + tx * tx / 120.0),
            (np.sin(tx) - tx) / (safe * safe),
        )
        return head + np.sin(tx)

    return real_part, imag_part


def levy_exponent(p: KhintchinePair, t: float, cfg: QuadConfig = DEFAULT_CONFIG) -> complex:
    """Khintchine exponent ``ita + int (e^{itx} - 1 - itx/(1+x^2)) (1+x^2)/x^2 m(dx)``.

    The atom at the origin contributes ``-t^2 m({0})/2``.  For an even ``m``
    the imaginary part vanishes analytically and is not integrated.
    """
    t = float(t)
    value = complex(-0.5 * t * t * p.m.atom_at_zero, t * p.a)
    if p.m.density is None or t == 0.0:
        return value
    re_k, im_k = _exponent_kernels(t)
    value += quad.measure_integral(p.m.density, re_k, p.m.even, cfg).real
    if not p.m.even:
        value += 1j * quad.measure_integral(p.m.density, im_k, False, cfg).real
    return value


# 5-point central difference weights for the first derivative
_FD5 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0


def bdcf_log_cf(phi: LogCharFn, t: float, h: float = 1e-3) -> complex:
    """Background driving exponent ``t d/dt log phi(t)`` by finite differences."""
    t = float(t)
    if t == 0.0:
        raise ValueError("t must be nonzero")
    step = h * max(1.0, abs(t))
    nodes = t + step * np.arange(-2.0, 3.0)
    vals = np.asarray(phi(nodes), dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise quad.NonFinite(f"log characteristic function not finite near t = {t}")
    return complex(t * (vals @ _FD5) / step)


def check_levy_decay(
    phi: LogCharFn, c1: float, c2: float, t_grid: Sequence[float]
) -> list[float]:
    """``t^c1 exp(-c2 t) |Phi(t)|`` on ``t_grid``; tends to zero for any Levy exponent."""
    t = np.asarray(t_grid, dtype=float)
    mag = np.abs(np.asarray(phi(t), dtype=complex))
    return [float(v) for v in np.exp(c1 * np.log(t) - c2 * t) * mag]


# -- catalogue ---------------------------------------------------------------
#
# All densities are written with decaying exponentials so large |x| or t
# never overflows.


def _origin(u, value, fn):
    out = np.empty_like(u)
    small = u < _SMALL
    out[small] = value
    big = ~small
    out[big] = fn(u[big])
    return out


def _log_cosh(t):
    u = np.abs(t)
    return u + np.log1p(np.exp(-2.0 * u)) - _LN2


def _log_sinh_over_t(t):
    u = np.abs(t)
    return _origin(
        u, 0.0, lambda v: v + np.log(-np.expm1(-2.0 * v)) - _LN2 - np.log(v)
    ) + np.where(u < _SMALL, u * u / 6.0, 0.0)


def _log_tanh_over_t(t):
    u = np.abs(t)
    return _origin(
        u, 0.0, lambda v: np.log(-np.expm1(-2.0 * v)) - np.log1p(np.exp(-2.0 * v)) - np.log(v)
    ) - np.where(u < _SMALL, u * u / 3.0, 0.0)


def _lcf_cosh(t):
    return -_log_cosh(t)


def _lcf_sinh(t):
    return -_log_sinh_over_t(t)


def _lcf_tanh(t):
    return _log_tanh_over_t(t)


def _lcf_laplace(t):
    return -np.log1p(t * t)


def _coth_minus(u):
    # u coth u, with the origin handled by the caller
    e = np.exp(-2.0 * u)
    return u * (1.0 + e) / (-np.expm1(-2.0 * u))


def _lcf_bdcf_cosh(t):
    return -t * np.tanh(t)


def _lcf_bdcf_sinh(t):
    u = np.abs(t)
    return _origin(u, 0.0, lambda v: 1.0 - _coth_minus(v)) - np.where(u < _SMALL, u * u / 3.0, 0.0)


def _lcf_bdcf_tanh(t):
    u = np.abs(t)

    def body(v):
        return 4.0 * v * np.exp(-2.0 * v) / (-np.expm1(-4.0 * v)) - 1.0

    return _origin(u, 0.0, body) - np.where(u < _SMALL, 2.0 * u * u / 3.0, 0.0)


def _lcf_bdcf_laplace(t):
    return -2.0 * t * t / (1.0 + t * t)


def _m_cosh(x):
    u = np.abs(x)

    def body(v):
        a = 0.5 * _PI * v
        return v * np.exp(-a) / ((1.0 + v * v) * -np.expm1(-2.0 * a))

    return _origin(u, 1.0 / _PI, body)


def _m_sinh(x):
    u = np.abs(x)

    def body(v):
        return v * np.exp(-_PI * v) / ((1.0 + v * v) * -np.expm1(-_PI * v))

    return _origin(u, 1.0 / _PI, body)


def m_sinh_as_printed(x):
    """``m_S`` density written as ``(|x|/2(1+x^2)) e^{-pi|x|/2} / sinh(pi|x|/2)``."""
    u = np.abs(np.asarray(x, dtype=float))
    a = 0.5 * _PI * u
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return 0.5 * u / (1.0 + u * u) * np.exp(-a) / np.sinh(a)


def _m_tanh(x):
    u = np.abs(x)
    e = np.exp(-0.5 * _PI * u)
    return u / (1.0 + u * u) * e / (1.0 + e)


def _m_laplace(x):
    u = np.abs(x)
    return u * np.exp(-u) / (1.0 + u * u)


def _n_cosh(x):
    u = np.abs(x)
    a = 0.5 * _PI * u
    e2 = np.exp(-2.0 * a)
    return 0.5 * _PI * np.exp(-a) * (1.0 + e2) / np.expm1(-2.0 * a) ** 2


def _n_sinh(x):
    u = np.abs(x)
    a = 0.5 * _PI * u
    return _PI * np.exp(-2.0 * a) / np.expm1(-2.0 * a) ** 2


def _n_tanh(x):
    u = np.abs(x)
    e = np.exp(-0.5 * _PI * u)
    return 0.5 * _PI * e / (1.0 + e) ** 2


def _n_laplace(x):
    return np.exp(-np.abs(x))


# name -> (log_cf, khintchine density or None, levy density or None, origin
# limit of x^2 M(x), bdcf_of, text formulas)
_SPECS = {
    "cosh": (
        _lcf_cosh, _m_cosh, None, None, None,
        {"log_cf": "-ln cosh t",
         "m_density": "(1/2)|x| / ((1+x^2) sinh(pi|x|/2))",
         "levy_density": "1 / (2|x| sinh(pi|x|/2))"},
    ),
    "sinh": (
        _lcf_sinh, _m_sinh, None, None, None,
        {"log_cf": "ln(t / sinh t)",
         "m_density": "|x| / ((1+x^2)(e^{pi|x|} - 1))",
         "levy_density": "e^{-pi|x|/2} / (2|x| sinh(pi|x|/2))"},
    ),
    "tanh": (
        _lcf_tanh, _m_tanh, None, None, None,
        {"log_cf": "ln(tanh t / t)",
         "m_density": "(1/2)(|x|/(1+x^2)) e^{-pi|x|/4} / cosh(pi|x|/4)",
         "levy_density": "e^{-pi|x|/4} / (2|x| cosh(pi|x|/4))"},
    ),
    "laplace": (
        _lcf_laplace, _m_laplace, None, None, None,
        {"log_cf": "-ln(1 + t^2)",
         "m_density": "|x| e^{-|x|} / (1+x^2)",
         "levy_density": "e^{-|x|} / |x|"},
    ),
    "bdcf-cosh": (
        _lcf_bdcf_cosh, None, _n_cosh, 1.0 / _PI, "cosh",
        {"log_cf": "-t tanh t",
         "m_density": "(x^2/(1+x^2)) (pi/4) cosh(pi x/2) / sinh^2(pi x/2)",
         "levy_density": "(pi/4) cosh(pi x/2) / sinh^2(pi x/2)"},
    ),
    "bdcf-sinh": (
        _lcf_bdcf_sinh, None, _n_sinh, 1.0 / _PI, "sinh",
        {"log_cf": "1 - t coth t",
         "m_density": "(x^2/(1+x^2)) (pi/4) / sinh^2(pi x/2)",
         "levy_density": "(pi/4) / sinh^2(pi x/2)"},
    ),
    "bdcf-tanh": (
        _lcf_bdcf_tanh, None, _n_tanh, 0.0, "tanh",
        {"log_cf": "2t / sinh(2t) - 1",
         "m_density": "(x^2/(1+x^2)) (pi/8) / cosh^2(pi x/4)",
         "levy_density": "(pi/8) / cosh^2(pi x/4)"},
    ),
    "bdcf-laplace": (
        _lcf_bdcf_laplace, None, _n_laplace, 0.0, "laplace",
        {"log_cf": "-2t^2 / (1 + t^2)",
         "m_density": "(x^2/(1+x^2)) e^{-|x|}",
         "levy_density": "e^{-|x|}"},
    ),
}

CATALOG_NAMES = tuple(_SPECS)


@lru_cache(maxsize=None)
def catalog_lookup(name: str) -> CatalogEntry:
    """Return the immutable catalogue entry for ``name``."""
    try:
        lcf, m_dens, n_dens, origin, parent, text = _SPECS[name]
    except KeyError:
        raise UnknownDistribution(
            f"unknown distribution {name!r}; known: {', '.join(CATALOG_NAMES)}"
        ) from None

    closed = CLOSED_FORMS.get(name)
    # every entry is symmetric with no atom, so V(i) = -i m(R)
    mass = -closed(1.0).imag if closed is not None else None
    if m_dens is not None:
        pair = KhintchinePair(0.0, FiniteMeasure(0.0, m_dens, True, mass))
        levy = khintchine_to_levy(pair)
    else:
        levy = LevyTriple(0.0, 0.0, n_dens, True, origin)
        converted = levy_to_khintchine(levy)
        pair = KhintchinePair(converted.a, FiniteMeasure(0.0, converted.m.density, True, mass))

    formulas = dict(text)
    if closed is not None:
        formulas["closed_v"] = CLOSED_FORM_TEXT[name]
    return CatalogEntry(
        name=name,
        log_cf=LogCharFn(lcf, symmetric=True),
        pair=pair,
        levy=levy,
        closed_v=VoiculescuFn(closed, "closed") if closed is not None else None,
        bdcf_of=parent,
        formulas=formulas,
    )
