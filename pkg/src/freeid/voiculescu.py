"""Voiculescu transforms ``V(it)`` of free analogues of classical ID laws.

Two independent routes are provided: the Laplace transform of the
(conjugated) log-characteristic function, and kernel integration against
the Khintchine pair.  Background driving transforms follow from the
first-order ODE ``V_psi = V_phi - t V_phi'`` and its integral inverse.
"""

from __future__ import annotations

import numpy as np

from . import quad
from .closedforms import VoiculescuFn
from .measures import KhintchinePair, LogCharFn, catalog_lookup
from .quad import DEFAULT_CONFIG, QuadConfig

__all__ = [
    "VoiculescuFn",
    "NoClosedForm",
    "ROUTES",
    "MIN_T",
    "level_a",
    "level_z",
    "level_z_symmetric",
    "closed_form",
    "thm2_forward",
    "thm2_inverse",
    "corollary1_check",
    "transform_fn",
]

ROUTES = ("levelA", "levelZ", "symZ", "closed", "thm2")

# truncation lengths scale like 1/t; below this they stop being practical
MIN_T = 1e-3


class NoClosedForm(LookupError):
    """The catalogue entry has no closed-form transform."""


def _check_t(t: float) -> float:
    t = float(t)
    if not t >= MIN_T:
        raise ValueError(f"t must be >= {MIN_T}, got {t}")
    return t


def level_a(phi: LogCharFn, t: float, cfg: QuadConfig = DEFAULT_CONFIG) -> complex:
    """``i t^2 int_0^inf conj(log phi(s)) e^{-ts} ds``."""
    t = _check_t(t)

    def g(s):
        return np.conj(phi(s))

    return 1j * t * t * quad.laplace_transform(g, t, cfg)


def _z_kernel(t: float):
    t2 = t * t

    def kernel(x):
        # (1 + itx)/(it - x) split into real and imaginary parts
        return (x * (t2 - 1.0) - 1j * t * (1.0 + x * x)) / (t2 + x * x)

    return kernel


def level_z(p: KhintchinePair, t: float, cfg: QuadConfig = DEFAULT_CONFIG) -> complex:
    """``a + int (1 + itx)/(it - x) m(dx)``; an atom at 0 contributes ``-i m({0})/t``."""
    t = _check_t(t)
    value = complex(p.a) - 1j * p.m.atom_at_zero / t
    if p.m.density is not None:
        value += quad.measure_integral(p.m.density, _z_kernel(t), p.m.even, cfg)
    return value


def level_z_symmetric(p: KhintchinePair, t: float, cfg: QuadConfig = DEFAULT_CONFIG) -> complex:
    """``-it int (1+x^2)/(t^2+x^2) m(dx)`` for a symmetric pair ``[0, m]``."""
    if p.a != 0.0 or not p.m.even:
        raise ValueError("level_z_symmetric needs a = 0 and an even measure")
    t = _check_t(t)
    t2 = t * t
    mass = p.m.atom_at_zero / t2
    if p.m.density is not None:
        mass += quad.measure_integral(
            p.m.density, lambda x: (1.0 + x * x) / (t2 + x * x), True, cfg
        ).real
    return -1j * t * mass


def closed_form(name: str, t: float) -> complex:
    entry = catalog_lookup(name)
    if entry.closed_v is None:
        raise NoClosedForm(f"{name!r} has no closed-form Voiculescu transform")
    if not float(t) > 0:
        raise ValueError(f"t must be positive, got {t}")
    return entry.closed_v(float(t))


def _derivative(v: VoiculescuFn, t: float, h: float) -> complex:
    def d5(step):
        f = [v(t + k * step) for k in (-2, -1, 1, 2)]
        return (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * step)

    step = h * t
    # one Richardson pass removes the O(step^4) term
    return (16.0 * d5(step) - d5(2.0 * step)) / 15.0


def thm2_forward(v: VoiculescuFn, t: float, h: float = 1e-4) -> complex:
    """Background driving transform ``V(it) - t dV(it)/dt``."""
    t = float(t)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not 2.0 * h < 0.5:
        raise ValueError("relative step must be below 1/4")
    value = v(t) - t * _derivative(v, t, h)
    if not np.isfinite(value):
        raise quad.NonFinite(f"transform not finite near t = {t}")
    return value


def thm2_inverse(
    v_psi: VoiculescuFn,
    v_at_1: complex,
    t: float,
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> complex:
    """Recover ``V_phi(it) = t V_phi(i) - t int_1^t s^-2 V_psi(is) ds``."""
    t = float(t)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if t == 1.0:
        return complex(v_at_1)

    def integrand(s):
        return np.array([v_psi(x) for x in s]) / (s * s)

    lo, hi = min(1.0, t), max(1.0, t)
    integral = quad.integrate_finite(integrand, lo, hi, cfg).value
    if t < 1.0:
        integral = -integral
    return t * complex(v_at_1) - t * complex(integral)


def corollary1_check(
    p: KhintchinePair, t: float, cfg: QuadConfig = DEFAULT_CONFIG
) -> tuple[float, float]:
    """Both sides of ``E[(1 - cos(E_t X))(1+X^2)/X^2] = E[(1+X^2)/(t^2+X^2)]``.

    Expectations are integrals against ``m`` (not normalised) and the
    exponential density ``t e^{-ts}``.  The left side is a nested quadrature.
    """
    if p.a != 0.0 or not p.m.even:
        raise ValueError("corollary1_check needs a symmetric pair [0, m]")
    t = _check_t(t)
    t2 = t * t
    atom = p.m.atom_at_zero
    dens = p.m.density

    def inner(s: float) -> float:
        value = 0.5 * s * s * atom
        if dens is None or s == 0.0:
            return value

        def kernel(x):
            h = np.sin(0.5 * s * x)
            return 2.0 * h * h * (1.0 + x * x) / (x * x)

        return value + quad.measure_integral(dens, kernel, True, cfg).real

    def outer(s):
        return np.array([inner(v) for v in s]) * t

    lhs = quad.laplace_transform(outer, t, cfg).real
    rhs = atom / t2
    if dens is not None:
        rhs += quad.measure_integral(dens, lambda x: (1.0 + x * x) / (t2 + x * x), True, cfg).real
    return float(lhs), float(rhs)


def transform_fn(name: str, route: str, cfg: QuadConfig = DEFAULT_CONFIG) -> VoiculescuFn:
    """``t -> V(it)`` for a catalogue entry along one route.

    ``thm2`` on a background driving entry differentiates its parent's closed
    form; on a selfdecomposable entry it integrates the child's closed form
    from the parent's value at ``t = 1``.
    """
    entry = catalog_lookup(name)
    if route == "levelA":
        return VoiculescuFn(lambda t: level_a(entry.log_cf, t, cfg), "levelA")
    if route == "levelZ":
        return VoiculescuFn(lambda t: level_z(entry.pair, t, cfg), "levelZ")
    if route == "symZ":
        return VoiculescuFn(lambda t: level_z_symmetric(entry.pair, t, cfg), "symZ")
    if route == "closed":
        if entry.closed_v is None:
            raise NoClosedForm(f"{name!r} has no closed-form Voiculescu transform")
        return entry.closed_v
    if route == "thm2":
        if entry.bdcf_of is not None:
            parent = catalog_lookup(entry.bdcf_of).closed_v
            return VoiculescuFn(lambda t: thm2_forward(parent, t), "thm2")
        if entry.bdcf is None:
            raise NoClosedForm(f"{name!r} has no background driving entry")
        child = catalog_lookup(entry.bdcf).closed_v
        v1 = entry.closed_v(1.0)
        return VoiculescuFn(lambda t: thm2_inverse(child, v1, t, cfg), "thm2")
    raise ValueError(f"unknown route {route!r}; choose from {', '.join(ROUTES)}")
