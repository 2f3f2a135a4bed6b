"""Closed-form Voiculescu transforms V(it) of the catalogued laws."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .specfun import beta_fn, digamma, hurwitz_zeta_2, sici

__all__ = ["VoiculescuFn", "SOURCES", "CLOSED_FORMS", "CLOSED_FORM_TEXT"]

SOURCES = ("levelA", "levelZ", "symZ", "closed", "thm2")


@dataclass(frozen=True)
class VoiculescuFn:
    """``t -> V(it)`` for ``t > 0``, tagged with how it was obtained."""

    eval: Callable[[float], complex]
    source: str = "closed"

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown source tag {self.source!r}")

    def __call__(self, t: float) -> complex:
        return complex(self.eval(t))


def v_cosh(t: float) -> complex:
    return 1j * (1.0 - t * beta_fn(0.5 * t))


def v_sinh(t: float) -> complex:
    return 1j * (t * digamma(0.5 * t) - t * math.log(0.5 * t) + 1.0)


def v_tanh(t: float) -> complex:
    return 1j * t * (math.log(0.25 * t) - digamma(0.25 * t + 0.5))


def v_laplace(t: float) -> complex:
    si, ci = sici(t)
    return 2j * t * (ci * math.cos(t) + si * math.sin(t))


def v_bdcf_cosh(t: float) -> complex:
    t2 = t * t
    return 1j * (1.0 + 0.5 * t2 * hurwitz_zeta_2(0.5 * t) - 0.25 * t2 * hurwitz_zeta_2(0.25 * t))


def v_bdcf_sinh(t: float) -> complex:
    return 1j * (1.0 + t - 0.5 * t * t * hurwitz_zeta_2(0.5 * t))


def v_bdcf_tanh(t: float) -> complex:
    return 1j * t * (0.25 * t * hurwitz_zeta_2(0.25 * (t + 2.0)) - 1.0)


def v_bdcf_laplace(t: float) -> complex:
    si, ci = sici(t)
    return 2j * t * (t * (ci * math.sin(t) - si * math.cos(t)) - 1.0)


CLOSED_FORMS: dict[str, Callable[[float], complex]] = {
    "cosh": v_cosh,
    "sinh": v_sinh,
    "tanh": v_tanh,
    "laplace": v_laplace,
    "bdcf-cosh": v_bdcf_cosh,
    "bdcf-sinh": v_bdcf_sinh,
    "bdcf-tanh": v_bdcf_tanh,
    "bdcf-laplace": v_bdcf_laplace,
}

CLOSED_FORM_TEXT = {
    "cosh": "i[1 - t beta(t/2)]",
    "sinh": "i[t psi(t/2) - t ln(t/2) + 1]",
    "tanh": "it[ln(t/4) - psi(t/4 + 1/2)]",
    "laplace": "2it[ci(t) cos t + si(t) sin t]",
    "bdcf-cosh": "i[1 + (t^2/2) zeta(2, t/2) - (t^2/4) zeta(2, t/4)]",
    "bdcf-sinh": "i[1 + t - (t^2/2) zeta(2, t/2)]",
    "bdcf-tanh": "it[(t/4) zeta(2, (t+2)/4) - 1]",
    "bdcf-laplace": "2it[t(ci(t) sin t - si(t) cos t) - 1]",
}
