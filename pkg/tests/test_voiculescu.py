import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from freeid.closedforms import CLOSED_FORMS, VoiculescuFn
from freeid.measures import (
    CATALOG_NAMES,
    FiniteMeasure,
    KhintchinePair,
    LogCharFn,
    catalog_lookup,
)
from freeid.voiculescu import (
    MIN_T,
    NoClosedForm,
    closed_form,
    corollary1_check,
    level_a,
    level_z,
    level_z_symmetric,
    thm2_forward,
    thm2_inverse,
    transform_fn,
)

SD = ("cosh", "sinh", "tanh", "laplace")

# V(it)/i from 30-digit mpmath quadrature of the Laplace-transform route
MPMATH_ORACLE = {
    ("cosh", 2.0): -0.386294361119890618834464242916,
    ("cosh", 0.5): -0.733945974679822075147990327766,
    ("laplace", 1.0): -0.686755923112854065665066007717,
    ("sinh", 1.0): -0.270362845461478170023744211541,
    ("tanh", 3.0): -0.180685617226546558049066579691,
    ("bdcf-tanh", 2.0): -0.355065933151773563527584833354,
    ("bdcf-laplace", 1.0): -0.757100751528373284721468543569,
}


# -- level A ---------------------------------------------------------------------


def test_level_a_cosh():
    v = level_a(catalog_lookup("cosh").log_cf, 2.0)
    assert v == pytest.approx(1j * (1 - 2 * math.log(2.0)), abs=1e-10)
    assert v.imag == pytest.approx(-0.3862943611, abs=1e-10)


def test_level_a_laplace():
    v = level_a(catalog_lookup("laplace").log_cf, 1.0)
    assert v == pytest.approx(-0.686755923112854j, abs=1e-10)


def test_level_a_zero():
    zero = LogCharFn(lambda t: np.zeros_like(np.asarray(t, dtype=float)), symmetric=True)
    assert level_a(zero, 3.0) == 0


def test_level_a_gaussian():
    # log phi = -t^2/2 gives V(it) = -i/t, matching a unit atom at the origin
    gauss = LogCharFn(lambda t: -0.5 * np.asarray(t, dtype=float) ** 2, symmetric=True)
    for t in (0.5, 1.0, 4.0):
        assert level_a(gauss, t) == pytest.approx(-1j / t, abs=1e-10)


@pytest.mark.parametrize("key", sorted(MPMATH_ORACLE))
def test_level_a_against_mpmath(key):
    name, t = key
    v = level_a(catalog_lookup(name).log_cf, t)
    assert abs(v - 1j * MPMATH_ORACLE[key]) <= 1e-10


# -- level Z ---------------------------------------------------------------------


def test_level_z_shift_only():
    assert level_z(KhintchinePair(0.75), 2.0) == pytest.approx(0.75, abs=1e-15)


def test_level_z_unit_atom():
    assert level_z(KhintchinePair(0.0, FiniteMeasure(atom_at_zero=1.0)), 2.0) == pytest.approx(-0.5j)


def test_level_z_against_scipy_for_bimodal_density():
    x0, w, eps = 1.5, 0.2, 0.1
    bump = lambda x: w / 2 * (
        np.exp(-0.5 * ((x - x0) / eps) ** 2) + np.exp(-0.5 * ((x + x0) / eps) ** 2)
    ) / (eps * math.sqrt(2 * math.pi))
    pair = KhintchinePair(0.0, FiniteMeasure(0.0, bump, even=True))
    t = 1.0
    im, _ = integrate.quad(lambda x: -t * (1 + x * x) / (t * t + x * x) * bump(x),
                           -10, 10, points=[-x0, x0], epsabs=1e-14, limit=200)
    assert abs(level_z(pair, t) - 1j * im) < 1e-10
    # close to the two-atom value it smooths
    assert abs(im + t * w * (1 + x0 * x0) / (t * t + x0 * x0)) < 2e-3


def test_sym_z_examples():
    assert level_z_symmetric(catalog_lookup("cosh").pair, 1.0) == pytest.approx(
        -1j * (math.pi / 2 - 1), abs=1e-10
    )
    assert level_z_symmetric(catalog_lookup("cosh").pair, 1.0).imag == pytest.approx(-0.5707963268, abs=1e-10)
    assert level_z_symmetric(catalog_lookup("sinh").pair, 2.0).imag == pytest.approx(-0.1544313298, abs=1e-10)
    assert level_z_symmetric(catalog_lookup("tanh").pair, 2.0).imag == pytest.approx(-0.2318630313, abs=1e-10)


def test_sym_z_tanh_closed_expression():
    # 2[ln(1/2) - psi(1)] at t = 2
    expected = 2 * (math.log(0.5) + 0.5772156649015329)
    assert level_z_symmetric(catalog_lookup("tanh").pair, 2.0).imag == pytest.approx(expected, abs=1e-10)


def test_sym_z_rejects_shift():
    pair = catalog_lookup("cosh").pair
    with pytest.raises(ValueError):
        level_z_symmetric(KhintchinePair(0.1, pair.m), 1.0)


# -- closed forms ----------------------------------------------------------------------


def test_closed_form_examples():
    assert closed_form("bdcf-cosh", 2.0) == pytest.approx(1j * (1 - math.pi ** 2 / 6), abs=1e-12)
    assert closed_form("bdcf-sinh", 2.0) == pytest.approx(1j * (3 - math.pi ** 2 / 3), abs=1e-12)
    assert closed_form("bdcf-tanh", 2.0).imag == pytest.approx(-0.3550659332, abs=1e-10)
    assert closed_form("bdcf-laplace", 1.0).imag == pytest.approx(-0.757100751528, abs=1e-12)


@pytest.mark.parametrize("key", sorted(MPMATH_ORACLE))
def test_closed_form_against_mpmath(key):
    name, t = key
    assert abs(closed_form(name, t) - 1j * MPMATH_ORACLE[key]) <= 1e-12


def test_every_entry_has_closed_form():
    assert set(CLOSED_FORMS) == set(CATALOG_NAMES)


def test_no_closed_form(monkeypatch):
    import freeid.voiculescu as vmod
    from dataclasses import replace

    bare = replace(catalog_lookup("cosh"), name="bare", closed_v=None)
    monkeypatch.setattr(vmod, "catalog_lookup", lambda n: bare)
    with pytest.raises(NoClosedForm):
        closed_form("bare", 1.0)
    with pytest.raises(NoClosedForm):
        transform_fn("bare", "closed")


# -- routes agree ----------------------------------------------------------------------


@pytest.mark.parametrize("name", CATALOG_NAMES)
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 5.0, 10.0])
def test_routes_agree(name, t):
    ref = closed_form(name, t)
    for route in ("levelA", "levelZ", "symZ"):
        assert abs(transform_fn(name, route)(t) - ref) <= 1e-8 * (1 + abs(ref))


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_thm2_route(name):
    fn = transform_fn(name, "thm2")
    for t in (0.5, 2.0, 5.0):
        assert abs(fn(t) - closed_form(name, t)) <= 1e-6 * (1 + abs(closed_form(name, t)))


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_purely_imaginary(name):
    for route in ("levelA", "levelZ", "closed"):
        assert abs(transform_fn(name, route)(1.5).real) <= 1e-12


def test_additivity():
    for t in (0.5, 1.0, 3.0):
        assert abs(closed_form("cosh", t) - closed_form("sinh", t) - closed_form("tanh", t)) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.05, max_value=50.0))
def test_property_levels_agree_cosh(t):
    e = catalog_lookup("cosh")
    assert abs(level_a(e.log_cf, t) - closed_form("cosh", t)) <= 1e-8
    assert abs(level_z(e.pair, t) - closed_form("cosh", t)) <= 1e-8


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(CATALOG_NAMES), st.floats(min_value=0.01, max_value=1e3))
def test_property_closed_form_negative_imaginary(name, t):
    v = closed_form(name, t)
    assert v.real == 0.0
    assert v.imag < 0


# -- ODE forward and inverse -----------------------------------------------------------


def test_thm2_forward_constant():
    assert thm2_forward(VoiculescuFn(lambda t: 2.5j), 3.0) == pytest.approx(2.5j, abs=1e-12)


def test_thm2_forward_linear_is_annihilated():
    assert abs(thm2_forward(VoiculescuFn(lambda t: 1j * t), 2.0)) <= 1e-10


def test_thm2_forward_quadratic():
    # V = -i t^2 gives V - t V' = i t^2
    assert thm2_forward(VoiculescuFn(lambda t: -1j * t * t), 3.0) == pytest.approx(9j, abs=1e-9)


@pytest.mark.parametrize("sd", SD)
def test_thm2_forward_catalogue(sd):
    for t in (0.5, 1.0, 2.0, 10.0):
        fwd = thm2_forward(catalog_lookup(sd).closed_v, t)
        assert abs(fwd - closed_form(f"bdcf-{sd}", t)) <= 1e-8


def test_thm2_inverse_at_one():
    assert thm2_inverse(VoiculescuFn(lambda t: 1j), -0.3j, 1.0) == -0.3j


def test_thm2_inverse_pure_scaling():
    # V_psi = 0 leaves only t V(i)
    assert thm2_inverse(VoiculescuFn(lambda t: 0j), 2j, 4.0) == pytest.approx(8j, abs=1e-14)


def test_thm2_inverse_constant():
    # V_psi = c gives V_phi = t V(i) - c(t - 1)
    c = 1.5j
    for t in (0.25, 3.0):
        assert thm2_inverse(VoiculescuFn(lambda s: c), 0.5j, t) == pytest.approx(
            0.5j * t - c * (t - 1), abs=1e-12
        )


@pytest.mark.parametrize("sd", SD)
def test_thm2_round_trip(sd):
    child = catalog_lookup(f"bdcf-{sd}").closed_v
    v1 = closed_form(sd, 1.0)
    for t in (0.3, 2.0, 7.0):
        assert abs(thm2_inverse(child, v1, t) - closed_form(sd, t)) <= 1e-9


def test_thm2_rejects_bad_input():
    v = VoiculescuFn(lambda t: 1j)
    with pytest.raises(ValueError):
        thm2_forward(v, 0.0)
    with pytest.raises(ValueError):
        thm2_inverse(v, 1j, -1.0)


# -- exponential expectation ------------------------------------------------------------------------


@pytest.mark.parametrize("name,t", [("cosh", 1.0), ("sinh", 2.0)])
def test_corollary1(name, t):
    lhs, rhs = corollary1_check(catalog_lookup(name).pair, t)
    assert abs(lhs - rhs) <= 1e-7
    assert rhs == pytest.approx(-closed_form(name, t).imag / t, abs=1e-10)


def test_corollary1_values():
    _, rhs = corollary1_check(catalog_lookup("cosh").pair, 1.0)
    assert rhs == pytest.approx(0.5707963268, abs=1e-10)
    _, rhs = corollary1_check(catalog_lookup("sinh").pair, 2.0)
    assert rhs == pytest.approx(0.0772156649, abs=1e-10)


def test_corollary1_atom_only():
    lhs, rhs = corollary1_check(KhintchinePair(0.0, FiniteMeasure(atom_at_zero=2.0)), 2.0)
    assert lhs == pytest.approx(0.5, abs=1e-10)
    assert rhs == pytest.approx(0.5, abs=1e-15)


# -- guards ----------------------------------------------------------------------------


def test_small_t_guard():
    e = catalog_lookup("cosh")
    with pytest.raises(ValueError):
        level_a(e.log_cf, MIN_T / 2)
    with pytest.raises(ValueError):
        level_z(e.pair, 0.0)
    assert level_a(e.log_cf, MIN_T).imag < 0


def test_unknown_route():
    with pytest.raises(ValueError):
        transform_fn("cosh", "nope")
