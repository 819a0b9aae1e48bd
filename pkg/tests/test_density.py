import math

import numpy as np
import pytest

from norlund.density import DensityMethod, MethodError, convolution_oracle, density, pitman_yor_relation_check
from norlund.special import barnes_zeta
from norlund.verify import verify_density_methods, verify_density_normalization

from .test_hyperbolic import RHO, X_GRID

ALL = [m.value for m in DensityMethod]


def _methods(ell):
    return ALL if ell <= 3 else [m for m in ALL if m != "convolution_oracle"]


@pytest.mark.parametrize("ell", range(1, 7))
def test_every_method_against_fourier_oracle(ell):
    for m in _methods(ell):
        got = density(ell, np.array(X_GRID), m)
        assert np.max(np.abs(got - RHO[ell])) < 1e-7, m


def test_rho1_at_half():
    assert density(1, 0.5) == pytest.approx(0.5 * math.pi / math.cosh(math.pi / 2) ** 2, rel=1e-14)


def test_barnes_route_at_example_point():
    assert abs(density(2, 0.3, "barnes_zeta") - density(2, 0.3)) < 1e-8


def test_convolution_route_at_example_point():
    assert abs(density(2, 0.3, "convolution_oracle") - density(2, 0.3)) < 1e-7


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_all_method_agreement(ell):
    xs = np.array([0.0, 0.25, 1.0, 2.0])
    vals = [density(ell, xs, m) for m in ALL]
    spread = max(float(np.max(np.abs(a - b))) for a in vals for b in vals)
    assert spread < 1e-7


@pytest.mark.parametrize("ell", [1, 2, 3, 4])
def test_barnes_conjugate_pair_imaginary_parts_cancel(ell):
    w = ell / 2 + 1j * np.array([0.0, 0.25, 1.0, 2.0])
    s = barnes_zeta(ell, ell + 1, w) + barnes_zeta(ell, ell + 1, np.conj(w))
    assert np.max(np.abs(s.imag)) < 1e-12


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_monotone_decay_every_method(ell):
    xs = np.linspace(1.0, 5.0, 17)
    for m in ("closed_form", "barnes_zeta", "convolution_oracle"):
        assert np.all(np.diff(density(ell, xs, m)) < 0), m


def test_convolution_oracle_is_symmetric_and_normalized():
    xs = np.linspace(-3, 3, 13)
    v = convolution_oracle(3, xs)
    assert np.allclose(v, v[::-1], rtol=0, atol=1e-14)
    grid = np.linspace(-12, 12, 4801)
    assert abs(np.trapezoid(convolution_oracle(2, grid), grid) - 1) < 1e-9


@pytest.mark.parametrize(
    "ell,method",
    [(4, "convolution_oracle"), (0, "closed_form"), (-1, "fourier"), (9, "recurrence")],
)
def test_method_errors(ell, method):
    with pytest.raises(MethodError):
        density(ell, 0.5, method)


def test_unknown_method_is_rejected():
    with pytest.raises(ValueError):
        density(1, 0.5, "simpson")


def test_closed_form_respects_ell_max():
    with pytest.raises(ValueError):
        density(9, 0.5)
    assert density(9, 0.5, ell_max=9) > 0


def test_scalar_and_array_returns():
    assert isinstance(density(2, 0.5, "barnes_zeta"), float)
    assert isinstance(density(2, 0.5, "fourier"), float)
    assert density(2, [0.0, 0.5], "convolution_oracle").shape == (2,)


@pytest.mark.parametrize("ell", range(1, 7))
def test_normalization(ell):
    r = verify_density_normalization(ell)
    assert r.passed and r.residual < 1e-9


@pytest.mark.parametrize("ell", range(1, 7))
def test_density_methods_report(ell):
    r = verify_density_methods(ell)
    assert r.passed and r.residual < 1e-7
    expected = 5 if ell <= 3 else 4
    assert len(r.parameters["methods"]) == expected


@pytest.mark.parametrize("ell,x,tol", [(1, 0.0, 1e-10), (2, 1.0, 1e-9), (3, 0.5, 1e-9)])
def test_pitman_yor_scaling(ell, x, tol):
    r = pitman_yor_relation_check(ell, x)
    assert r.passed and r.residual < tol
    if (ell, x) == (1, 0.0):
        assert r.lhs == pytest.approx(math.pi / 2, rel=1e-14)
        assert r.rhs == pytest.approx(math.pi / 2, abs=1e-10)


def test_pitman_yor_range():
    with pytest.raises(MethodError):
        pitman_yor_relation_check(5, 0.0)
