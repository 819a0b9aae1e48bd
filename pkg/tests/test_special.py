import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from norlund.exact import binom_poly
from norlund.special import (
    DomainError,
    barnes_zeta,
    digamma,
    genfun_modified_norlund,
    genfun_partial_sum,
    hurwitz_zeta,
    leibniz_rhs,
    polygamma,
    psi_product_derivative,
)

mp.mp.dps = 30

# frozen from mpmath at 30 digits
PSI = {0.5: -1.9635100260214234794, 1.0: -0.57721566490153286061, 2.5: 0.70315664064524318723, 10.0: 2.2517525890667211076}
HURWITZ = [
    (2, 1.0, 1.6449340668482264365 + 0j),
    (3, 0.5 + 2j, -0.13450096595692388796 - 0.00021625598729802231914j),
    (5, 1.5 - 7j, 0.000085435690105300947174 - 0.000055052298864161592807j),
    (7, 3 + 30j, -1.9697814994193355903e-10 - 1.0739691941301251533e-10j),
]
# equal-parameter Barnes zeta by direct multiplicity sums (mpmath nsum)
BARNES = [
    (2, 3, 1.0, 1.6449340668482264365 + 0j),
    (3, 4, 1.5 + 0.5j, 0.24483897137512174816 - 0.25408940164891344354j),
    (4, 5, 2 + 1j, 0.018869908243444069561 - 0.050528684503852185387j),
]


@pytest.mark.parametrize("x,ref", PSI.items())
def test_digamma_frozen(x, ref):
    assert digamma(x) == pytest.approx(ref, rel=1e-14)


def test_polygamma_frozen():
    assert polygamma(1, 0.5) == pytest.approx(math.pi**2 / 2, rel=1e-14)
    assert polygamma(1, 3.0) == pytest.approx(0.39493406684822643647, rel=1e-14)
    assert polygamma(3, 0.7) == pytest.approx(25.879149678427737993, rel=1e-13)
    assert polygamma(5, 12.5) == pytest.approx(0.000095622715971076443425, rel=1e-13)


@given(st.integers(0, 8), st.floats(0.05, 60.0))
def test_polygamma_against_mpmath(k, x):
    ref = float(mp.psi(k, x))
    assert polygamma(k, x) == pytest.approx(ref, rel=2e-13, abs=1e-300)


def test_polygamma_array_and_scalar_forms():
    xs = np.array([0.5, 1.0, 2.5])
    out = polygamma(0, xs)
    assert isinstance(out, np.ndarray) and out.shape == (3,)
    assert isinstance(digamma(1.0), float)


@pytest.mark.parametrize("bad", [0.0, -1.0, -2.5, float("nan")])
def test_polygamma_domain(bad):
    with pytest.raises(DomainError):
        digamma(bad)


def test_polygamma_order_range():
    with pytest.raises(DomainError):
        polygamma(13, 1.0)
    with pytest.raises(DomainError):
        polygamma(-1, 1.0)


@pytest.mark.parametrize("s,w,ref", HURWITZ)
def test_hurwitz_frozen(s, w, ref):
    # at least 10 significant digits
    got = hurwitz_zeta(s, w)
    assert abs(got - ref) <= 1e-10 * abs(ref)


@given(st.integers(2, 9), st.floats(0.1, 6.0), st.floats(-50.0, 50.0))
def test_hurwitz_against_mpmath(s, a, b):
    w = complex(a, b)
    ref = complex(mp.zeta(s, mp.mpc(a, b)))
    assert abs(hurwitz_zeta(s, w) - ref) <= 1e-10 * abs(ref)


def test_hurwitz_trivial_values():
    assert hurwitz_zeta(2, 1.0) == pytest.approx(math.pi**2 / 6, rel=1e-14)
    assert hurwitz_zeta(2, 2.0) == pytest.approx(math.pi**2 / 6 - 1, rel=1e-14)


def test_hurwitz_brute_force_sum():
    # zeta(3, 1+i): 10^6 terms plus the integral tail and half the first omitted term
    w = 1 + 1j
    n = np.arange(1_000_000)
    N = 1_000_000
    ref = np.sum((n + w) ** -3.0) + (N + w) ** -2 / 2 + (N + w) ** -3 / 2
    assert abs(hurwitz_zeta(3, w) - ref) < 1e-9


@pytest.mark.parametrize("s", [2, 3, 4])
@pytest.mark.parametrize("w", [1.0, 2 + 1j, 0.5 + 3j])
def test_hurwitz_shift(s, w):
    assert abs(hurwitz_zeta(s, w + 1) - hurwitz_zeta(s, w) + w ** (-s)) < 1e-10


@given(st.integers(2, 8), st.floats(0.1, 5.0), st.floats(0.0, 40.0))
def test_hurwitz_conjugate_symmetry(s, a, b):
    w = complex(a, b)
    assert abs(hurwitz_zeta(s, w.conjugate()) - hurwitz_zeta(s, w).conjugate()) <= 1e-12 * abs(hurwitz_zeta(s, w))


def test_hurwitz_domain():
    with pytest.raises(DomainError):
        hurwitz_zeta(1, 1.0)
    with pytest.raises(DomainError):
        hurwitz_zeta(3, -0.5 + 1j)


@pytest.mark.parametrize("ell,s,w,ref", BARNES)
def test_barnes_frozen(ell, s, w, ref):
    assert abs(barnes_zeta(ell, s, w) - ref) <= 1e-12 * abs(ref)


def test_barnes_order_one_is_hurwitz():
    w = np.array([0.7 + 0.2j, 2.0 + 5j])
    assert np.allclose(barnes_zeta(1, 3, w), hurwitz_zeta(3, w), rtol=1e-15)


def test_barnes_multiplicity_count():
    assert barnes_zeta(2, 3, 1.0) == pytest.approx(math.pi**2 / 6, rel=1e-13)


def _barnes_brute(ell, s, w, K=20000):
    # sum over the l-fold lattice grouped by m_1 + ... + m_l = k (multiplicity C(k+l-1, l-1)),
    # then an integral tail with the Euler-Maclaurin half-term
    k = np.arange(K, dtype=np.float64)
    mult = np.ones_like(k)
    for j in range(1, ell):
        mult = mult * (k + j) / j
    head = np.sum(mult * (w + k) ** (-float(s)))

    def f(t):
        m = mp.mpf(1)
        for j in range(1, ell):
            m *= (t + j) / j
        return m * (mp.mpc(w) + t) ** (-s)

    tail = mp.quad(f, [K, mp.inf]) + f(mp.mpf(K)) / 2
    return complex(head) + complex(tail)


@pytest.mark.parametrize("ell", [2, 3])
@pytest.mark.parametrize("im", [0.0, 1.0])
def test_barnes_brute_force(ell, im):
    w = ell / 2 + 1j * im
    assert abs(barnes_zeta(ell, ell + 1, w) - _barnes_brute(ell, ell + 1, w)) < 1e-7


def test_barnes_double_sum():
    # square truncations of the double sum; the omitted part scales like M^-2,
    # so one Richardson step leaves an O(M^-3) error
    def square(M):
        m = np.arange(M, dtype=np.float64)
        return float(np.sum((2.0 + m[:, None] + m[None, :]) ** -4.0))

    ref = (4 * square(3000) - square(1500)) / 3
    assert abs(barnes_zeta(2, 4, 2.0) - ref) < 1e-8


def test_barnes_domain():
    with pytest.raises(DomainError):
        barnes_zeta(3, 3, 1.0)


def test_leibniz_rhs_low_orders():
    # l=1: psi(x); l=2: -1 + psi(x-1) + (x-1) psi'(x-1)
    assert leibniz_rhs(1, 3.0) == pytest.approx(digamma(3.0), rel=1e-15)
    x = 3.0
    assert leibniz_rhs(2, x) == pytest.approx(-1 + digamma(2.0) + 2.0 * polygamma(1, 2.0), rel=1e-14)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.5, 10.0])
def test_digamma_recurrence(x):
    assert abs(digamma(x + 1) - digamma(x) - 1 / x) < 1e-12


def test_polygamma_trigamma_at_one_and_second_derivative():
    assert polygamma(2, 1.0) == pytest.approx(-2.4041138063191885708, rel=1e-14)


def test_leibniz_rhs_richardson():
    # l=3, x=5: second derivative of binom(x-1, 2) psi(x-1), Richardson-extrapolated central differences
    def f(y):
        return (y - 1) * (y - 2) / 2 * digamma(y - 1)

    def d2(h):
        return (f(5 + h) - 2 * f(5) + f(5 - h)) / h**2

    rich = (4 * d2(5e-4) - d2(1e-3)) / 3
    assert leibniz_rhs(3, 5.0) == pytest.approx(-1.5 + rich, abs=1e-7)


@pytest.mark.parametrize("ell", [1, 2, 3, 4, 5])
def test_leibniz_rhs_against_high_precision_differences(ell):
    x = float(ell) + 0.75
    coeffs = [float(c) for c in binom_poly(-1, ell - 1).coeffs]

    def g(y):
        return sum(c * y**k for k, c in enumerate(coeffs)) * mp.psi(0, y - ell // 2)

    ref = -sum(1.0 / k for k in range(1, ell)) + float(mp.diff(g, mp.mpf(x), ell - 1))
    assert leibniz_rhs(ell, x) == pytest.approx(ref, abs=1e-6)


def test_log_moment_closed_form_values():
    # z_1 at x=3 and z_2 at x=3
    assert -math.log(2.5) + leibniz_rhs(1, 3.0) == pytest.approx(0.00649360322431207421, rel=1e-12)
    assert -math.log(2.0) + leibniz_rhs(2, 3.0) == pytest.approx(0.019505288234974702921, rel=1e-12)


@pytest.mark.parametrize("order,p,shift,x", [(1, 0, 0, 2.3), (3, -1, 1, 4.1), (4, 2, 2, 5.5)])
def test_psi_product_derivative_against_mpmath(order, p, shift, x):
    P = binom_poly(p, order)
    coeffs = [float(c) for c in P.coeffs]

    def f(y):
        return sum(c * y**k for k, c in enumerate(coeffs)) * mp.psi(0, y - shift)

    ref = float(mp.diff(f, mp.mpf(x), order))
    assert psi_product_derivative(order, P, shift, x) == pytest.approx(ref, rel=1e-12)


def test_psi_product_derivative_domain():
    with pytest.raises(DomainError):
        psi_product_derivative(1, binom_poly(0, 1), 2, 1.5)


def test_genfun_closed_forms():
    z = 0.1
    y = z + 1 / z - 1
    assert genfun_modified_norlund(1, z) == pytest.approx(-0.5 * math.log(z) - 0.5 * digamma(y), abs=1e-15)
    ref2 = -0.5 * math.log(z) - 0.5 * (digamma(y) + y * polygamma(1, y) - 1)
    assert genfun_modified_norlund(2, z) == pytest.approx(ref2, abs=1e-15)


def test_genfun_partial_sum_first_term():
    # B_1^(1)* = 3/4
    assert genfun_partial_sum(1, 1, 0.01) == pytest.approx(0.0075, rel=1e-15)


def test_genfun_domain():
    with pytest.raises(DomainError):
        genfun_modified_norlund(1, 0.0)
    with pytest.raises(DomainError):
        genfun_modified_norlund(1, 1.5)
