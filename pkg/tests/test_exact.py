from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from norlund.exact import (
    PI,
    PiScalar,
    Poly,
    airault_Q,
    antiderivative,
    bernoulli_numbers,
    bernoulli_poly,
    binom_poly,
    chebyshev,
    choi_p,
    forward_difference,
    harmonic,
    modified_norlund,
    norlund_poly,
    p_polys,
    stirling_first,
)

_t, _x = sympy.symbols("t x")


def _sympy_poly(expr, var):
    return tuple(Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(expr, var).all_coeffs()))


@pytest.fixture(scope="module")
def norlund_oracle():
    """B_n^(k) for k = 0..9, n <= 8 from the series of (t/(e^t-1))^k."""
    table = {}
    for k in range(10):
        ser = sympy.series((_t / (sympy.exp(_t) - 1)) ** k, _t, 0, 9).removeO()
        for n in range(9):
            c = ser.coeff(_t, n) * sympy.factorial(n)
            table[n, k] = Fraction(int(c.p), int(c.q))
    return table


# ---------------------------------------------------------------- Bernoulli


def test_bernoulli_small_values():
    assert bernoulli_numbers(4) == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


def test_bernoulli_against_sympy():
    B = bernoulli_numbers(80)
    for n in range(2, 81):
        ref = sympy.bernoulli(n)
        assert B[n] == Fraction(int(ref.p), int(ref.q)), n


def test_bernoulli_odd_vanish():
    B = bernoulli_numbers(101)
    assert all(B[2 * k + 1] == 0 for k in range(1, 51))


def test_bernoulli_rejects_negative():
    with pytest.raises(ValueError):
        bernoulli_numbers(-1)


@pytest.mark.parametrize("n", range(0, 12))
def test_bernoulli_poly_against_sympy(n):
    assert bernoulli_poly(n).coeffs == _sympy_poly(sympy.bernoulli(n, _x), _x)


@pytest.mark.parametrize("n", range(0, 21))
def test_umbral_inversion_exact(n):
    # int_0^1 B_n(x+u) du = x^n
    assert forward_difference(antiderivative(bernoulli_poly(n)), 1) == Poly.monomial(n)


# ---------------------------------------------------------------- Norlund


def test_norlund_list_first_five():
    a = Poly([0, 1], "alpha")
    expected = [
        Poly([1], "alpha"),
        a * Fraction(-1, 2),
        a * (a * 3 - 1) * Fraction(1, 12),
        a * a * (a - 1) * Fraction(-1, 8),
        a * (a * a * a * 15 - a * a * 30 + a * 5 + 2) * Fraction(1, 240),
    ]
    for n, e in enumerate(expected):
        assert norlund_poly(n) == e


def test_norlund_against_series_oracle(norlund_oracle):
    for (n, k), v in norlund_oracle.items():
        assert norlund_poly(n)(Fraction(k)) == v, (n, k)


def test_norlund_order_one_is_bernoulli():
    B = bernoulli_numbers(30)
    assert all(norlund_poly(n)(Fraction(1)) == B[n] for n in range(31))


def test_norlund_degree_and_order_zero():
    for n in range(1, 15):
        assert norlund_poly(n).degree == n
        assert norlund_poly(n)(Fraction(0)) == 0


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10))
def test_norlund_addition_theorem(a, b, n):
    # (f^a)(f^b) = f^(a+b)
    lhs = norlund_poly(n)(Fraction(a + b))
    rhs = sum(comb(n, k) * norlund_poly(k)(Fraction(a)) * norlund_poly(n - k)(Fraction(b)) for k in range(n + 1))
    assert lhs == rhs


def test_modified_norlund_direct_summation():
    # n=1, l=1: C(1,0) B_0 / 1 + C(2,2) B_1 / 2 = 1 - 1/4
    assert modified_norlund(1, 1) == Fraction(3, 4)
    for n in range(1, 8):
        for ell in (1, 2, 3):
            direct = sum(
                Fraction(comb(n + r, 2 * r), n + r) * norlund_poly(r)(Fraction(ell)) for r in range(n + 1)
            )
            assert modified_norlund(n, ell) == direct


def test_modified_norlund_polynomial_and_composition():
    p = modified_norlund(4)
    assert p(Fraction(2)) == modified_norlund(4, 2)
    assert modified_norlund(4, Poly([0, 1], "alpha")) == p
    with pytest.raises(ValueError):
        modified_norlund(0, 1)


# ---------------------------------------------------------------- combinatorics


def test_stirling_against_sympy():
    from sympy.functions.combinatorial.numbers import stirling

    for n in range(0, 12):
        for k in range(0, n + 2):
            assert stirling_first(n, k) == int(stirling(n, k, kind=1, signed=True)), (n, k)


def test_harmonic():
    assert harmonic(0) == 0
    assert harmonic(4) == Fraction(25, 12)
    with pytest.raises(ValueError):
        harmonic(-1)


@given(st.integers(-3, 8), st.integers(0, 8))
def test_binom_pascal(p, ell):
    assert binom_poly(p + 1, ell + 1) == binom_poly(p, ell + 1) + binom_poly(p, ell)


@given(st.integers(-2, 6), st.integers(0, 7), st.integers(-5, 20))
def test_binom_poly_values(p, ell, x):
    from fractions import Fraction as F

    falling = 1
    for j in range(ell):
        falling *= x + p - j
    assert binom_poly(p, ell)(F(x)) == F(falling, factorial(ell))


@pytest.mark.parametrize("n", range(0, 12))
def test_chebyshev_against_sympy(n):
    assert chebyshev("first", n).coeffs == _sympy_poly(sympy.chebyshevt_poly(n, _x), _x)
    assert chebyshev("second", n).coeffs == _sympy_poly(sympy.chebyshevu_poly(n, _x), _x)


def test_chebyshev_rejects_unknown_kind():
    with pytest.raises(ValueError):
        chebyshev("third", 2)


@given(st.integers(0, 10))
def test_forward_difference_of_power(n):
    assert forward_difference(Poly.monomial(n), n) == Poly.const(factorial(n))


def test_forward_difference_callable():
    assert forward_difference(lambda y: y**3, 3, 1.7) == pytest.approx(6.0, abs=1e-12)
    with pytest.raises(ValueError):
        forward_difference(lambda y: y, 1)


# ---------------------------------------------------------------- Poly / PiScalar


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)
polys = st.lists(fracs, max_size=5).map(Poly)


@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly([])


@given(polys, polys, fracs)
def test_poly_evaluation_is_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys, fracs)
def test_poly_shift_and_derivative(a, h):
    assert a.shift(h)(Fraction(0)) == a(h)
    assert a.integrate().derivative() == a


def test_pi_scalar_float_conversion():
    zeta2 = PiScalar.pi_power(2, Fraction(1, 6))
    assert float(zeta2) == pytest.approx(1.6449340668482264365, rel=1e-16)
    mixed = PI * PI + PiScalar.pi_power(-3, 7)
    assert float(mixed) == pytest.approx(9.8696044010893586188 + 7 * 0.032251534433199492423, rel=1e-15)


def test_pi_scalar_algebra():
    assert PI * PiScalar.pi_power(-1) == PiScalar.lift(1)
    assert (PI - PI) == PiScalar()
    assert not PiScalar()


def test_airault_Q():
    s2 = PiScalar.pi_power(2)
    assert airault_Q(2) == Poly([s2 * Fraction(1, 4), PiScalar(), PiScalar.lift(1)])
    assert airault_Q(1) == Poly([PiScalar(), PiScalar.lift(1)])
    # Q_3 = s (s^2 + pi^2)
    assert airault_Q(3) == Poly([PiScalar(), s2, PiScalar(), PiScalar.lift(1)])


def test_choi_p_low_order():
    assert choi_p(1, 0) == Poly([1], "w")
    # zeta_2(s, w) = zeta(s-1, w) + (1 - w) zeta(s, w)
    assert choi_p(2, 0) == Poly([1, -1], "w")
    assert choi_p(2, 1) == Poly([1], "w")
    with pytest.raises(ValueError):
        choi_p(2, 2)


def test_p_polys():
    P1, P2 = p_polys(2)
    assert P1 == Poly([1, 0, 1], "u")
    assert P2 == Poly([Fraction(1, 4), 0, 1], "u") * Poly([Fraction(9, 4), 0, 1], "u")
