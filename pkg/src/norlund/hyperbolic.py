"""Closed differentiation algebra for the sech^2 convolution densities.

An expression is ``sum_k c_k(s) * t**k`` with ``s = pi*x``, ``t = tanh(s)``,
``k`` in Z and ``c_k`` polynomials in ``s`` over Q[pi, 1/pi].  The algebra
is closed under ``d/dx`` (``ds/dx = pi``, ``dt/ds = 1 - t^2``) and, because
``s`` and ``tanh s`` are algebraically independent, the representation is
canonical: equal functions have equal term maps.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .exact import PI, PiScalar, Poly, airault_Q, bernoulli_numbers

__all__ = [
    "HyperExpr",
    "DEFAULT_ELL_MAX",
    "rho_closed_form",
    "rho_from_recurrence",
    "differentiate",
    "eval_hyper",
]

DEFAULT_ELL_MAX = 8

# |s| below this uses the Taylor expansion about 0; beyond it the
# 1 - |t| expansion.  Both are exact re-expansions of the same expression.
TAYLOR_RADIUS = 1.2
TAYLOR_ORDER = 140

_ZERO = PiScalar()
_ONE = PiScalar.lift(1)


def _spoly(coeffs) -> Poly:
    return Poly([PiScalar.lift(c) for c in coeffs], "s")


class HyperExpr:
    """Immutable Laurent polynomial in ``t = tanh(pi x)`` with ``s``-polynomial
    coefficients.  ``terms`` maps the ``t``-power to a :class:`Poly` in ``s``."""

    __slots__ = ("_terms", "_numeric")

    def __init__(self, terms=None):
        clean = {}
        for k, p in (terms or {}).items():
            if not isinstance(p, Poly):
                p = _spoly([p])
            if p:
                clean[int(k)] = Poly(p.coeffs, "s")
        self._terms = clean
        self._numeric = None

    @classmethod
    def t_power(cls, k: int, coeff=1) -> "HyperExpr":
        return cls({k: _spoly([coeff])})

    @classmethod
    def s_poly(cls, poly: Poly) -> "HyperExpr":
        return cls({0: poly})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, HyperExpr):
            return NotImplemented
        return self._terms.keys() == other._terms.keys() and all(
            self._terms[k] == other._terms[k] for k in self._terms
        )

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items())))

    def __add__(self, other):
        if not isinstance(other, HyperExpr):
            other = HyperExpr.t_power(0, other)
        out = dict(self._terms)
        for k, p in other._terms.items():
            out[k] = out[k] + p if k in out else p
        return HyperExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return HyperExpr({k: -p for k, p in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return HyperExpr({k: p * other for k, p in self._terms.items()})
        if not isinstance(other, HyperExpr):
            other = PiScalar.lift(other)
            return HyperExpr({k: p * other for k, p in self._terms.items()})
        out: dict = {}
        for k1, p1 in self._terms.items():
            for k2, p2 in other._terms.items():
                prod = p1 * p2
                out[k1 + k2] = out[k1 + k2] + prod if k1 + k2 in out else prod
        return HyperExpr(out)

    __rmul__ = __mul__

    def derivative(self) -> "HyperExpr":
        """Exact ``d/dx``."""
        out: dict = {}

        def add(k, p):
            if p:
                out[k] = out[k] + p if k in out else p

        for k, p in self._terms.items():
            add(k, p.derivative())
            if k:
                add(k - 1, p * k)
                add(k + 1, p * (-k))
        return HyperExpr(out) * PI

    @property
    def t_range(self) -> tuple:
        return (min(self._terms), max(self._terms)) if self._terms else (0, 0)

    @property
    def s_degree(self) -> int:
        return max((p.degree for p in self._terms.values()), default=-1)

    def to_text(self) -> str:
        """Canonical dump, one line per ``t``-power, e.g.
        ``t^-2 * (3/2*pi^1*s^1)``."""
        lines = []
        for k in sorted(self._terms):
            parts = []
            for d, c in enumerate(self._terms[k].coeffs):
                for p, r in sorted(c.coeffs.items()):
                    parts.append(f"{r}*pi^{p}*s^{d}")
            lines.append(f"t^{k} * ({' + '.join(parts)})")
        return "\n".join(lines)

    def __repr__(self):
        return f"HyperExpr({len(self._terms)} t-powers, s-degree {self.s_degree})"

    # numeric evaluation -------------------------------------------------

    def _compiled(self) -> "_NumericForm":
        if self._numeric is None:
            self._numeric = _NumericForm(self)
        return self._numeric

    def __call__(self, x):
        return eval_hyper(self, x)


# ---------------------------------------------------------------------------
# exact series machinery for the Taylor regime
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _tanh_over_s(order: int) -> tuple:
    """Power series of ``tanh(s)/s`` through ``s^order``."""
    B = bernoulli_numbers(order + 2)
    c = [Fraction(0)] * (order + 1)
    for n in range(1, order // 2 + 2):
        if 2 * n - 2 > order:
            break
        c[2 * n - 2] = Fraction(4**n * (4**n - 1)) * B[2 * n] / math.factorial(2 * n)
    return tuple(c)


@lru_cache(maxsize=None)
def _s_coth(order: int) -> tuple:
    """Power series of ``s*coth(s)`` through ``s^order``."""
    B = bernoulli_numbers(order + 1)
    c = [Fraction(0)] * (order + 1)
    for n in range(0, order // 2 + 1):
        c[2 * n] = Fraction(4**n) * B[2 * n] / math.factorial(2 * n)
    return tuple(c)


def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(0, order + 1 - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _T_power(k: int, order: int) -> tuple:
    """Series of ``(tanh(s)/s)**k`` for any integer ``k``."""
    if k == 0:
        return tuple([Fraction(1)] + [Fraction(0)] * order)
    base = _tanh_over_s(order) if k > 0 else _s_coth(order)
    prev = _T_power(k - 1 if k > 0 else k + 1, order)
    return tuple(_series_mul(prev, base, order))


class _NumericForm:
    """Float coefficient tables for the three evaluation regimes."""

    def __init__(self, expr: HyperExpr):
        terms = expr.terms
        if not terms:
            self.zero = True
            return
        self.zero = False
        kmin, kmax = expr.t_range
        self.K = max(0, -kmin)
        D = expr.s_degree + 1
        # direct: t^-K * sum_m c_{m-K}(s) t^m
        self.direct = np.zeros((kmax + self.K + 1, D))
        for k, p in terms.items():
            for d, c in enumerate(p.coeffs):
                self.direct[k + self.K, d] = float(c)
        # 1-|t| expansions, t = sign * (1 - eps)
        self.eps = {}
        for sign in (1, -1):
            table: dict = {}
            for k, p in terms.items():
                m = k + self.K
                for i in range(m + 1):
                    factor = (sign**m) * ((-1) ** i) * math.comb(m, i)
                    table[i] = table[i] + p * factor if i in table else p * factor
            arr = np.zeros((max(table) + 1, D))
            for i, p in table.items():
                for d, c in enumerate(p.coeffs):
                    arr[i, d] = float(c)
            self.eps[sign] = arr
        self.taylor = self._taylor(terms)

    def _taylor(self, terms):
        K = self.K
        order = TAYLOR_ORDER
        n_ser = order + K
        series = [PiScalar() for _ in range(order + 1)]
        neg = [PiScalar() for _ in range(K)]
        for k, p in terms.items():
            T = _T_power(k, n_ser)
            for d, c in enumerate(p.coeffs):
                if not c:
                    continue
                for i, a in enumerate(T):
                    if not a:
                        continue
                    power = d + k + i
                    if power > order:
                        break
                    if power < 0:
                        neg[power + K] = neg[power + K] + c * a
                    else:
                        series[power] = series[power] + c * a
        if any(neg):
            # genuine pole at x = 0; fall back to the direct form there
            return None
        return np.array([[float(c) for c in series]])

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        s = np.pi * x
        out = np.zeros(s.shape)
        if self.zero:
            return out
        a = np.abs(s)
        small = a < TAYLOR_RADIUS
        if self.taylor is not None and small.any():
            ss = s[small]
            out[small] = kernels.horner2d(self.taylor, ss, np.ones_like(ss))
        else:
            small = np.zeros_like(small)
        for sign, mask in ((1, (~small) & (s > 0)), (-1, (~small) & (s <= 0))):
            if not mask.any():
                continue
            sv = s[mask]
            q = np.exp(-2.0 * np.abs(sv))
            eps = 2.0 * q / (1.0 + q)
            val = kernels.horner2d(self.eps[sign], sv, eps)
            if self.K:
                with np.errstate(divide="ignore"):
                    val = val * np.tanh(sv) ** (-self.K)
            out[mask] = val
        return out

    def direct_eval(self, x):
        s = np.pi * np.asarray(x, dtype=np.float64)
        t = np.tanh(s)
        with np.errstate(divide="ignore", invalid="ignore"):
            return kernels.horner2d(self.direct, s, t) * t ** (-self.K)


def eval_hyper(e: HyperExpr, x):
    """Numeric value of ``e`` at ``x`` (scalar or array).

    Removable singularities at ``x = 0`` are handled through an exact Taylor
    re-expansion; large ``|x|`` uses an expansion in ``1 - |tanh(pi x)|`` so
    exponentially small densities keep full relative accuracy.
    """
    vals = e._compiled()(np.atleast_1d(x))
    return float(vals[0]) if np.ndim(x) == 0 else vals


def differentiate(e: HyperExpr, order: int = 1) -> HyperExpr:
    if order < 0:
        raise ValueError("order must be non-negative")
    for _ in range(order):
        e = e.derivative()
    return e


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------

_T = HyperExpr.t_power
_S = HyperExpr.s_poly(_spoly([0, 1]))


def _rho1() -> HyperExpr:
    # (pi/2) sech^2(pi x)
    return (_T(0) - _T(2)) * PiScalar.pi_power(1, Fraction(1, 2))


def _rho2() -> HyperExpr:
    # pi * csch^2(pi x) * (pi x coth(pi x) - 1)
    return (_S * _T(-1) - _T(0)) * (_T(-2) - _T(0)) * PI


def airault_density(ell: int) -> HyperExpr:
    """Density via the iterated-derivative closed forms (valid for ell >= 1)."""
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    m, odd = divmod(ell, 2)
    if odd:
        # rho_{2m+1} = pi^{-2m} / (2 (2m)!) d^{2m+1}/dx^{2m+1} [Q_{2m}(pi x) t]
        Q = airault_Q(2 * m) if m else Poly([_ONE], "s")
        base = HyperExpr({1: Poly(Q.coeffs, "s")})
        pref = PiScalar.pi_power(-2 * m, Fraction(1, 2 * math.factorial(2 * m)))
        return differentiate(base, 2 * m + 1) * pref
    # rho_{2m} = pi^{1-2m} / (2 (2m-1)!) d^{2m}/dx^{2m} [Q_{2m-1}(pi x) / t]
    Q = airault_Q(2 * m - 1)
    base = HyperExpr({-1: Poly(Q.coeffs, "s")})
    pref = PiScalar.pi_power(1 - 2 * m, Fraction(1, 2 * math.factorial(2 * m - 1)))
    return differentiate(base, 2 * m) * pref


_cache_closed: dict = {}
_cache_recur: dict = {}


def rho_closed_form(ell: int, ell_max: int = DEFAULT_ELL_MAX) -> HyperExpr:
    """Exact density ``rho_ell`` as a :class:`HyperExpr`."""
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    if ell > ell_max:
        raise ValueError(f"ell={ell} exceeds ell_max={ell_max}")
    if ell not in _cache_closed:
        if ell == 1:
            _cache_closed[ell] = _rho1()
        elif ell == 2:
            _cache_closed[ell] = _rho2()
        else:
            _cache_closed[ell] = airault_density(ell)
    return _cache_closed[ell]


def _recurrence_step(rho: HyperExpr, k: int) -> HyperExpr:
    # k(k+1) rho_{k+2} = ((4x^2 + k^2)/4) rho'' + 2x(k+2) rho' + (k+1)(k+2) rho
    # with x = s / pi
    d1 = rho.derivative()
    d2 = d1.derivative()
    x = _spoly([0, PiScalar.pi_power(-1)])
    quad = _spoly([Fraction(k * k, 4), 0, PiScalar.pi_power(-2)])
    rhs = d2 * quad + d1 * (x * (2 * (k + 2))) + rho * ((k + 1) * (k + 2))
    return rhs * Fraction(1, k * (k + 1))


def rho_from_recurrence(ell: int) -> HyperExpr:
    """Density ``rho_ell`` (ell >= 3) built from ``rho_{ell-2}`` by the
    second-order differential recurrence, seeded with ``rho_1``, ``rho_2``."""
    if ell < 3:
        raise ValueError("the recurrence route needs ell >= 3")
    if ell not in _cache_recur:
        prev = _rho1() if ell - 2 == 1 else (_rho2() if ell - 2 == 2 else rho_from_recurrence(ell - 2))
        _cache_recur[ell] = _recurrence_step(prev, ell - 2)
    return _cache_recur[ell]
