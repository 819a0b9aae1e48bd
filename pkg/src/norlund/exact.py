"""Exact rational and polynomial layer.

Everything here works over :class:`fractions.Fraction` (the rational
backbone) or over :class:`PiScalar`, Laurent polynomials in ``pi`` with
rational coefficients.  Values are immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterable, Union

_PI_RATIONAL = Fraction("3.14159265358979323846264338327950288419716939937510582097494459")

__all__ = [
    "PiScalar",
    "Poly",
    "PI",
    "bernoulli_numbers",
    "bernoulli_poly",
    "norlund_poly",
    "modified_norlund",
    "harmonic",
    "stirling_first",
    "binom_poly",
    "chebyshev",
    "forward_difference",
    "antiderivative",
    "airault_Q",
    "choi_p",
    "p_polys",
]


class PiScalar:
    """Exact scalar ``sum_k r_k * pi**k`` with rational ``r_k``, ``k`` in Z."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in dict(coeffs).items():
                v = Fraction(v)
                if v:
                    c[int(k)] = v
        self._c = c

    @classmethod
    def lift(cls, value) -> "PiScalar":
        if isinstance(value, PiScalar):
            return value
        return cls({0: value})

    @classmethod
    def pi_power(cls, k: int, coeff=1) -> "PiScalar":
        return cls({k: coeff})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiScalar.lift(other)
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __neg__(self):
        return PiScalar({k: -v for k, v in self._c.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiScalar.lift(other)
        if not isinstance(other, PiScalar):
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return PiScalar(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-PiScalar.lift(other))

    def __rsub__(self, other):
        return PiScalar.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return PiScalar()
            return PiScalar({k: v * other for k, v in self._c.items()})
        if not isinstance(other, PiScalar):
            return NotImplemented
        c: dict = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                c[k1 + k2] = c.get(k1 + k2, 0) + v1 * v2
        return PiScalar(c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division only by rationals or single pi-monomials
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, PiScalar) and len(other._c) == 1:
            (k, v), = other._c.items()
            return self * PiScalar({-k: 1 / v})
        raise ZeroDivisionError("PiScalar division only by a monomial")

    def __float__(self):
        # exact sum against a 60-digit rational pi, then one rounding; summing
        # float terms cancels badly for high-order coefficients
        return float(sum((v * _PI_RATIONAL**k for k, v in self._c.items()), Fraction(0)))

    def __repr__(self):
        return f"PiScalar({self})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c):
            v = self._c[k]
            parts.append(f"{v}*pi^{k}" if k else f"{v}")
        return " + ".join(parts)


PI = PiScalar.pi_power(1)

Scalar = Union[int, Fraction, PiScalar]


def _is_zero(c) -> bool:
    return not c


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``var**i``.

    Coefficients may be ``Fraction`` or :class:`PiScalar`; trailing zeros
    are stripped so ``degree == len(coeffs) - 1`` (the zero polynomial has
    degree -1 and no coefficients).
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [c if isinstance(c, PiScalar) else Fraction(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, n: int, coeff=1, var: str = "x") -> "Poly":
        return cls([0] * n + [coeff], var)

    @classmethod
    def const(cls, c, var: str = "x") -> "Poly":
        return cls([c], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PiScalar)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other], self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return Poly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = a * b + out[i + j]
        return Poly(out, self.var)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out = Poly([1], self.var)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a number, Fraction or Poly."""
        acc = Poly([], self.var) if isinstance(x, Poly) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        p = self
        for _ in range(order):
            p = Poly([i * c for i, c in enumerate(p.coeffs)][1:], p.var)
        return p

    def shift(self, h) -> "Poly":
        """The polynomial ``x -> p(x + h)``."""
        return self(Poly([h, 1], self.var))

    def integrate(self) -> "Poly":
        """Antiderivative vanishing at 0."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)], self.var)

    def to_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            c_str = str(c)
            if isinstance(c, PiScalar) and len(c.coeffs) > 1:
                c_str = f"({c_str})"
            if i == 0:
                terms.append(c_str)
            elif i == 1:
                terms.append(f"{c_str}*{self.var}")
            else:
                terms.append(f"{c_str}*{self.var}^{i}")
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# Bernoulli / Norlund family
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_tuple(n_max: int) -> tuple:
    B = [Fraction(1)]
    for n in range(1, n_max + 1):
        s = sum(comb(n + 1, k) * B[k] for k in range(n))
        B.append(-s / (n + 1))
    return tuple(B)


def bernoulli_numbers(n_max: int) -> list:
    """Return ``[B_0, ..., B_{n_max}]`` with ``B_1 = -1/2``.

    Uses ``sum_{k<=n} C(n+1, k) B_k = 0``, which is exact and O(n^2).
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return list(_bernoulli_tuple(n_max))


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> Poly:
    """Bernoulli polynomial ``B_n(x) = sum_k C(n,k) B_k x^(n-k)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    B = _bernoulli_tuple(n)
    return Poly([comb(n, k) * B[n - k] for k in range(n + 1)])


@lru_cache(maxsize=None)
def _norlund_table(n_max: int) -> tuple:
    # g = f**alpha with f = z/(e^z - 1) = sum b_k z^k, b_0 = 1.
    # J.C.P. Miller: n g_n = sum_{k=1}^n ((alpha+1) k - n) b_k g_{n-k}.
    B = _bernoulli_tuple(n_max)
    b = [B[k] / factorial(k) for k in range(n_max + 1)]
    alpha = Poly([0, 1], "alpha")
    g = [Poly([1], "alpha")]
    for n in range(1, n_max + 1):
        acc = Poly([], "alpha")
        for k in range(1, n + 1):
            if not b[k]:
                continue
            weight = (alpha + 1) * k - n
            acc = acc + weight * g[n - k] * b[k]
        g.append(acc * Fraction(1, n))
    return tuple(g[n] * factorial(n) for n in range(n_max + 1))


def norlund_poly(n: int) -> Poly:
    """Norlund polynomial ``B_n^(alpha)`` as an exact polynomial in ``alpha``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _norlund_table(n)[n]


def modified_norlund(n: int, alpha=None):
    """Modified Norlund value ``sum_r C(n+r, 2r) B_r^(alpha) / (n+r)``.

    ``alpha`` may be a rational (returns a Fraction), a :class:`Poly`
    (returns the composed Poly) or ``None`` (returns the polynomial in
    ``alpha`` itself).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    table = _norlund_table(n)
    total = Poly([], "alpha")
    for r in range(n + 1):
        total = total + table[r] * Fraction(comb(n + r, 2 * r), n + r)
    if alpha is None:
        return total
    if isinstance(alpha, Poly):
        return total(alpha)
    return total(Fraction(alpha))


def harmonic(n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple:
    # coefficients of the falling factorial x(x-1)...(x-n+1)
    row = [1]
    for j in range(n):
        nxt = [0] * (len(row) + 1)
        for k, c in enumerate(row):
            nxt[k + 1] += c
            nxt[k] -= j * c
        row = nxt
    return tuple(row)


def stirling_first(n: int, k: int) -> Fraction:
    """Signed Stirling number of the first kind ``s(n, k)``; zero off range."""
    if n < 0 or k < 0:
        raise ValueError("indices must be non-negative")
    if k > n:
        return Fraction(0)
    return Fraction(_stirling_row(n)[k])


def binom_poly(p: int, ell: int) -> Poly:
    """``binom(x + p, ell)`` as a polynomial in ``x``."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    out = Poly([1])
    for j in range(ell):
        out = out * Poly([p - j, 1])
    return out * Fraction(1, factorial(ell))


@lru_cache(maxsize=None)
def chebyshev(kind: str, n: int) -> Poly:
    """Chebyshev ``T_n`` (``kind='first'``) or ``U_n`` (``kind='second'``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if kind not in ("first", "second"):
        raise ValueError(f"unknown Chebyshev kind {kind!r}")
    x2 = Poly([0, 2])
    prev, cur = Poly([1]), (Poly([0, 1]) if kind == "first" else Poly([0, 2]))
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, x2 * cur - prev
    return cur


def forward_difference(f: Union[Poly, Callable], order: int, x=None):
    """``Delta^order f`` with ``Delta f(x) = f(x+1) - f(x)``.

    For a :class:`Poly` the result is the exact polynomial (``x`` ignored,
    or used as an evaluation point when given).  For a callable the
    binomial sum ``sum_j (-1)^(order-j) C(order,j) f(x+j)`` is evaluated
    at ``x``.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if isinstance(f, Poly):
        out = Poly([], f.var)
        for j in range(order + 1):
            out = out + f.shift(j) * ((-1) ** (order - j) * comb(order, j))
        return out if x is None else out(x)
    if x is None:
        raise ValueError("a callable needs an evaluation point")
    return sum((-1) ** (order - j) * comb(order, j) * f(x + j) for j in range(order + 1))


def antiderivative(p: Poly, order: int = 1) -> Poly:
    for _ in range(order):
        p = p.integrate()
    return p


def airault_Q(k: int) -> Poly:
    """``Q_k`` with coefficients in Q[pi^2] (as PiScalar)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    one = PiScalar.lift(1)
    out = Poly([one])
    if k % 2 == 0:
        for j in range(1, k, 2):
            out = out * Poly([PiScalar.pi_power(2, Fraction(j * j, 4)), PiScalar(), one])
    else:
        out = out * Poly([PiScalar(), one])
        for j in range(1, (k - 1) // 2 + 1):
            out = out * Poly([PiScalar.pi_power(2, j * j), PiScalar(), one])
    return out


def choi_p(ell: int, j: int) -> Poly:
    """Coefficient polynomial ``p_{ell,j}(w)`` reducing equal-parameter Barnes
    zeta to Hurwitz zeta."""
    if ell < 1 or not 0 <= j <= ell - 1:
        raise ValueError("need ell >= 1 and 0 <= j <= ell-1")
    sign = (-1) ** (ell + 1 - j)
    cs = [Fraction(0)] * ell
    for m in range(j, ell):
        cs[m - j] += comb(m, j) * stirling_first(ell, m + 1)
    return Poly([sign * c / factorial(ell - 1) for c in cs], "w")


def p_polys(ell: int) -> tuple:
    """``(prod_{j<ell} (u^2 + j^2), prod_{j<=ell} (u^2 + (j - 1/2)^2))``."""
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    P1 = Poly([1], "u")
    for j in range(1, ell):
        P1 = P1 * Poly([j * j, 0, 1], "u")
    P2 = Poly([1], "u")
    for j in range(1, ell + 1):
        P2 = P2 * Poly([(Fraction(2 * j - 1, 2)) ** 2, 0, 1], "u")
    return P1, P2
