"""Floating-point special functions on the positive real axis / right half-plane.

All functions reject non-positive real arguments (``DomainError``); there
is no reflection formula and no analytic continuation in ``s``.
"""

from __future__ import annotations

import math
from math import comb

import numpy as np

from . import kernels
from .exact import binom_poly, choi_p, harmonic, modified_norlund

__all__ = [
    "DomainError",
    "digamma",
    "polygamma",
    "hurwitz_zeta",
    "barnes_zeta",
    "psi_product_derivative",
    "leibniz_rhs",
    "genfun_modified_norlund",
    "genfun_partial_sum",
]


class DomainError(ValueError):
    """Argument outside the supported domain of a special function."""


def _check_positive(x, name="x"):
    arr = np.asarray(x, dtype=np.float64)
    if np.any(~(arr > 0)):
        raise DomainError(f"{name} must be > 0, got {x!r}")
    return arr


def _scalar_or_array(out, like):
    return float(out[0]) if np.ndim(like) == 0 else out


def polygamma(k: int, x):
    """``psi^(k)(x)`` for ``x > 0`` and ``0 <= k <= 12``.

    Accepts scalars or arrays; returns the same kind.
    """
    if not 0 <= k <= 12:
        raise DomainError(f"polygamma order must be in [0, 12], got {k}")
    arr = _check_positive(x)
    return _scalar_or_array(kernels.polygamma(k, np.atleast_1d(arr)), x)


def digamma(x):
    return polygamma(0, x)


def hurwitz_zeta(s: int, w):
    """Hurwitz zeta ``zeta(s, w)`` for integer ``s >= 2`` and ``Re w > 0``.

    Direct summation shifts ``w`` until ``|w + M| >= max(10, 2s)`` and then
    applies Euler-Maclaurin with corrections through ``B_12``.
    """
    if int(s) != s or s < 2:
        raise DomainError(f"s must be an integer >= 2, got {s!r}")
    arr = np.asarray(w, dtype=np.complex128)
    if np.any(~(arr.real > 0)):
        raise DomainError(f"Re(w) must be > 0, got {w!r}")
    out = kernels.hurwitz_zeta(int(s), np.atleast_1d(arr))
    return complex(out[0]) if np.ndim(w) == 0 else out


def barnes_zeta(ell: int, s: int, w):
    """Equal-parameter Barnes zeta ``zeta_ell(s, w | 1, ..., 1)`` for ``s > ell``,
    reduced to a finite combination of Hurwitz zeta values."""
    if ell < 1:
        raise DomainError("ell must be a positive integer")
    if s <= ell:
        raise DomainError(f"need s > ell, got s={s}, ell={ell}")
    warr = np.asarray(w, dtype=np.complex128)
    total = np.zeros(np.shape(warr), dtype=np.complex128)
    for j in range(ell):
        p = choi_p(ell, j)
        pw = np.zeros_like(total)
        for c in reversed(p.coeffs):
            pw = pw * warr + float(c)
        total = total + pw * hurwitz_zeta(s - j, warr)
    return complex(total) if np.ndim(w) == 0 else total


def psi_product_derivative(order: int, poly, shift, x):
    """``d^order/dx^order [poly(x) * psi(x - shift)]`` by the Leibniz rule.

    ``poly`` is an exact :class:`~norlund.exact.Poly`; its derivatives are
    exact and only the polygamma values are floating point.
    """
    arg = np.asarray(x, dtype=np.float64) - float(shift)
    if np.any(~(arg > 0)):
        raise DomainError(f"psi argument x - {shift} must be > 0 (x={x!r})")
    total = np.zeros(np.shape(arg))
    for k in range(order + 1):
        dp = poly.derivative(k)
        if not dp:
            continue
        pv = np.vectorize(dp.to_float, otypes=[float])(x) if np.ndim(x) else dp.to_float(float(x))
        total = total + comb(order, k) * pv * polygamma(order - k, arg)
    return float(total) if np.ndim(x) == 0 else total


def leibniz_rhs(ell: int, x):
    """``-H_{ell-1} + d^{ell-1}/dx^{ell-1} [binom(x-1, ell-1) psi(x - floor(ell/2))]``."""
    if ell < 1:
        raise DomainError("ell must be a positive integer")
    P = binom_poly(-1, ell - 1)
    return -float(harmonic(ell - 1)) + psi_product_derivative(ell - 1, P, ell // 2, x)


def genfun_modified_norlund(ell: int, z):
    """Closed form of ``sum_{n>=1} B_n^(ell)* z^n`` for ``0 < z < 1``.

    The series is formal; this is the function it expands asymptotically
    as ``z -> 0``.
    """
    zarr = np.asarray(z, dtype=np.float64)
    if np.any(~((zarr > 0) & (zarr < 1))):
        raise DomainError(f"z must lie in (0, 1), got {z!r}")
    x = zarr + 1.0 / zarr + ell - 2
    out = -0.5 * np.log(zarr) - 0.5 * leibniz_rhs(ell, x if np.ndim(z) else float(x))
    return float(out) if np.ndim(z) == 0 else out


def genfun_partial_sum(ell: int, N: int, z: float) -> float:
    """``sum_{n=1}^N B_n^(ell)* z^n`` with exact coefficients, evaluated in float."""
    return math.fsum(float(modified_norlund(n, ell)) * z**n for n in range(1, N + 1))
