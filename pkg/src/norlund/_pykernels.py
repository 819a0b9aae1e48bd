"""Pure numpy implementations of the hot numeric kernels.

Same signatures and semantics as the compiled ``_ckernels`` module; used
when the extension is unavailable or ``NORLUND_PURE_PYTHON`` is set.
"""

import math

import numpy as np

# B_2, B_4, ..., B_20
BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)

# Euler-Maclaurin: corrections through B_12
EM_TERMS = 6


def horner2d(coeffs, s, v):
    """Evaluate ``sum_{j,d} coeffs[j, d] * s**d * v**j`` elementwise."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    out = np.zeros(np.broadcast(s, v).shape)
    for j in range(coeffs.shape[0] - 1, -1, -1):
        row = np.zeros_like(out)
        for d in range(coeffs.shape[1] - 1, -1, -1):
            row = row * s + coeffs[j, d]
        out = out * v + row
    return out


def _shift_count(s, w):
    radius = max(10.0, 2.0 * s)
    im2 = w.imag * w.imag
    need = np.sqrt(np.maximum(radius * radius - im2, 0.0)) - w.real
    return np.where(im2 >= radius * radius, 0, np.maximum(np.ceil(need), 0)).astype(np.int64)


def hurwitz_zeta(s, w):
    """Hurwitz zeta ``sum_{n>=0} (n + w)^-s`` for integer ``s >= 2``, ``Re w > 0``."""
    s = int(s)
    w = np.atleast_1d(np.asarray(w, dtype=np.complex128))
    M = _shift_count(s, w)
    out = np.zeros(w.shape, dtype=np.complex128)
    for n in range(int(M.max(initial=0))):
        active = n < M
        out[active] += (n + w[active]) ** (-s)
    a = w + M
    inv = 1.0 / a
    out += a ** (1 - s) / (s - 1) + 0.5 * inv**s
    # B_{2k}/(2k)! * s(s+1)...(s+2k-2) * a^(-s-2k+1)
    term = inv**s * inv  # a^(-s-1)
    rising = float(s)
    fact = 2.0
    for k in range(1, EM_TERMS + 1):
        out += BERNOULLI_EVEN[k - 1] / fact * rising * term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        fact *= (2 * k + 1) * (2 * k + 2)
        term = term * inv * inv
    return out


def polygamma(k, x):
    """``psi^(k)(x)`` for ``x > 0``: upward recurrence, then asymptotic series."""
    k = int(k)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64)).copy()
    threshold = 8.0 + 2.0 * k
    acc = np.zeros_like(x)
    kfact = math.factorial(k)
    sign = -1.0 if k % 2 else 1.0  # (-1)^k
    while True:
        low = x < threshold
        if not low.any():
            break
        # psi^(k)(x) = psi^(k)(x+1) - (-1)^k k! x^(-k-1)
        acc[low] -= sign * kfact * x[low] ** (-k - 1)
        x[low] += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    if k == 0:
        series = np.log(x) - 0.5 * inv
        p = inv2.copy()
        for n in range(1, len(BERNOULLI_EVEN) + 1):
            series -= BERNOULLI_EVEN[n - 1] / (2 * n) * p
            p = p * inv2
        return acc + series
    # (-1)^(k+1) [ (k-1)!/x^k + k!/(2 x^(k+1)) + sum B_2n (2n+k-1)!/(2n)! x^-(2n+k) ]
    series = math.factorial(k - 1) * inv**k + 0.5 * kfact * inv ** (k + 1)
    p = inv ** (k + 2)
    for n in range(1, len(BERNOULLI_EVEN) + 1):
        c = math.factorial(2 * n + k - 1) / math.factorial(2 * n)
        series += BERNOULLI_EVEN[n - 1] * c * p
        p = p * inv2
    return acc - sign * series
