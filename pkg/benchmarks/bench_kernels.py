"""Compiled kernels versus the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the best-of-N wall time of each backend,
the speedup and the largest relative disagreement between them, followed
by an end-to-end timing of a density-heavy workload under each backend.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from norlund import kernels
from norlund.hyperbolic import rho_closed_form

WORKLOAD = (
    "from norlund.verify import run_identity;"
    "[run_identity(i) for i in ('density-methods', 'log-moment', 'hurwitz-sums')]"
)


def _cases():
    rng = np.random.default_rng(0)
    table = rho_closed_form(6)._compiled().eps[1]
    s = rng.uniform(1.2, 30.0, 20000)
    eps = 2.0 * np.exp(-2.0 * s) / (1.0 + np.exp(-2.0 * s))
    w = rng.uniform(0.5, 4.0, 2000) + 1j * rng.uniform(0.0, 40.0, 2000)
    x = rng.uniform(0.1, 30.0, 20000)
    return [
        ("horner2d (rho_6 table, 20k points)", "horner2d", (table, s, eps)),
        ("hurwitz_zeta s=4 (2k complex points)", "hurwitz_zeta", (4, w)),
        ("polygamma k=3 (20k points)", "polygamma", (3, x)),
    ]


def _best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def _workload_time(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("NORLUND_PURE_PYTHON", None)
    if pure:
        env["NORLUND_PURE_PYTHON"] = "1"
    code = f"import time; t = time.perf_counter(); {WORKLOAD}; print(time.perf_counter() - t)"
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True, capture_output=True, text=True)
    return float(out.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled extension not available; build it with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':42s} {'cython [s]':>11s} {'numpy [s]':>11s} {'speedup':>8s} {'max rel diff':>13s}")
    for label, name, a in _cases():
        fc = getattr(kernels.compiled_backend, name)
        fp = getattr(kernels.python_backend, name)
        tc, tp = _best(fc, a, args.repeat), _best(fp, a, args.repeat)
        rc, rp = fc(*a), fp(*a)
        diff = float(np.max(np.abs(rc - rp) / np.maximum(np.abs(rp), 1e-300)))
        print(f"{label:42s} {tc:11.5f} {tp:11.5f} {tp / tc:8.1f} {diff:13.2e}")
    tc, tp = _workload_time(False), _workload_time(True)
    print(f"{'workload: density/log-moment/hurwitz checks':42s} {tc:11.3f} {tp:11.3f} {tp / tc:8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
