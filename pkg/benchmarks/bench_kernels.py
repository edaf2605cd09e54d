"""Time the compiled channel kernel against the numpy reference.

Usage: python benchmarks/bench_kernels.py [n_points] [repeats]
"""

import sys
import time

import numpy as np

from omrouter.kernels import reference
from omrouter.operating_point import default_params, derive_operating_point

try:
    from omrouter.kernels import _fast
except ImportError:
    _fast = None


def _best_of(func, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        func(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv):
    n = int(argv[1]) if len(argv) > 1 else 2_000_000
    repeats = int(argv[2]) if len(argv) > 2 else 5

    op = derive_operating_point(default_params())
    grid = np.linspace(0.5 * op.mech_freq, 1.5 * op.mech_freq, n)
    args = (grid, op.eff_mass, op.mech_freq, op.gamma_m, op.cavity_decay,
            op.eff_detuning, op.g ** 2 * op.n_cav, op.hbar,
            op.kB * op.bath_temp)

    t_ref = _best_of(reference.channel_arrays, args, repeats)
    print(f"grid points          : {n}")
    print(f"reference (numpy)    : {t_ref * 1e3:9.3f} ms")

    if _fast is None:
        print("compiled (_fast)     : not built")
        return 0

    t_fast = _best_of(_fast.channel_arrays, args, repeats)
    print(f"compiled  (cython)   : {t_fast * 1e3:9.3f} ms")
    print(f"speedup              : {t_ref / t_fast:9.2f}x")

    worst = 0.0
    for a, b in zip(reference.channel_arrays(*args), _fast.channel_arrays(*args)):
        scale = np.maximum(np.abs(a), 1e-300)
        worst = max(worst, float(np.max(np.abs(a - b) / scale)))
    print(f"max relative mismatch: {worst:9.3e}")
    return 0 if worst < 1e-12 else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv))
