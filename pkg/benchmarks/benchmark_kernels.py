"""Timing comparison between the compiled and fallback propagator kernels.

Runs the same photon-scattering and laser cases through both backends
and reports best-of-N wall times plus the largest output deviation.
"""

import argparse
import time

import numpy as np

from ramanphoton._kernels import COMPILED, _fallback


def photon_args(n_modes, steps):
    det = np.linspace(-20.0, 20.0, n_modes)
    rng = np.random.default_rng(5)
    a0 = rng.normal(size=n_modes) + 1j * rng.normal(size=n_modes)
    a0 /= np.linalg.norm(a0)
    return det, 0.3, 0.4, a0, 1e-3, steps


def laser_args(n_modes, steps):
    det = np.linspace(-20.0, 20.0, n_modes)
    return det, 0.4, 0.5, -0.3, 0.5, 1e-3, steps


def best_time(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def deviation(a, b):
    worst = 0.0
    for left, right in zip(a, b):
        worst = max(worst, float(np.max(np.abs(np.asarray(left) - np.asarray(right)))))
    return worst


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--modes", type=int, default=2001, help="number of field modes")
    parser.add_argument("--steps", type=int, default=5000, help="integrator steps")
    parser.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    args = parser.parse_args(argv)
    if args.modes < 3 or args.steps < 1 or args.repeat < 1:
        parser.error("modes, steps, and repeat must be positive (modes >= 3)")

    cases = [
        ("photon", "rk4_photon", photon_args(args.modes, args.steps)),
        ("laser n=0", "rk4_laser_n0", laser_args(args.modes, args.steps)),
    ]

    if not COMPILED:
        print("compiled backend unavailable; timing the fallback only")
        for label, name, case in cases:
            elapsed, _ = best_time(getattr(_fallback, name), case, args.repeat)
            print(f"{label:<10} fallback {elapsed * 1e3:8.1f} ms")
        return 0

    from ramanphoton._kernels import _core

    print(f"modes={args.modes} steps={args.steps} best of {args.repeat}")
    for label, name, case in cases:
        t_core, r_core = best_time(getattr(_core, name), case, args.repeat)
        t_fall, r_fall = best_time(getattr(_fallback, name), case, args.repeat)
        print(
            f"{label:<10} core {t_core * 1e3:8.1f} ms   fallback {t_fall * 1e3:8.1f} ms"
            f"   speedup {t_fall / t_core:5.1f}x   max dev {deviation(r_core, r_fall):.2e}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
