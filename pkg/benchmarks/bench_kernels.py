"""Timing comparison of the compiled and pure-Python kernel backends.

Runs the four hot kernels on identical fixed-seed inputs through both
implementations, checks they agree, and prints per-call times.

    python3 benchmarks/bench_kernels.py [--n 5000]
"""
import argparse
import time

import numpy as np

from trilor import _kernels_py
from trilor import mink, states

try:
    from trilor import _core
except ImportError:
    _core = None


def make_inputs(n, seed=11):
    rng = np.random.default_rng(seed)
    herms = []
    quartics = []
    mats2 = []
    amps = []
    for i in range(n):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        herms.append(g + g.conj().T)
        c = states.haar_random_state(seed + i)
        amps.append(c)
        lam = mink.lambda_of(states.partial_trace(c, "AB"))
        gam = mink.gamma_of(lam)
        # characteristic coefficients, the production quartic workload
        t1 = float(np.trace(gam))
        t2 = float(np.trace(gam @ gam))
        t3 = float(np.trace(gam @ gam @ gam))
        e2 = 0.5 * (t1 * t1 - t2)
        e3 = (t1 ** 3 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0
        e4 = mink.det4(gam)
        quartics.append((-t1, e2, -e3, e4))
        mats2.append(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    return herms, quartics, mats2, amps


def bench(fn, args_list):
    t0 = time.perf_counter()
    for args in args_list:
        fn(*args)
    return (time.perf_counter() - t0) / len(args_list)


def deviation(x, y):
    if isinstance(x, tuple):
        return max(deviation(a, b) for a, b in zip(x, y))
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    return float(np.max(np.abs(x - y)))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=5000, help="calls per kernel")
    args = parser.parse_args()

    herms, quartics, mats2, amps = make_inputs(args.n)
    cases = [
        ("jacobi_eigh", [(h,) for h in herms]),
        ("quartic_roots", quartics),
        ("svd_2x2", [(m,) for m in mats2]),
        ("hyperdet_contraction", [(c,) for c in amps]),
    ]

    if _core is None:
        print("compiled backend not built; timing pure Python only")
    print(f"{'kernel':22s} {'python us':>10s} {'compiled us':>12s} {'speedup':>8s}")
    for name, inputs in cases:
        t_py = bench(getattr(_kernels_py, name), inputs)
        if _core is None:
            print(f"{name:22s} {t_py * 1e6:10.2f} {'-':>12s} {'-':>8s}")
            continue
        t_c = bench(getattr(_core, name), inputs)
        # agreement spot check on the first input
        dev = deviation(
            getattr(_kernels_py, name)(*inputs[0]),
            getattr(_core, name)(*inputs[0]),
        )
        flag = "" if dev < 1e-10 else f"  DISAGREE {dev:.2e}"
        print(
            f"{name:22s} {t_py * 1e6:10.2f} {t_c * 1e6:12.2f} "
            f"{t_py / t_c:7.1f}x{flag}"
        )


if __name__ == "__main__":
    main()
