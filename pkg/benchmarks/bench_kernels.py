"""Time the grid kernel backends on the default 257x257 grid.

    python3 benchmarks/bench_kernels.py [--repeat N] [--size N] [--power W]
"""
import argparse
import timeit

import numpy as np

from dqcap import AdditiveGaussian, GridSpec, PowerBudget
from dqcap.kernels import available_backends
from dqcap.optimizer import evaluate_grid, initial_grid, search


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20)
    parser.add_argument("--size", type=int, default=257)
    parser.add_argument("--power", type=float, default=50.0)
    args = parser.parse_args(argv)

    channel = AdditiveGaussian(0.7, 1.3, 0.9)
    budget = PowerBudget(args.power)
    grid = GridSpec(args.size, args.size)
    _, sig_p, sig_q, log_aspect = initial_grid(budget, grid)

    backends = available_backends()
    outputs = {}
    print(f"grid {args.size}x{args.size}, {args.repeat} repeats")
    print(f"{'backend':<8} {'eval_grid ms':>13} {'search ms':>10}")
    for name, fn in backends.items():
        outputs[name] = evaluate_grid(channel, sig_p, sig_q, log_aspect, fn)
        t_eval = min(timeit.repeat(
            lambda: evaluate_grid(channel, sig_p, sig_q, log_aspect, fn),
            number=1, repeat=args.repeat))
        t_search = min(timeit.repeat(
            lambda: search(channel, budget, grid, backend=fn),
            number=1, repeat=max(1, args.repeat // 4)))
        print(f"{name:<8} {t_eval * 1e3:13.3f} {t_search * 1e3:10.2f}")

    if "cython" in outputs:
        a, b = outputs["cython"], outputs["python"]
        same = np.array_equal(np.isfinite(a), np.isfinite(b))
        diff = np.max(np.abs(a[np.isfinite(a)] - b[np.isfinite(b)])) if same else np.inf
        print(f"max |cython - python| = {diff:.2e} bits")
    else:
        print("compiled kernel not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
