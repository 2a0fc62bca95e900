"""Compare the compiled and pure-Python kernels.

Times the two banded solvers on random diagonally dominant systems and one
full convergence level (J=160, N=320) of the manufactured semicircle.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from curveflow import example1, kernels, run_with_errors


def _tridiag(n, rng):
    sub = rng.uniform(-1, 1, n - 1)
    sup = rng.uniform(-1, 1, n - 1)
    diag = 3.0 + rng.uniform(0, 1, n)
    return sub, diag, sup, rng.standard_normal(n)


def _block(n, rng):
    sub = rng.uniform(-1, 1, (n - 1, 2, 2))
    sup = rng.uniform(-1, 1, (n - 1, 2, 2))
    diag = rng.uniform(-0.5, 0.5, (n, 2, 2)) + 6.0 * np.eye(2)
    return sub, diag, sup, rng.standard_normal((n, 2))


def bench(repeat):
    rng = np.random.default_rng(0)
    cases = {
        "tridiag n=2000": ("solve_tridiag", _tridiag(2000, rng)),
        "block n=2000": ("solve_block_tridiag", _block(2000, rng)),
    }
    results = {}
    for name, mod in kernels.backends().items():
        for label, (fn, args) in cases.items():
            f = getattr(mod, fn)
            results[(label, name)] = min(timeit.repeat(lambda: f(*args), number=1, repeat=repeat))
        scen = example1()
        results[("level J=160 N=320", name)] = min(timeit.repeat(
            lambda: run_with_errors(scen, 160, 320, 0.8, 1.0, backend=name), number=1,
            repeat=max(1, repeat // 2)))
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    results = bench(args.repeat)
    names = list(kernels.backends())
    labels = sorted({k[0] for k in results})
    print(f"{'case':<20}" + "".join(f"{n:>12}" for n in names) + "     speedup")
    for label in labels:
        times = [results[(label, n)] for n in names]
        line = f"{label:<20}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if "cython" in names:
            line += f"  {results[(label, 'python')] / results[(label, 'cython')]:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
