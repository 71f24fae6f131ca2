"""Compare the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--n 20000] [--repeat 5] [--k 2 3 5]
"""
import argparse
import timeit

import numpy as np

from starroots._kernels import available_backends


def _cases(n, ks, rng):
    W = rng.normal(size=(n, 4)) + 1j * rng.normal(size=(n, 4))
    V = rng.normal(size=(n, 4)) + 1j * rng.normal(size=(n, 4))
    x = np.ascontiguousarray(W[:, 0])
    ysq = np.ascontiguousarray((W[:, 1:] ** 2).sum(1))
    coeffs = rng.normal(size=(6, 4)) + 0j
    z = np.ascontiguousarray(rng.normal(size=n) + 1j * rng.normal(size=n))
    yield "cmul", lambda m: m.cmul(W, V)
    yield "horner deg 5", lambda m: m.horner(coeffs, z)
    for k in ks:
        yield f"p_pair k={k}", lambda m, k=k: m.p_pair(k, x, ysq)
        yield f"sigma_k k={k}", lambda m, k=k: m.sigma_k(W, k)
        yield f"star_roots k={k}", lambda m, k=k: m.star_roots(W[: max(1, n // 10)], k)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000, help="rows per call")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = available_backends()
    names = sorted(backends)
    rng = np.random.default_rng(args.seed)
    header = f"{'kernel':<20}" + "".join(f"{name + ' ms':>14}" for name in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(f"n = {args.n}, best of {args.repeat}")
    print(header)
    for label, fn in _cases(args.n, args.k, rng):
        times = {}
        for name in names:
            mod = backends[name]
            fn(mod)  # warm up
            times[name] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)) * 1e3
        row = f"{label:<20}" + "".join(f"{times[name]:>14.3f}" for name in names)
        if len(names) == 2:
            row += f"{times['numpy'] / times['cython']:>9.1f}x"
        print(row)
    if len(names) == 1:
        print("compiled kernels not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
