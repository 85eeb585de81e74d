"""Compare the Hausdorff kernels: compiled scan, pure-Python scan, brute force, k-d tree.

    python3 benchmarks/bench_hausdorff.py [--sizes 64 256 1024] [--dim 3] [--repeat 3]
"""
import argparse
import math
import time

import numpy as np

from mvfix import _backend
from mvfix.hausdorff import FiniteSet, hausdorff, hausdorff_accelerated
from mvfix.metric import Euclidean, Point


def timed(fn, repeat):
    best = math.inf
    value = None
    for _ in range(repeat):
        t = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t)
    return best, value


def python_scan(a, b):
    la, lb = a.tolist(), b.tolist()
    k = _backend.python_kernel
    return math.sqrt(max(k(la, lb, False), k(lb, la, False)))


def compiled_scan(a, b):
    k = _backend.compiled_kernel
    return math.sqrt(max(k(a, b, False), k(b, a, False)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024, 4096])
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--brute-max", type=int, default=1024, help="skip the brute-force oracle above this size")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    metric = Euclidean()
    print(f"backend={_backend.BACKEND}  dim={args.dim}  best of {args.repeat}")
    print(f"{'n':>6} {'compiled':>10} {'python':>10} {'brute':>10} {'kdtree':>10} {'auto':>10}  max|diff|")
    for n in args.sizes:
        a = rng.uniform(-1, 1, size=(n, args.dim))
        b = rng.uniform(-1, 1, size=(n, args.dim)) + 0.05
        A = FiniteSet(Point.dense(r) for r in a.tolist())
        B = FiniteSet(Point.dense(r) for r in b.tolist())
        rows, values = {}, []
        if _backend.compiled_kernel is not None:
            rows["compiled"], v = timed(lambda: compiled_scan(a, b), args.repeat)
            values.append(v)
        rows["python"], v = timed(lambda: python_scan(a, b), args.repeat)
        values.append(v)
        if n <= args.brute_max:
            rows["brute"], v = timed(lambda: hausdorff(metric, A, B), 1)
            values.append(v)
        rows["kdtree"], v = timed(lambda: hausdorff_accelerated(metric, A, B, index="kdtree"), args.repeat)
        values.append(v)
        rows["auto"], v = timed(lambda: hausdorff_accelerated(metric, A, B), args.repeat)
        values.append(v)
        fmt = lambda k: f"{rows[k] * 1e3:9.2f}ms" if k in rows else f"{'-':>10}"
        spread = max(values) - min(values)
        print(f"{n:>6} {fmt('compiled')} {fmt('python')} {fmt('brute')} {fmt('kdtree')} {fmt('auto')}  {spread:.1e}")


if __name__ == "__main__":
    main()
