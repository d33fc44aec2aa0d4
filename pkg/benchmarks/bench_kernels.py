"""Time the numba kernels against the numpy fallback on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both implementations are imported directly, so the SYMEXT_BACKEND flag does
not matter here.  The numba column excludes compilation (one warm-up call).
"""
from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from symext import _kernels
from symext.corpus import lemma_instances, small_posets
from symext.homogeneity import _encode, default_width, perm_table


def _lemma_inputs(count: int, width: int):
    out = []
    for L in lemma_instances(3, 4, 1, width, False):
        if L.levels() >= 3:
            out.append(_encode(L))
        if len(out) == count:
            break
    return out


def _random_preorders(rng: random.Random, n: int, count: int):
    out = []
    for _ in range(count):
        m = np.eye(n, dtype=np.bool_)
        for i in range(n):
            for j in range(n):
                if rng.random() < 0.2:
                    m[i, j] = True
        out.append(m)
    return out


def cases():
    rng = random.Random(0)
    width = 5
    perms = perm_table(width)
    lemma = _lemma_inputs(200, width)
    preorders = _random_preorders(rng, 24, 50)
    closed = [P.matrix for P in small_posets(4)]

    def lemma_table(impl):
        for q, qp, base, fmin in lemma:
            ok = impl.lemma_level_table(perms, q, qp, base, fmin, 1)
            impl.first_product(ok)

    def violations(impl):
        for m in preorders:
            impl.preorder_violations(m)

    def compat(impl):
        for m in closed:
            impl.compat_matrix(m)

    return {
        f"lemma_level_table (200 instances, S_{width})": lemma_table,
        "preorder_violations (50 x 24 points)": violations,
        "compat_matrix (22 small preorders)": compat,
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    impls = {"numpy": _kernels.numpy_impl}
    if _kernels.numba_impl is not None:
        impls["numba"] = _kernels.numba_impl
    print(f"{'kernel':46s}" + "".join(f"{k:>12s}" for k in impls) + "     speedup")
    for label, fn in cases().items():
        times = {}
        for name, impl in impls.items():
            fn(impl)  # warm-up, compiles the numba variant
            times[name] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        row = f"{label:46s}" + "".join(f"{times[k] * 1e3:10.2f}ms" for k in impls)
        if "numba" in times:
            row += f"  {times['numpy'] / times['numba']:8.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
