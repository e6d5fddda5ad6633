"""Time the per-matrix and PER-law kernels on each available backend.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from setoidw import derived, kernels
from setoidw.setoid import codiscrete
from setoidw.wtypes import _encode, enumerate_trees

WORKLOADS = [
    ("bintree depth 4", derived.bintree_signature().family, 4),
    ("nonext depth 4", derived.nonext_signature().family, 4),
    ("list{a,b,c} depth 5", derived.list_signature(codiscrete("abc")).family, 5),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"backends: {sorted(kernels.BACKENDS)}")
    print(f"{'workload':24} {'trees':>6} {'kernel':>10} " +
          " ".join(f"{b + ' ms':>12}" for b in sorted(kernels.BACKENDS)) + f" {'speedup':>8}")
    for label, B, d in WORKLOADS:
        trees = enumerate_trees(B, d, limit=10**5)
        enc = _encode(B, trees)
        m = kernels.get("python").per_matrix(*enc)
        for kname in ("per_matrix", "per_law_violations"):
            times = {}
            for bname in sorted(kernels.BACKENDS):
                impl = kernels.get(bname)
                fn = getattr(impl, kname)
                call = (lambda: fn(*enc)) if kname == "per_matrix" else (lambda: fn(m))
                times[bname] = min(timeit.repeat(call, number=1, repeat=args.repeat)) * 1e3
            if "cython" in times:
                a = kernels.get("python").per_matrix(*enc)
                b = kernels.get("cython").per_matrix(*enc)
                assert np.array_equal(a, b), "backends disagree"
            speed = (f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else "")
            print(f"{label:24} {len(trees):6} {kname[:10]:>10} " +
                  " ".join(f"{times[b]:12.2f}" for b in sorted(times)) + f" {speed}")


if __name__ == "__main__":
    main()
