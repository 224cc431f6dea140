"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S] [--quick]

Every workload is run through both backends; results must agree exactly
before timings are reported.
"""
import argparse
import random
import sys
import time

from staralg.kernels import use_backend


def _hermitian_gram(rng, n, rank, bound):
    """Integer Hermitian Gram matrix B^H B (PSD of the given rank)."""
    br = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(rank)]
    bi = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(rank)]
    re = [[sum(br[k][i] * br[k][j] + bi[k][i] * bi[k][j] for k in range(rank)) for j in range(n)] for i in range(n)]
    im = [[sum(br[k][i] * bi[k][j] - bi[k][i] * br[k][j] for k in range(rank)) for j in range(n)] for i in range(n)]
    return re, im


def workloads(seed, quick):
    rng = random.Random(seed)
    count = 20 if quick else 200

    def ints(r, c, b):
        return [[rng.randint(-b, b) for _ in range(c)] for _ in range(r)]

    yield "rref real 8x12", "ff_rref_real", [(ints(8, 12, 5), 12) for _ in range(count)]
    yield "rref complex 6x8", "ff_rref_complex", [(ints(6, 8, 3), ints(6, 8, 3), 8) for _ in range(count)]
    yield "hermitian indefinite 8x8", "ff_hermitian", [_sym(rng, 8, 2) for _ in range(count)]
    yield "hermitian PSD 6x6 rank 4", "ff_hermitian", [_hermitian_gram(rng, 6, 4, 1) for _ in range(count)]
    # the next two overflow int64, so the compiled kernel replays them in Python
    yield "hermitian PSD 8x8 rank 5 (fallback)", "ff_hermitian", [_hermitian_gram(rng, 8, 5, 3) for _ in range(count)]
    yield "hermitian PSD 6x6 large (fallback)", "ff_hermitian", [_hermitian_gram(rng, 6, 6, 10 ** 5) for _ in range(count // 4 or 1)]


def _sym(rng, n, b):
    re = [[0] * n for _ in range(n)]
    im = [[0] * n for _ in range(n)]
    for i in range(n):
        re[i][i] = rng.randint(-b, b)
        for j in range(i + 1, n):
            re[i][j] = re[j][i] = rng.randint(-b, b)
            im[i][j] = rng.randint(-b, b)
            im[j][i] = -im[i][j]
    return re, im


def _time(fn, cases, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = [fn(*c) for c in cases]
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--quick", action="store_true", help="small workloads (smoke test)")
    ns = ap.parse_args(argv)
    py = use_backend("python")
    try:
        cy = use_backend("cython")
    except ImportError:
        print("compiled backend not built; nothing to compare")
        return 0
    print(f"{'workload':38} {'cases':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, name, cases in workloads(ns.seed, ns.quick):
        tp, rp = _time(getattr(py, name), cases, ns.repeat)
        tc, rc = _time(getattr(cy, name), cases, ns.repeat)
        if rp != rc:
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        print(f"{label:38} {len(cases):>6} {tp * 1e3:>10.2f} {tc * 1e3:>10.2f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
