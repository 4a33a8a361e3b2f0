"""Compare the compiled polynomial kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--vars 3] [--degree 4]

Also times one end-to-end suite with each backend (each in a fresh interpreter,
since the backend is chosen at import).
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from gerstkit import _kernels_py as pure

try:
    from gerstkit import _kernels as compiled
except ImportError:
    compiled = None


def random_terms(rng, nvars, degree, nterms, frac=False):
    out = {}
    for _ in range(nterms):
        e = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(nvars)] += 1
        c = rng.choice((1, -1, 2, -3, 5))
        if frac and rng.random() < 0.3:
            c = Fraction(c, rng.choice((2, 3)))
        out[tuple(e)] = pure.norm(out.get(tuple(e), 0) + c)
    return {k: v for k, v in out.items() if v}


def bench_kernels(repeat, nvars, degree):
    rng = random.Random(7)
    cases = {
        "int": [(random_terms(rng, nvars, degree, 12), random_terms(rng, nvars, degree, 12)) for _ in range(50)],
        "fraction": [(random_terms(rng, nvars, degree, 12, True), random_terms(rng, nvars, degree, 12, True))
                     for _ in range(50)],
    }
    rows = []
    for label, pairs in cases.items():
        for op in ("mul_terms", "add_terms", "diff_terms"):
            def run(mod, op=op, pairs=pairs):
                f = getattr(mod, op)
                for a, b in pairs:
                    f(a, 0) if op == "diff_terms" else f(a, b)
            t_py = min(timeit.repeat(lambda: run(pure), number=20, repeat=repeat))
            t_c = min(timeit.repeat(lambda: run(compiled), number=20, repeat=repeat)) if compiled else float("nan")
            rows.append((f"{op} ({label})", t_py, t_c))
    return rows


def bench_suite():
    code = ("import time; from gerstkit.suites import RunConfig, run_verify; t=time.perf_counter(); "
            "r=run_verify(RunConfig(algebroid='standard(3)', suites=('gerstenhaber','squares'), trials=30)); "
            "assert r.passed; print(time.perf_counter()-t)")
    out = {}
    for label, pure_flag in (("python", "1"), ("compiled", "")):
        env = dict(os.environ, GERSTKIT_PURE=pure_flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        out[label] = float(res.stdout.strip())
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--vars", type=int, default=3)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--no-suite", action="store_true", help="skip the end-to-end timing")
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':28s} {'python [s]':>11s} {'compiled [s]':>13s} {'speedup':>8s}")
    for name, tp, tc in bench_kernels(args.repeat, args.vars, args.degree):
        print(f"{name:28s} {tp:11.4f} {tc:13.4f} {tp / tc:7.2f}x")
    if not args.no_suite:
        t = bench_suite()
        print(f"{'suite gerstenhaber+squares':28s} {t['python']:11.2f} {t['compiled']:13.2f} "
              f"{t['python'] / t['compiled']:7.2f}x")


if __name__ == "__main__":
    main()
