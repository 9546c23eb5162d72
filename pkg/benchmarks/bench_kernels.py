"""Compare the compiled and pure-Python polynomial kernels.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --degrees 64 256 1024 --repeat 5 --oracle

Each row times one kernel operation on random polynomials of the given degree
and reports the best of ``--repeat`` runs.  ``--oracle`` also times one full
height-oracle Gram matrix under each backend, in a subprocess so that
``MWFORGE_PURE`` takes effect.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from mwforge import _kernels_py
from mwforge.fields import field_ctx_extension

try:
    from mwforge import _kernels as _compiled
except ImportError:  # pragma: no cover
    _compiled = None


def _kernels(p, m):
    F = field_ctx_extension(p, m)
    exp, log, zech = F.tables
    out = {"python": _kernels_py.TableKernel(p, F.order, exp, log, zech)}
    if _compiled is not None:
        out["cython"] = _compiled.TableKernel(p, F.order, exp, log, zech)
    return F, out


def _best(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def bench_ops(fields, degrees, repeat, seed):
    rng = random.Random(seed)
    rows = []
    for p, m in fields:
        F, kernels = _kernels(p, m)
        for deg in degrees:
            a = [rng.randrange(F.order) for _ in range(deg)] + [1]
            b = [rng.randrange(F.order) for _ in range(deg)] + [1]
            g = [rng.randrange(F.order) for _ in range(deg // 4)] + [1]
            ag, bg = kernels["python"].mul(a, g), kernels["python"].mul(b, g)
            prod = kernels["python"].mul(a, b)
            for op, call in (
                ("mul", lambda k: k.mul(a, b)),
                ("divmod", lambda k: k.divmod(prod, b)),
                ("gcd", lambda k: k.gcd(ag, bg)),
            ):
                times = {name: _best(lambda k=k: call(k), repeat) for name, k in kernels.items()}
                rows.append((f"F_{p}^{m}", deg, op, times))
    return rows


_ORACLE_SNIPPET = (
    "import time;"
    "from mwforge.explicit_points import build_family;"
    "from mwforge.heights import oracle_gram;"
    "f = build_family({p}, {n});"
    "s = time.perf_counter();"
    "oracle_gram(f.E, f.points, {iters});"
    "print(time.perf_counter() - s)"
)


def bench_oracle(p, n, iters):
    code = _ORACLE_SNIPPET.format(p=p, n=n, iters=iters)
    out = {}
    for name, pure in (("cython", False), ("python", True)):
        env = dict(os.environ)
        env.pop("MWFORGE_PURE", None)
        if pure:
            env["MWFORGE_PURE"] = "1"
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        out[name] = float(res.stdout.strip())
    return out


def _fmt(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:9.1f} us"
    if seconds < 1:
        return f"{seconds * 1e3:9.2f} ms"
    return f"{seconds:9.2f} s "


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--degrees", type=int, nargs="+", default=[32, 128, 512])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--oracle", action="store_true", help="also time a Gram matrix from the height oracle")
    ap.add_argument("--oracle-p", type=int, default=3)
    ap.add_argument("--oracle-n", type=int, default=1)
    ap.add_argument("--iters", type=int, default=4)
    args = ap.parse_args(argv)

    if _compiled is None:
        print("compiled extension not built; only the pure-Python kernel is timed")
    fields = [(2, 4), (3, 2), (3, 4)]
    print(f"{'field':8} {'deg':>5} {'op':7} {'cython':>12} {'python':>12} {'speedup':>8}")
    for field, deg, op, times in bench_ops(fields, args.degrees, args.repeat, args.seed):
        c, py = times.get("cython"), times["python"]
        speed = f"{py / c:7.1f}x" if c else "      -"
        print(f"{field:8} {deg:5d} {op:7} {_fmt(c) if c else '-':>12} {_fmt(py):>12} {speed}")

    if args.oracle:
        t = bench_oracle(args.oracle_p, args.oracle_n, args.iters)
        print(
            f"\noracle Gram p={args.oracle_p} n={args.oracle_n} iters={args.iters}: "
            f"cython {t['cython']:.2f} s, python {t['python']:.2f} s, speedup {t['python'] / t['cython']:.1f}x"
        )


if __name__ == "__main__":
    main()
