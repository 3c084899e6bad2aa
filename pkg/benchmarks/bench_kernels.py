"""Compare the compiled search kernel with the pure-Python one.

    python3 benchmarks/bench_kernels.py [--sizes 250 500 1000] [--seeds 5]

Each backend runs in its own interpreter, since the kernel is picked at import.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import subprocess
import sys
import time


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def child(sizes, seeds, repeat):
    import orthoradial
    from orthoradial.oracle import random_instance
    from orthoradial.rectangulate import rectangulate
    from orthoradial.validity import _kernels, is_valid

    def fresh_is_valid(rep):
        _kernels.pop(rep, None)
        return is_valid(rep)

    rows = []
    for n in sizes:
        reps = [random_instance(n, s) for s in range(seeds)]
        valid = [r for r in reps if is_valid(r).valid]
        rows.append({
            "n": n,
            "is_valid": statistics.median(_best(lambda r=r: fresh_is_valid(r), repeat) for r in reps),
            "two_phase": statistics.median(_best(lambda r=r: rectangulate(r, "two_phase"), 1) for r in valid),
        })
    print(json.dumps({"kernel": orthoradial.KERNEL, "rows": rows}))


def run(backend, args):
    env = dict(os.environ)
    env.pop("ORTHORADIAL_PURE_PYTHON", None)
    if backend == "python":
        env["ORTHORADIAL_PURE_PYTHON"] = "1"
    cmd = [sys.executable, __file__, "--child", "--seeds", str(args.seeds), "--repeat", str(args.repeat),
           "--sizes", *map(str, args.sizes)]
    out = subprocess.run(cmd, env=env, check=True, capture_output=True, text=True).stdout
    return json.loads(out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true")
    args = ap.parse_args()
    if args.child:
        child(args.sizes, args.seeds, args.repeat)
        return

    results = {b: run(b, args) for b in ("cython", "python")}
    if results["cython"]["kernel"] != "cython":
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first", file=sys.stderr)
    print(f"{'n':>6} {'task':>10} {'cython':>10} {'python':>10} {'speedup':>8}")
    for a, b in zip(results["cython"]["rows"], results["python"]["rows"]):
        for task in ("is_valid", "two_phase"):
            print(f"{a['n']:>6} {task:>10} {a[task] * 1000:>8.1f}ms {b[task] * 1000:>8.1f}ms {b[task] / a[task]:>7.1f}x")


if __name__ == "__main__":
    main()
