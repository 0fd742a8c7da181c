"""Compare the compiled and numpy kernels.

    python3 benchmarks/bench_kernels.py [--triples N] [--repeat R] [--json]

Times ``scan_box`` over the default certification grid (per class) and
``y_oracle_batch`` over seeded random triples, for every available backend,
and reports the speedup of each backend relative to the numpy fallback.
"""

import argparse
import json
import sys
import time

import numpy as np

from hankelforge import _backend
from hankelforge.certify import GridSpec
from hankelforge.classes import FunctionClass
from hankelforge.hankel import TAU_FORMS


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def bench(triples, repeat, seed=0):
    axes = GridSpec().axes()
    rng = np.random.default_rng(seed)
    A, B, C = rng.uniform(-3, 3, (3, triples))
    rows = []
    for name, k in sorted(_backend.BACKENDS.items()):
        for cls in FunctionClass:
            form = tuple(TAU_FORMS[cls])
            t, (best, _) = best_of(lambda: k.scan_box(form, *axes, np.inf), repeat)
            rows.append({"kernel": "scan_box", "case": cls.value, "backend": name,
                         "points": GridSpec().size, "seconds": t, "result": best})
        t, (vals, _) = best_of(lambda: k.y_oracle_batch(A, B, C, 64, 64, 3, 21, 4), repeat)
        rows.append({"kernel": "y_oracle_batch", "case": f"{triples} triples", "backend": name,
                     "points": triples, "seconds": t, "result": float(vals.sum())})
    base = {(r["kernel"], r["case"]): r["seconds"] for r in rows if r["backend"] == "python"}
    for r in rows:
        r["speedup"] = base[(r["kernel"], r["case"])] / r["seconds"]
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--triples", type=int, default=5000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = bench(args.triples, args.repeat)
    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
        return 0
    if len(_backend.BACKENDS) < 2:
        print("compiled kernels not built; timing the numpy fallback only")
    print(f"{'kernel':<16}{'case':<18}{'backend':<9}{'seconds':>10}{'speedup':>9}")
    for r in rows:
        print(f"{r['kernel']:<16}{r['case']:<18}{r['backend']:<9}{r['seconds']:>10.4f}{r['speedup']:>8.1f}x")
    # both backends must compute the same numbers
    by = {}
    for r in rows:
        by.setdefault((r["kernel"], r["case"]), []).append(r["result"])
    drift = max(max(v) - min(v) for v in by.values())
    print(f"max result difference across backends: {drift:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
