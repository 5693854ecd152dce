"""Compare the compiled and pure elimination backends on real workloads.

Run `python benchmarks/bench_elim.py`: it re-executes itself once per
backend (LIEINV_PURE=1 forces the pure twin) and prints a side-by-side
table.  The entries are arbitrary-precision integers either way, so the
compiled engine only removes interpreter loop overhead — expect a modest
ratio, not an order of magnitude.
"""

import argparse
import os
import subprocess
import sys
import time


def _workloads():
    from lieinv import catalog
    from lieinv.invariant import phi, psi

    sl2 = catalog.instantiate("sl2")
    g42 = catalog.instantiate("g4.2", {"a": "2"})
    big = catalog.instantiate("L17.7", {"a": "2"})
    return [
        ("psi sl2 (3D)", 20, lambda: psi(sl2)),
        ("phi g4.2(2) (4D)", 10, lambda: phi(g42)),
        ("psi L17.7(2) (17D)", 1, lambda: psi(big)),
        ("phi L17.7(2) (17D)", 1, lambda: phi(big)),
    ]


def run_inner():
    from lieinv.paramlinalg import backend_name

    print("backend\t%s" % backend_name(), flush=True)
    for name, reps, thunk in _workloads():
        best = None
        for _ in range(reps):
            t0 = time.perf_counter()
            thunk()
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        print("%s\t%.4f" % (name, best), flush=True)


def run_outer():
    results = {}
    for pure in ("0", "1"):
        env = dict(os.environ, LIEINV_PURE=pure)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--inner"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        ).stdout
        lines = [l.split("\t") for l in out.strip().splitlines()]
        backend = lines[0][1]
        results[backend] = {name: float(sec) for name, sec in lines[1:]}
    if set(results) != {"pure", "compiled"}:
        print("compiled backend not built; got only: %s" % ", ".join(results))
        return 1
    pure, fast = results["pure"], results["compiled"]
    width = max(len(n) for n in pure)
    print("%-*s  %9s  %9s  %7s" % (width, "workload", "pure", "compiled", "ratio"))
    for name in pure:
        r = pure[name] / fast[name] if fast[name] else float("inf")
        print("%-*s  %8.3fs  %8.3fs  %6.2fx" % (width, name, pure[name], fast[name], r))
    return 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--inner", action="store_true", help="time one backend and exit")
    args = ap.parse_args()
    if args.inner:
        run_inner()
        return 0
    return run_outer()


if __name__ == "__main__":
    raise SystemExit(main())
