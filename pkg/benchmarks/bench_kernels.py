"""Compare the compiled map kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

Both implementations receive identical permutation arrays taken from
generator outputs; results are checked for equality before timing.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time
import timeit

from foldwidth import _kernels_py as py
from foldwidth.generators import BraidSpec, RibbonSpec, Tube, gen_braid_closure, gen_ribbon, gen_spun_bridge

try:
    from foldwidth import _ckernels as cy
except ImportError:
    cy = None


def workload():
    """Per-component permutation data from a spread of generated diagrams."""
    diagrams = [gen_spun_bridge(m)[0] for m in range(2, 7)]
    diagrams += [gen_braid_closure(BraidSpec(b, r))[0] for b, r in ((2, 2), (3, 4), (4, 6))]
    diagrams.append(gen_ribbon(RibbonSpec(3, (Tube(0, 1, (2,)), Tube(1, 2))))[0])
    out = []
    for d in diagrams:
        for data in d._data:
            ann = [i % 3 for i in range(len(data.darts))]
            out.append((data.sigma, data.alpha, data.opposite, ann))
    return out


def calls(mod, items):
    return {
        "face_orbits": lambda: [mod.face_orbits(s, a) for s, a, _, _ in items],
        "strand_orbits": lambda: [mod.strand_orbits(o, a) for _, a, o, _ in items],
        "min_rooted_code": lambda: [mod.min_rooted_code(s, a, k) for s, a, _, k in items],
    }


def bench(repeat: int) -> int:
    items = workload()
    darts = sum(len(s) for s, _, _, _ in items)
    print(f"workload: {len(items)} components, {darts} darts")
    if cy is None:
        print("compiled kernels unavailable; timing the fallback only")
    mods = {"python": py} if cy is None else {"python": py, "cython": cy}
    table = {name: calls(mod, items) for name, mod in mods.items()}
    for kernel in table["python"]:
        if cy is not None:
            a, b = table["python"][kernel](), table["cython"][kernel]()
            norm = [list(map(list, x)) if kernel == "strand_orbits" else x for x in (a, b)]
            if [repr(x) for x in norm[0]] != [repr(x) for x in norm[1]]:
                print(f"MISMATCH in {kernel}")
                return 1
        times = {name: min(timeit.repeat(fns[kernel], number=20, repeat=repeat)) / 20
                 for name, fns in table.items()}
        line = f"{kernel:16s} python {times['python'] * 1e3:9.2f} ms"
        if "cython" in times:
            line += f"   cython {times['cython'] * 1e3:9.2f} ms   speedup {times['python'] / times['cython']:6.1f}x"
        print(line)
    return 0


def end_to_end() -> None:
    """Time a small catalog run under each backend in a fresh interpreter."""
    script = ("from foldwidth.catalog import EnumBounds, enumerate_diagrams;"
              "print(len(enumerate_diagrams(EnumBounds(1, 2, 2, 6))))")
    for label, flag in (("cython", ""), ("python", "1")):
        env = dict(os.environ, FOLDWIDTH_PURE_PYTHON=flag)
        t = time.perf_counter()
        res = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
        print(f"catalog (1,2,2,6) {label:6s} {time.perf_counter() - t:7.2f} s  entries {res.stdout.strip()}")


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--end-to-end", action="store_true")
    args = p.parse_args(argv)
    status = bench(args.repeat)
    if args.end_to_end:
        end_to_end()
    return status


if __name__ == "__main__":
    sys.exit(main())
