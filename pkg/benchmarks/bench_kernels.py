"""Time the compiled kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Numba compile time is excluded (one warm-up call per kernel).
"""

import argparse
import time

import numpy as np

from semikit import _kernels as K
from semikit.core import symmetric_group
from semikit.dihedral import dihedral_group
from semikit.morphisms import _candidates, minimal_generating_sequence
from semikit.products import direct_product


def _cases(G):
    t, inv, e = G.table, G.inverse, G.identity
    gens = np.array(minimal_generating_sequence(G), dtype=np.int64)
    sub = K.np_closure(t, gens[:1], e)
    images = np.arange(G.order, dtype=np.int64)
    cands, counts = _candidates(G, G, list(gens))
    out = np.zeros((1 << 14, gens.size), dtype=np.int64)
    return {
        "closure": lambda k: k["closure"](t, gens, e),
        "core": lambda k: k["core"](t, inv, sub),
        "element_orders": lambda k: k["element_orders"](t, e),
        "hom_violation": lambda k: k["hom_violation"](t, t, images),
        "first_nonassociative": lambda k: k["first_nonassociative"](t),
        "backtrack_maps": lambda k: k["backtrack_maps"](t, t, gens, cands, counts, e, e, out),
    }


def _paths():
    names = ["closure", "core", "element_orders", "hom_violation", "first_nonassociative", "backtrack_maps"]
    paths = {"numpy": {n: getattr(K, "np_" + n) for n in names}}
    if K.nb_closure is not None:
        paths["numba"] = {n: getattr(K, "nb_" + n) for n in names}
    return paths


def best_time(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    groups = [dihedral_group(30), symmetric_group(5), direct_product(dihedral_group(12), symmetric_group(3))]
    paths = _paths()
    header = f"{'group':<16}{'kernel':<22}" + "".join(f"{name:>12}" for name in paths) + ("     speedup" if len(paths) > 1 else "")
    print(header)
    for G in groups:
        for kernel, call in _cases(G).items():
            times = [best_time(lambda k=impl: call(k), args.repeat) for impl in paths.values()]
            row = f"{G.name[:15]:<16}{kernel:<22}" + "".join(f"{1e3 * s:10.3f}ms" for s in times)
            if len(times) > 1:
                row += f"{times[0] / times[1]:11.1f}x"
            print(row)
    if "numba" not in paths:
        print("numba not installed: only the numpy path was timed")


if __name__ == "__main__":
    main()
