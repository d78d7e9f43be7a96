"""Compare the compiled and pure-Python kernels on the hot paths.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends run the same search in the same order, so node counts must
match; the script checks that before reporting timings.
"""
import argparse
import random
import time

from dezagraphs import _kernels
from dezagraphs.analysis import find_special_involutions
from dezagraphs.constructions import (
    conference_srg,
    construction1,
    construction2,
    hoffman_singleton,
    paley_frobenius_involution,
)
from dezagraphs.graph import Graph, Permutation, are_isomorphic


def best_of(fn, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def cases():
    hs = hoffman_singleton()
    p49 = paley_frobenius_involution(7)
    c2_hs = construction2(hs)
    c1_hs = construction1(hs)
    rng = random.Random(1)
    hs_shuffled = hs.graph.permuted(Permutation(tuple(rng.sample(range(50), 50))))
    c2_shuffled = c2_hs.permuted(Permutation(tuple(rng.sample(range(100), 100))))
    return [
        ("common neighbours, C1(HS) n=100",
         lambda: Graph(c1_hs.adjacency).common_neighbour_matrix().sum()),
        ("common neighbours, C1(P(49)^c) n=98",
         lambda: Graph(construction1(p49).adjacency).common_neighbour_matrix().sum()),
        ("all special involutions of HS",
         lambda: len(find_special_involutions(hs.graph, up_to_conjugacy=False))),
        ("involution classes of conference(5)",
         lambda: len(find_special_involutions(conference_srg(5).graph))),
        ("HS vs relabelled HS isomorphism",
         lambda: are_isomorphic(hs.graph, hs_shuffled).nodes),
        ("C2(HS) vs relabelled C2(HS) isomorphism",
         lambda: are_isomorphic(c2_hs, c2_shuffled).nodes),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels._core is None:
        raise SystemExit("compiled kernels are not built; run: python setup.py build_ext --inplace")
    print(f"{'case':<40} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, fn in cases():
        _kernels.set_backend("python")
        tp, vp = best_of(fn, args.repeat)
        _kernels.set_backend("cython")
        tc, vc = best_of(fn, args.repeat)
        _kernels.set_backend(None)
        if vp != vc:
            raise SystemExit(f"{name}: backends disagree ({vp} vs {vc})")
        print(f"{name:<40} {tp * 1e3:>8.1f}ms {tc * 1e3:>8.1f}ms {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
