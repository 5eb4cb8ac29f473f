"""Time the compiled tree sweep against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 20] [--csv out.csv]

Each case generates one game, draws a batch of random interior states the
size of a finite-difference Jacobian (one row per unknown plus one) and
times ``infoset_values`` on it with both backends.  The two outputs are
compared before anything is timed.
"""

from __future__ import annotations

import argparse
import csv
import sys
import timeit

import numpy as np

from efgpath import kernels
from efgpath.compiled import compile_game
from efgpath.game import subgame_decomposition
from efgpath.generate import GenSpec, generate

CASES = [
    ("A", 3, (2, 3, 3), 1),
    ("A", 2, (10, 10), 1),
    ("B", 4, (2, 2, 2, 2), 1),
    ("C", 2, (2, 2), 2),
    ("C", 2, (2, 2), 4),
    ("C", 3, (3, 3, 3), 2),
]


def random_states(cg, batch: int, rng):
    def simplex_rows(ptr, width):
        x = rng.uniform(0.05, 1.0, size=(batch, width))
        starts = ptr[:-1]
        sums = np.add.reduceat(x, starts, axis=1)
        return x / np.repeat(sums, np.diff(ptr), axis=1)
    P = simplex_rows(cg.act_ptr, cg.num_action_slots)
    Q = simplex_rows(cg.act_ptr, cg.num_action_slots)
    MU = simplex_rows(cg.mem_ptr, cg.num_member_slots)
    return P, Q, MU


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--csv", help="also write the table here")
    ap.add_argument("--sgpe", action="store_true", help="restart reach at subgame roots")
    args = ap.parse_args(argv)

    if kernels.BACKEND != "cython":
        print("compiled kernels are not built; only the numpy backend can run", file=sys.stderr)
        return 1
    rng = np.random.default_rng(0)
    rows = []
    header = ["family", "n", "branching", "L", "nodes", "batch", "cython_ms", "numpy_ms", "speedup"]
    print("{:<3} {:>2} {:<10} {:>2} {:>7} {:>6} {:>10} {:>10} {:>8}".format(*header))
    for family, n, branching, layers in CASES:
        game = generate(GenSpec(family, n, branching, layers=layers, seed=1))
        cg = compile_game(game, subgame_decomposition(game))
        batch = 2 * cg.num_action_slots + 2 * cg.num_member_slots + 2
        P, Q, MU = random_states(cg, batch, rng)

        fast = kernels.infoset_values(cg, P, Q, MU, args.sgpe, backend="cython")
        slow = kernels.infoset_values(cg, P, Q, MU, args.sgpe, backend="numpy")
        gap = max(float(np.abs(a - b).max(initial=0.0)) for a, b in zip(fast, slow))
        if gap > 1e-10:
            print(f"backends disagree on {family}{branching}: {gap:.3e}", file=sys.stderr)
            return 1

        timings = {}
        for backend in ("cython", "numpy"):
            call = lambda: kernels.infoset_values(cg, P, Q, MU, args.sgpe, backend=backend)
            best = min(timeit.repeat(call, number=1, repeat=args.repeat))
            timings[backend] = best * 1e3
        row = [family, n, "x".join(map(str, branching)), layers, len(game.nodes), batch,
               f"{timings['cython']:.3f}", f"{timings['numpy']:.3f}",
               f"{timings['numpy'] / timings['cython']:.1f}"]
        rows.append(row)
        print("{:<3} {:>2} {:<10} {:>2} {:>7} {:>6} {:>10} {:>10} {:>8}".format(*map(str, row)))

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
