#!/usr/bin/env python3
"""Generate the bundled random QDIMACS instances used by the slicing bench.

Instances are random k-CNF matrices under alternating prefixes. Each clause
gets at least one existential literal from the innermost block so that
universal reduction does not trivially empty it.
"""

import argparse
import random
from pathlib import Path

FAMILIES = [
    # name, blocks (quantifier, size), clauses, clause length, count
    ("ea", [("e", 8), ("a", 8), ("e", 24)], 130, 3, 6),
    ("ae", [("a", 6), ("e", 30)], 140, 3, 4),
    ("eae", [("e", 6), ("a", 6), ("e", 6), ("a", 4), ("e", 18)], 120, 3, 6),
    ("sat", [("e", 40)], 165, 3, 4),
    ("wide", [("e", 10), ("a", 10), ("e", 30)], 200, 4, 4),
]


def make(rng, blocks, n_clauses, k):
    prefix = []
    var = 1
    for q, size in blocks:
        prefix.append((q, list(range(var, var + size))))
        var += size
    all_vars = [v for _, vs in prefix for v in vs]
    inner = prefix[-1][1] if prefix[-1][0] == "e" else [v for q, vs in prefix if q == "e" for v in vs]
    clauses = []
    for _ in range(n_clauses):
        vs = {rng.choice(inner)}
        while len(vs) < k:
            vs.add(rng.choice(all_vars))
        clauses.append([v if rng.random() < 0.5 else -v for v in sorted(vs)])
    return prefix, var - 1, clauses


def write(path, prefix, n_vars, clauses, comment):
    with open(path, "w") as f:
        f.write(f"c {comment}\n")
        f.write(f"p cnf {n_vars} {len(clauses)}\n")
        for q, vs in prefix:
            f.write(q + " " + " ".join(map(str, vs)) + " 0\n")
        for c in clauses:
            f.write(" ".join(map(str, c)) + " 0\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).parent / "instances")
    ap.add_argument("--seed", type=int, default=2013)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    for name, blocks, n_clauses, k, count in FAMILIES:
        for i in range(count):
            prefix, n_vars, clauses = make(rng, blocks, n_clauses, k)
            write(args.out / f"{name}-{i:02d}.qdimacs", prefix, n_vars, clauses,
                  f"random {name} instance {i}, seed {args.seed}")


if __name__ == "__main__":
    main()
