#!/usr/bin/env python3
"""Generate the deterministic planted-partition fixtures under data/.

Each graph places vertices into equally sized groups, wires dense
intra-group edges and sparse inter-group edges from a fixed seed, and is
written as a plain edge list. Regenerating produces identical files.
"""

import argparse
import os
import random


def planted_partition(n, groups, p_in, inter_edges, seed):
    rng = random.Random(seed)
    size = n // groups
    edges = set()
    for g in range(groups):
        lo = g * size
        for i in range(lo, lo + size):
            for j in range(i + 1, lo + size):
                if rng.random() < p_in:
                    edges.add((i, j))
    added = 0
    while added < inter_edges:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or u // size == v // size:
            continue
        e = (min(u, v), max(u, v))
        if e not in edges:
            edges.add(e)
            added += 1
    return sorted(edges)


def write_edgelist(path, n, edges):
    with open(path, "w") as f:
        f.write(f"# planted partition fixture: {n} vertices, {len(edges)} edges\n")
        for u, v in edges:
            f.write(f"{u} {v}\n")
    print(f"wrote {path}: {n} vertices, {len(edges)} edges")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data")
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)

    write_edgelist(os.path.join(args.out, "synth500.edges"), 500,
                   planted_partition(500, 25, 0.25, 700, seed=12345))
    write_edgelist(os.path.join(args.out, "synth2000.edges"), 2000,
                   planted_partition(2000, 50, 0.15, 2400, seed=67890))


if __name__ == "__main__":
    main()
