#!/usr/bin/env python3
"""Materialize the small bundled benchmark graphs as Pajek files.

karate, lesmis and southernwomen ship with networkx, so they can be
regenerated offline. The remaining benchmark graphs (dolphins, polbooks,
afootball, jazz, email, ...) must be downloaded from their original
collections; see README.md for the source list. Drop them into
data/benchmarks/ as .net or .edges files.
"""

import argparse
import os

import networkx as nx


def write_pajek(path, graph, weighted):
    nodes = list(graph.nodes())
    index = {v: i + 1 for i, v in enumerate(nodes)}
    with open(path, "w") as f:
        f.write(f"*Vertices {len(nodes)}\n")
        for v in nodes:
            f.write(f'{index[v]} "{v}"\n')
        f.write("*Edges\n")
        for u, v, data in graph.edges(data=True):
            if weighted:
                f.write(f"{index[u]} {index[v]} {data.get('weight', 1)}\n")
            else:
                f.write(f"{index[u]} {index[v]}\n")
    print(f"wrote {path}: {len(nodes)} vertices, {graph.number_of_edges()} edges")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data", help="output directory")
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)

    write_pajek(os.path.join(args.out, "karate.net"), nx.karate_club_graph(), weighted=False)
    write_pajek(os.path.join(args.out, "lesmis.net"), nx.les_miserables_graph(), weighted=True)
    write_pajek(os.path.join(args.out, "southernwomen.net"), nx.davis_southern_women_graph(), weighted=False)


if __name__ == "__main__":
    main()
