"""Write graph6 catalogs of all connected graphs on 5 and 6 vertices.

Uses the networkx graph atlas (all graphs up to 7 vertices) as the source.
"""
import argparse
from pathlib import Path

import networkx as nx


def connected_graphs(n):
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() == n and nx.is_connected(G):
            yield G


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests" / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n in (5, 6):
        lines = [nx.to_graph6_bytes(G, header=False).decode().strip() for G in connected_graphs(n)]
        (out / f"connected{n}.g6").write_text("\n".join(lines) + "\n")
        print(f"connected{n}.g6: {len(lines)} graphs")


if __name__ == "__main__":
    main()
