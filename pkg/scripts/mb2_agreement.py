"""Compare the k=2 search against the MB = 2 recognizer over a graph6 catalog.

Also records, for each graph where k=2 succeeds, whether every larger
k <= n/2 succeeds too (monotone evidence for [n-2,2] implying [n-k,k]).
"""
import argparse
import time

from mbkit import graphs as gr
from mbkit.graph6 import parse_graph6, read_catalog
from mbkit.search import SearchConfig, find_realization


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("catalog")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=200)
    ap.add_argument("--max-iters", type=int, default=500)
    ap.add_argument("--monotone", action="store_true", help="also search k = 3..n/2 when k = 2 succeeds")
    args = ap.parse_args()
    cfg = SearchConfig(restarts=args.restarts, max_iters=args.max_iters, seed=args.seed)

    rows = []
    t0 = time.perf_counter()
    for lineno, text in read_catalog(args.catalog):
        G = parse_graph6(text)
        accepted = G.is_complete() or gr.recognize_mb2_form(G) is not None
        found = find_realization(G, 2, cfg).found
        larger = ""
        if args.monotone and found:
            ks = range(3, G.n // 2 + 1)
            larger = ",".join(f"{k}:{'y' if find_realization(G, k, cfg).found else 'n'}" for k in ks)
        rows.append((lineno, text, accepted, found, larger))
    elapsed = time.perf_counter() - t0

    print(f"{'line':>5} {'graph6':<10} {'recognizer':>10} {'search':>6}  larger k")
    for lineno, text, accepted, found, larger in rows:
        flag = "" if accepted == found else "  <-- disagreement"
        print(f"{lineno:>5} {text:<10} {str(accepted):>10} {str(found):>6}  {larger}{flag}")
    agree = sum(a == f for _, _, a, f, _ in rows)
    print(f"\n{agree}/{len(rows)} agree, {elapsed:.1f}s")


if __name__ == "__main__":
    main()
