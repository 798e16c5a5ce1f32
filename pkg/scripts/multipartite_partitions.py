"""Which bipartitions [n-i, i] does K_{k,...,k} achieve?

Exploration of the expectation that K_{k,k,...,k} achieves every [n-i, i]
with i >= k and none with i < k. The independent-set bound rules out i < k;
the search reports which i >= k it can certify. Output is evidence only.
"""
import argparse

from mbkit import graphs as gr
from mbkit.obstructions import independent_set_bound
from mbkit.search import SEARCH_GUARD, SearchConfig, find_realization


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=100)
    args = ap.parse_args()
    cfg = SearchConfig(restarts=args.restarts, seed=args.seed)
    for k in range(2, 5):
        for parts in range(2, args.max_n // k + 1):
            n = k * parts
            if n > min(args.max_n, SEARCH_GUARD):
                break
            G = gr.complete_multipartite([k] * parts)
            alpha, _ = independent_set_bound(G)
            found = [i for i in range(alpha, n // 2 + 1) if find_realization(G, i, cfg).found]
            missing = [i for i in range(alpha, n // 2 + 1) if i not in found]
            print(f"K_{{{','.join([str(k)] * parts)}}} n={n}: ruled out i<{alpha}; "
                  f"certified {found}; not found {missing}")


if __name__ == "__main__":
    main()
