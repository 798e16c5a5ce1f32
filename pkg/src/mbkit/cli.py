"""Command-line front end: ``mbkit {construct,verify,bounds,search,atlas}``.

Exit codes: 0 ok, 1 verification or obstruction failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import constructions as cons
from . import graphs as gr
from .errors import MBKitError
from .graph6 import encode_graph6, parse_graph6, read_catalog
from .obstructions import bounds_report
from .realizations import (
    RealizationCertificate,
    Tolerances,
    certificate_from_dict,
    clone_realization,
    gram_factor_of,
)
from .search import SEARCH_GUARD, SearchConfig, find_realization, minimal_bipartition

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# ----------------------------------------------------------------------------
# construction registry: name -> f(params, seed, tolerances) -> certificate
# ----------------------------------------------------------------------------

def _graph_param(params) -> gr.Graph:
    if "graph6" not in params:
        raise UsageError("parameter 'graph6' is required")
    return parse_graph6(params["graph6"])


def _base(params, key, seed, tols) -> RealizationCertificate:
    spec = params.get(key)
    if not isinstance(spec, dict) or "name" not in spec:
        raise UsageError(f"parameter {key!r} must be an object {{\"name\": ..., \"params\": {{...}}}}")
    return build(spec["name"], spec.get("params", {}), seed, tols)


def _ring(p, seed, tols):
    k = int(p.get("k", 2))
    ts = p.get("t", [2, 3])
    blocks = p.get("blocks", [[1] * k for _ in ts])
    return cons.canonical_blocks(blocks, [cons.ring_matrix(k, t) for t in ts], tols)


def _canonical(p, seed, tols):
    blocks = p["blocks"]
    k = len(blocks[0])
    ts = p.get("t", list(cons.DEFAULT_T[: len(blocks)]))
    return cons.canonical_blocks(blocks, [cons.ring_matrix(k, t) for t in ts], tols)


def _join_with_cliques(p, seed, tols):
    base = _base(p, "base", seed, tols)
    return cons.join_with_cliques(base.graph, gram_factor_of(base), p["sizes"], p.get("beta"), seed, tols)


REGISTRY = {
    "path-p2": lambda p, s, t: cons.path_p2_realization(int(p["n"]), t),
    "multipartite-b": lambda p, s, t: cons.multipartite_three_eigs(p["parts"], t),
    "ring": _ring,
    "canonical-blocks": _canonical,
    "three-cliques": lambda p, s, t: cons.example_three_cliques(p["sizes"], p.get("t"), s, t),
    "bipartite-hole": lambda p, s, t: cons.bipartite_hole(
        cons.HoleParams(int(p["alpha"]), p["a"], p["b"], p.get("w")), s, t),
    "two-edges-removed": lambda p, s, t: cons.two_edges_removed(p["a"], p["b"], p.get("w"), s, t),
    "path-of-cliques": lambda p, s, t: cons.path_of_cliques(p["sizes"], t),
    "join-empty-n": lambda p, s, t: cons.join_empty_n(_graph_param(p), s, t),
    "join-empty-n-minus-1": lambda p, s, t: cons.join_empty_n_minus_1(_graph_param(p), s, t),
    "join-with-empty": lambda p, s, t: cons.join_with_empty(_base(p, "base", s, t), s, t),
    "join-equal-mb": lambda p, s, t: cons.join_equal_mb(_base(p, "left", s, t), _base(p, "right", s, t), s, t),
    "join-with-cliques": _join_with_cliques,
    "clone": lambda p, s, t: clone_realization(_base(p, "base", s, t), int(p["vertex"])),
}


def build(name: str, params: dict, seed, tols: Tolerances) -> RealizationCertificate:
    if name not in REGISTRY:
        raise UsageError(f"unknown construction {name!r}; known: {', '.join(sorted(REGISTRY))}")
    if not isinstance(params, dict):
        raise UsageError("parameters must be a JSON object")
    try:
        return REGISTRY[name](params, seed, tols)
    except KeyError as exc:
        raise UsageError(f"{name}: missing parameter {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MBKitError):
            raise
        raise UsageError(f"{name}: bad parameters: {exc}") from exc


def residuals(cert: RealizationCertificate) -> dict:
    """Largest off-pattern entry and largest eigenvalue distance from its class value."""
    A = cert.matrix
    N = ~cert.graph.adjacency().astype(bool)
    np.fill_diagonal(N, False)
    w = np.linalg.eigvalsh(A)
    vals = np.asarray(cert.partition.values)
    eig = float(np.max(np.min(np.abs(w[:, None] - vals[None, :]), axis=1)))
    return {"pattern": float(np.max(np.abs(A[N]), initial=0.0)), "eigen": eig}


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------

def _tolerances(args) -> Tolerances:
    t = Tolerances()
    return Tolerances(args.tol_zero if args.tol_zero is not None else t.zero_tol,
                      args.tol_nonzero if args.tol_nonzero is not None else t.nonzero_tol)


def _search_config(args, overrides=None) -> SearchConfig:
    d = dict(overrides or {})
    d["seed"] = args.seed
    for attr, key in (("restarts", "restarts"), ("max_iters", "max_iters"),
                      ("tol_zero", "zero_tol"), ("tol_nonzero", "nonzero_tol")):
        if getattr(args, attr) is not None:
            d[key] = getattr(args, attr)
    try:
        return SearchConfig(**d)
    except TypeError as exc:
        raise UsageError(f"bad search configuration: {exc}") from exc


def _load_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from exc


def cmd_construct(args) -> int:
    params = _load_json_arg(args.params, "parameters") if args.params else {}
    cert = build(args.name, params, args.seed, _tolerances(args))
    text = cert.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    res = residuals(cert)
    k = cert.k if cert.k is not None else "-"
    summary = (f"{encode_graph6(cert.graph)} n={cert.n} k={k} multiplicities={cert.multiplicities} "
               f"pattern_residual={res['pattern']:.3g} eigen_residual={res['eigen']:.3g} ok")
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return OK


def cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.certificate).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"verify: cannot read certificate: {exc}")
        return FAIL
    try:
        cert = certificate_from_dict(data)
    except MBKitError as exc:
        report = {"valid": False, "error": str(exc)}
        pr = getattr(exc, "report", None)
        if pr is not None:
            report["pattern"] = pr.to_dict()
        part = getattr(exc, "partition", None)
        if part is not None:
            report["partition"] = part.to_dict()
        print(_dumps(report))
        return FAIL
    print(_dumps({"valid": True, "n": cert.n, "k": cert.k, "multiplicities": cert.multiplicities,
                  "residuals": residuals(cert)}))
    return OK


def cmd_bounds(args) -> int:
    G = parse_graph6(args.graph6)
    rep = bounds_report(G)
    print(_dumps(rep.to_dict()))
    return FAIL if rep.status in ("q>2 witnessed", "inconsistent") else OK


def cmd_search(args) -> int:
    G = parse_graph6(args.graph6)
    cfg = _search_config(args)
    if args.k is not None:
        res = find_realization(G, args.k, cfg)
        out = res.to_dict()
        found = res.found
    else:
        mb, results, rep = minimal_bipartition(G, cfg)
        out = {"mb_estimate": mb, "exact": rep.mb is not None, "report": rep.to_dict(),
               "results": {str(k): r.to_dict() for k, r in results.items()}}
        found = mb is not None
    text = _dumps(out) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK if found else FAIL


def atlas_entry(job) -> dict:
    """Process one catalog line; pure given the job tuple."""
    lineno, text, k_range, cfg_dict, cert_dir, timing = job
    t0 = time.perf_counter()
    G = parse_graph6(text)
    cfg = SearchConfig(**cfg_dict)
    rep = bounds_report(G)
    lo, hi = k_range
    hi = G.n // 2 if hi is None else min(hi, G.n // 2)
    searched, certs, files = {}, [], {}
    if rep.q_gt_2:
        rep.notes.append("search skipped: q>2 witnessed")
    else:
        for k in range(max(lo, 1), hi + 1):
            res = find_realization(G, k, cfg)
            searched[str(k)] = res.status
            if res.found:
                certs.append(res.certificate)
                name = f"line{lineno:05d}_k{k}.json"
                (Path(cert_dir) / name).write_text(res.certificate.to_json() + "\n")
                files[str(k)] = f"certificates/{name}"
        rep = bounds_report(G, certs)
    form = gr.recognize_mb2_form(G) if gr.is_connected(G) and G.n else None
    entry = {
        "line": lineno,
        "graph6": text,
        "n": G.n,
        "status": rep.status,
        "mb": rep.mb,
        "lower_bound": rep.lower_bound,
        "upper_bound": rep.upper_bound,
        "mb2_form": None if form is None else [list(pq) for pq in form],
        "achievable": sorted(int(k) for k, s in searched.items() if s == "found"),
        "searched": searched,
        "certificates": files,
        "obstructions": [w.to_dict() for w in rep.obstructions],
    }
    if timing:
        entry["seconds"] = round(time.perf_counter() - t0, 3)
    return entry


def cmd_atlas(args) -> int:
    out = Path(args.out or "atlas")
    cert_dir = out / "certificates"
    cert_dir.mkdir(parents=True, exist_ok=True)
    index = out / "atlas.jsonl"
    done = set()
    if index.exists():
        for line in index.read_text().splitlines():
            if line.strip():
                e = json.loads(line)
                done.add((e["line"], e["graph6"]))
    overrides = _load_json_arg(args.config, "config") if args.config else {}
    cfg = _search_config(args, overrides)
    status = OK
    jobs = []
    for lineno, text in read_catalog(args.catalog):
        if (lineno, text) in done:
            continue
        try:
            G = parse_graph6(text)
        except MBKitError as exc:
            print(f"line {lineno}: skipped: {exc}", file=sys.stderr)
            status = FAIL
            continue
        if G.n > SEARCH_GUARD:
            print(f"line {lineno}: skipped: n={G.n} exceeds {SEARCH_GUARD}", file=sys.stderr)
            status = FAIL
            continue
        jobs.append((lineno, text, (args.k_min, args.k_max), cfg.to_dict(), str(cert_dir), args.timing))
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            entries = list(pool.map(atlas_entry, jobs))
    else:
        entries = [atlas_entry(j) for j in jobs]
    with index.open("a") as fh:
        for e in entries:
            fh.write(_dumps(e) + "\n")
    print(f"atlas: {len(entries)} new entries, {len(done)} already present -> {index}")
    return status


# ----------------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------------

def _default_seed() -> int:
    env = os.environ.get("MBKIT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MBKIT_SEED must be an integer, got {env!r}")


def make_parser(default_seed: int = 0) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=default_seed, help="random seed (default: $MBKIT_SEED or 0)")
    common.add_argument("--tol-zero", type=float, default=None, help="zero tolerance")
    common.add_argument("--tol-nonzero", type=float, default=None, help="relative nonzero tolerance")
    common.add_argument("--restarts", type=int, default=None, help="search restarts")
    common.add_argument("--max-iters", type=int, default=None, help="search iterations per restart")
    common.add_argument("--out", default=None, help="output file (directory for atlas)")

    ap = argparse.ArgumentParser(prog="mbkit", description="Multiplicity bipartition toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="run a named construction")
    p.add_argument("name", help=f"one of: {', '.join(sorted(REGISTRY))}")
    p.add_argument("params", nargs="?", default=None, help="JSON parameter object")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="re-verify a certificate file")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[common], help="lower/upper bounds and q=2 obstructions")
    p.add_argument("graph6")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", parents=[common], help="numerical search for a bipartition")
    p.add_argument("graph6")
    p.add_argument("--k", type=int, default=None, help="target k (default: estimate MB)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("atlas", parents=[common], help="batch over a graph6 catalog")
    p.add_argument("catalog")
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--config", default=None, help="JSON object of SearchConfig fields")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include per-graph seconds (breaks byte-identity)")
    p.set_defaults(func=cmd_atlas)
    return ap


def main(argv=None) -> int:
    try:
        parser = make_parser(_default_seed())
    except UsageError as exc:
        print(f"mbkit: {exc}", file=sys.stderr)
        return USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mbkit: {exc}", file=sys.stderr)
        return USAGE
    except MBKitError as exc:
        print(f"mbkit: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
