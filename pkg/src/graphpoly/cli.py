"""Command-line front end: every pipeline, reproducible machine-readable output.

Exit codes: 0 ok, 1 internal error, 2 refused (outside the certified
region), 3 budget exceeded. JSON goes to stdout with sorted keys; the
timestamp field is the only thing that varies between identical runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .certify import (
    SURVEY_CSV_HEADER,
    certify_zero_free,
    family_root_survey,
    _survey_graphs,
)
from .chromatic import (
    CHROMATIC_SURVEY_CSV_HEADER,
    chromatic_interpolate,
    chromatic_poly,
    chromatic_zero_survey,
    gk_condition_check,
    polymer_partition,
)
from .coefficients import (
    compute_alpha,
    expansion_term_stats,
    load_expansion_cache,
    save_expansion_cache,
)
from .errors import (
    BudgetExceededError,
    GraphParseError,
    OutsideCertifiedRegionError,
)
from .graphs import Graph, connected_components, generate, induced_subgraph, max_degree, parse_edge_list
from .interpolation import approx_independence
from .oracles import BRUTE_FORCE_CAP, brute_force_independence_coeffs
from .polys import poly_eval


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"expected 're' or 're,im', got {text!r}")


def _load_graph(spec: str) -> Graph:
    if spec.startswith("gen:"):
        parts = spec.split(":")[1:]
        kind = parts[0]
        params = []
        seed = None
        for p in parts[1:]:
            if p.startswith("seed"):
                seed = int(p[4:])
            else:
                params.append(int(p))
        return generate(kind, *params, seed=seed)
    text = Path(spec).read_text()
    if text.lstrip().startswith("{"):
        from .graphs import graph_from_json

        return graph_from_json(text)
    return parse_edge_list(text)


def _resolved_config(args, **extra) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    cfg.update(extra)
    return cfg


def _emit_json(command: str, config: dict, result, fmt: str) -> None:
    payload = {
        "tool": "graphpoly",
        "version": __version__,
        "command": command,
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "result": result,
    }
    if fmt == "text":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(json.dumps(payload, sort_keys=True))


# ---------------------------------------------------------------------------
# subcommands

def _cmd_eval(args) -> int:
    g = _load_graph(args.graph)
    config = _resolved_config(args)
    if args.poly == "independence":
        lam = _parse_complex(args.lam)
        config["lambda"] = [lam.real, lam.imag]
        try:
            cert = approx_independence(g, lam, args.eps, radius_override=args.radius)
        except OutsideCertifiedRegionError:
            if not args.unsafe:
                raise
            cert = approx_independence(
                g, lam, args.eps, radius_override=abs(lam) / 0.99
            )
    else:
        q = _parse_complex(args.q)
        config["q"] = [q.real, q.imag]
        try:
            cert = chromatic_interpolate(g, q, args.eps, radius_override=args.radius)
        except OutsideCertifiedRegionError:
            if not args.unsafe:
                raise
            cert = chromatic_interpolate(
                g, q, args.eps, radius_override=abs(1 / q) / 0.99
            )
    _emit_json("eval", config, cert.to_json_dict(), args.format)
    return 0


def _cmd_coeffs(args) -> int:
    g = _load_graph(args.graph)
    if args.cache and Path(args.cache).exists():
        load_expansion_cache(args.cache)
    alpha = compute_alpha(g, args.m, algebra_cap=args.algebra_cap)
    result = {"alpha": alpha, "n": g.n, "delta": max_degree(g)}
    mismatch = False
    if g.n <= BRUTE_FORCE_CAP and not args.no_oracle:
        oracle = brute_force_independence_coeffs(g)
        oracle = oracle + [0] * max(0, args.m + 1 - len(oracle))
        result["oracle"] = oracle[: args.m + 1]
        mismatch = result["oracle"] != alpha
        result["oracle_match"] = not mismatch
    if args.stats:
        result["expansion_stats"] = [
            expansion_term_stats(t, max_degree(g)) for t in range(1, args.m + 1)
        ]
    if args.cache:
        save_expansion_cache(args.cache)
    _emit_json("coeffs", _resolved_config(args), result, args.format)
    return 1 if mismatch else 0


def _cmd_zeros(args) -> int:
    if args.poly == "independence":
        rows = family_root_survey(args.family, args.max_n, delta=args.delta, seed=args.seed)
        print(SURVEY_CSV_HEADER)
        for row in rows:
            print(row.csv())
    else:
        named = list(_survey_graphs(args.family, args.max_n, args.delta, args.seed))
        named = [(gid, g) for gid, g in named if g.n <= 14]
        rows = chromatic_zero_survey(named)
        print(CHROMATIC_SURVEY_CSV_HEADER)
        for row in rows:
            print(row.csv())
    return 0


def _cmd_certify(args) -> int:
    g = _load_graph(args.graph)
    lam = _parse_complex(args.lam)
    comps = connected_components(g)
    certs = []
    for comp in comps:
        sub, _ = induced_subgraph(g, comp)
        certs.append(certify_zero_free(sub, lam))
    result = {
        "ok": all(c.ok for c in certs),
        "components": [c.to_json_dict() for c in certs],
    }
    config = _resolved_config(args, **{"lambda": [lam.real, lam.imag]})
    _emit_json("certify", config, result, args.format)
    return 0


def _cmd_polymer(args) -> int:
    g = _load_graph(args.graph)
    q = _parse_complex(args.q)
    size_cap = args.size_cap if args.size_cap is not None else g.n
    zpoly = polymer_partition(g, q, size_cap=size_cap)
    chi = chromatic_poly(g)
    lhs = q**g.n * poly_eval(chi, 1 / q) if q != 0 else complex(1)
    rel = abs(zpoly - lhs) / abs(lhs) if lhs != 0 else abs(zpoly - lhs)
    exact_report = gk_condition_check(g, q, args.a, mode="exact")
    tree_report = gk_condition_check(g, q, args.a, mode="tree_bound")
    result = {
        "polymer_partition": [zpoly.real, zpoly.imag],
        "rescaled_chromatic": [lhs.real, lhs.imag],
        "identity_rel_error": rel,
        "condition_exact": {
            "ok": exact_report.ok,
            "threshold": exact_report.threshold,
            "per_vertex": exact_report.per_vertex,
        },
        "condition_tree_bound": {
            "ok": tree_report.ok,
            "threshold": tree_report.threshold,
            "per_vertex": tree_report.per_vertex,
        },
    }
    config = _resolved_config(args, q=[q.real, q.imag], size_cap=size_cap)
    _emit_json("polymer", config, result, args.format)
    return 0


def _grid_points(radius: float, count: int) -> list[complex]:
    import math

    rings = max(1, count // 8)
    pts = []
    for i in range(1, rings + 1):
        r = radius * i / rings
        for j in range(8):
            ang = 2 * math.pi * j / 8 + 0.1
            pts.append(complex(r * math.cos(ang), r * math.sin(ang)))
    return pts[:count]


def _cmd_compare(args) -> int:
    from .certify import zero_free_radius

    g = _load_graph(args.graph)
    d = max_degree(g)
    radius = 0.9 * float(zero_free_radius(d))
    pts = _grid_points(radius, args.grid_points)
    coeffs = brute_force_independence_coeffs(g)

    def one(lam: complex):
        cert = approx_independence(g, lam, args.eps)
        oracle = complex(poly_eval(coeffs, lam))
        rel = abs(cert.value - oracle) / abs(oracle)
        return lam, cert, oracle, rel

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(one, pts))
    else:
        results = [one(lam) for lam in pts]
    print("graph,n,delta,lambda_re,lambda_im,m_used,approx_re,approx_im,"
          "oracle_re,oracle_im,rel_err")
    for lam, cert, oracle, rel in results:
        print(
            f"{args.graph},{g.n},{d},{lam.real!r},{lam.imag!r},{cert.m_used},"
            f"{cert.value.real!r},{cert.value.imag!r},"
            f"{oracle.real!r},{oracle.imag!r},{rel!r}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="graphpoly",
        description="Certified evaluation of graph partition functions "
        "(independence and chromatic polynomials) at complex parameters.",
    )
    ap.add_argument("--threads", type=int, default=1, help="cap worker threads")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="certified approximate evaluation")
    p.add_argument("--poly", choices=["independence", "chromatic"], default="independence")
    p.add_argument("--graph", required=True, help="file path or gen:<kind>:<p1>[:p2][:seedK]")
    p.add_argument("--lambda", dest="lam", default="0.1,0", help="complex 're,im'")
    p.add_argument("--q", default="20,0", help="complex 're,im'")
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--radius", type=float, default=None, help="override the zero-free radius (no guarantee)")
    p.add_argument("--unsafe", action="store_true", help="evaluate outside the certified disk")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("coeffs", help="engine coefficients, oracle-checked at desk scale")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--algebra-cap", type=int, default=10, help="raise the expansion order cap")
    p.add_argument("--no-oracle", action="store_true")
    p.add_argument("--stats", action="store_true", help="report expansion term counts")
    p.add_argument("--cache", default=None, help="expansion cache file to load/update")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("zeros", help="root-location surveys (CSV)")
    p.add_argument("--poly", choices=["independence", "chromatic"], default="independence")
    p.add_argument("--family", required=True,
                   choices=["paths", "cycles", "trees", "random_regular"])
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--max-n", type=int, default=14)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("certify", help="per-instance zero-freeness certificate")
    p.add_argument("--graph", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("polymer", help="polymer identity and nonvanishing condition checks")
    p.add_argument("--graph", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--a", type=float, default=1.588)
    p.add_argument("--size-cap", type=int, default=None)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_polymer)

    p = sub.add_parser("compare", help="approximation vs oracle over a disk grid (CSV)")
    p.add_argument("--graph", required=True)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--grid-points", type=int, default=40)
    p.set_defaults(func=_cmd_compare)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except OutsideCertifiedRegionError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"budget exceeded ({exc.cap_name}): {exc}", file=sys.stderr)
        return 3
    except (GraphParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
