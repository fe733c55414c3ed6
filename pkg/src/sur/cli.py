"""Command-line entry point: ``sur construct|verify|solve-exact|bounds|table``.

Standard output carries one run record (JSON with ``--format structured``,
the default, or plain lines with ``--format text``).  Exit codes: 0 success,
1 domain error (infeasible, uncovered, precondition), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from pathlib import Path
from typing import Any

from . import constructions, cover, exact, hitting, randomized
from .core import (
    INFEASIBLE,
    BicoloringFamily,
    SurError,
    SurFamily,
    enumerate_k_bicolorings,
    enumerate_nontrivial_bicolorings,
    parse_bicolorings,
    parse_family,
    verify_sur,
)

METHODS = (
    "star",
    "dyadic",
    "window",
    "edge-cover",
    "lift",
    "greedy-cover",
    "hitting",
    "biased",
    "sampled",
)

# auto-verification of explicit constructions stays below this many bicolorings
VERIFY_LIMIT = 1 << 17


class UsageError(Exception):
    pass


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} --method {getattr(args, 'method', '')} requires {', '.join(missing)}")


def _read_bicolorings(path: str) -> BicoloringFamily:
    return parse_bicolorings(Path(path).read_text())


def _cert_summary(family: SurFamily, bicolorings: BicoloringFamily, delta: int, universe: str) -> dict:
    cert = verify_sur(family, bicolorings, delta)
    rec = cert.to_record(bicolorings)
    del rec["entries"]
    rec["universe"] = universe
    rec["max_abs_value"] = cert.max_abs_value()
    return rec


def _construct(args: argparse.Namespace) -> tuple[dict, bool]:
    m = args.method
    out: dict[str, Any] = {"method": m}
    universe: BicoloringFamily | None = None
    label = ""
    delta = 0
    if m in ("star", "dyadic", "window", "edge-cover"):
        _need(args, "n")
        n = args.n
        if m == "star":
            fam = constructions.star(n)
            if 2**n - 2 <= VERIFY_LIMIT:
                universe, label = enumerate_nontrivial_bicolorings(n), "all nontrivial"
        elif m == "dyadic":
            fam = constructions.dyadic(n)
            if 2**n - 2 <= VERIFY_LIMIT:
                universe, label = enumerate_nontrivial_bicolorings(n), "all nontrivial"
        elif m == "window":
            fam = constructions.sliding_window(n)
            if math.comb(n, n // 2) <= VERIFY_LIMIT:
                universe, label = enumerate_k_bicolorings(n, n // 2), f"k={n // 2}"
        else:
            fam = constructions.singleton_edge_cover(n)
            universe, label = enumerate_k_bicolorings(n, 1), "k=1"
    elif m == "lift":
        _need(args, "n", "k", "r")
        n, k, r = args.n, args.k, args.r
        if args.family:
            base = parse_family(Path(args.family).read_text())
        else:
            base = cover.greedy_cover(n, k - 1, r - 2)
        out["base"] = base.to_record()
        fam = constructions.recursive_lift(base, n, r)
        universe, label = enumerate_k_bicolorings(n, k), f"k={k}"
    elif m == "greedy-cover":
        _need(args, "n", "k", "r")
        fam = cover.greedy_cover(args.n, args.k, args.r)
        universe, label = enumerate_k_bicolorings(args.n, args.k), f"k={args.k}"
        ls = cover.lovasz_stein_bound(args.n, args.k, args.r)
        out["lovasz_stein_upper"] = ls
    elif m == "hitting":
        _need(args, "bicolorings")
        universe, label = _read_bicolorings(args.bicolorings), args.bicolorings
        fam, h = hitting.hitting_sur(universe)
        out["hitting_set"] = list(h.elements)
    elif m == "biased":
        _need(args, "r", "d", "seed", "bicolorings")
        universe, label = _read_bicolorings(args.bicolorings), args.bicolorings
        params = randomized.BiasParams.build(universe.n, args.r, args.d, len(universe))
        fam, _, trace = randomized.biased_sur(universe, args.r, args.d, args.seed)
        delta = params.int_delta
        out["tolerance"] = params.delta
        out["t"] = params.t
        out["size_window"] = list(params.size_window)
        out["trace"] = trace.to_record()
    else:  # sampled
        _need(args, "r", "alpha", "seed")
        if args.bicolorings:
            universe, label = _read_bicolorings(args.bicolorings), args.bicolorings
        else:
            _need(args, "n", "k")
            universe, label = enumerate_k_bicolorings(args.n, args.k), f"k={args.k}"
        fam, trace = randomized.sampled_exact_sur(universe, args.r, args.alpha, args.seed)
        out["t"] = max(1, randomized.sampled_sur_size(args.r, args.alpha, len(universe)))
        out["trace"] = trace.to_record()
    out["family"] = fam.to_record()
    if fam.biased:
        out["family"]["biased"] = True
    ok = True
    if universe is not None:
        cert = _cert_summary(fam, universe, delta, label)
        out["certificate"] = cert
        ok = cert["valid"]
    return out, ok


def _verify(args: argparse.Namespace) -> tuple[dict, bool]:
    _need(args, "family", "bicolorings")
    fam = parse_family(Path(args.family).read_text(), biased=True)
    bic = _read_bicolorings(args.bicolorings)
    delta = args.delta if args.delta is not None else 0
    cert = verify_sur(fam, bic, delta)
    return {"certificate": cert.to_record(bic)}, cert.complete


def _config(args: argparse.Namespace) -> exact.SearchConfig:
    kw = {"node_budget": args.node_budget, "time_budget": args.time_budget}
    if args.r is not None:
        return exact.SearchConfig(r=args.r, **kw)
    return exact.SearchConfig(r_min=args.r_min, r_max=args.r_max, **kw)


def _solve_exact(args: argparse.Namespace) -> tuple[dict, bool]:
    if args.bicolorings:
        bic = _read_bicolorings(args.bicolorings)
    elif args.n is not None:
        bic = enumerate_nontrivial_bicolorings(args.n) if args.k is None else enumerate_k_bicolorings(args.n, args.k)
    else:
        raise UsageError("solve-exact requires --bicolorings or --n")
    res = exact.optimal_sur(bic, _config(args))
    rec = res.to_record()
    rec["pool"] = _config(args).describe()
    rec["universe_size"] = len(bic)
    return rec, True


def _bounds(args: argparse.Namespace) -> tuple[dict, bool]:
    _need(args, "n", "k", "r")
    rep = cover.bounds_report(args.n, args.k, args.r)
    rec = rep.to_record()
    rec["double_counting"] = cover.double_counting_check(args.n, args.k, args.r)
    return rec, True


def _spec_list(text: str, word: str) -> list[int] | str:
    if text == word:
        return word
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"expected '{word}' or comma-separated integers, got {text!r}") from None


def _table(args: argparse.Namespace) -> tuple[dict, bool]:
    _need(args, "n_min", "n_max")
    cells = exact.gamma_table(
        range(args.n_min, args.n_max + 1),
        _spec_list(args.k_spec, "all"),
        _spec_list(args.r_spec, "all-even"),
        node_budget=args.node_budget,
        time_budget=args.time_budget,
    )
    rows = [c.to_record() for c in cells]
    for row, c in zip(rows, cells):
        row["within_bounds"] = c.within_bounds
    return {"rows": rows, "text": exact.format_table(cells)}, all(c.within_bounds for c in cells)


HANDLERS = {
    "construct": _construct,
    "verify": _verify,
    "solve-exact": _solve_exact,
    "bounds": _bounds,
    "table": _table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sur", description="Systems of unbiased representatives.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "structured"), default="structured")
        p.add_argument("--out", help="write the record to FILE instead of standard output")

    p = sub.add_parser("construct", help="build a SUR with one of the constructions")
    p.add_argument("--method", required=True, choices=METHODS)
    for flag in ("--n", "--k", "--r", "--d", "--seed"):
        p.add_argument(flag, type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--bicolorings")
    p.add_argument("--family", help="base family for --method lift")
    common(p)

    p = sub.add_parser("verify", help="check a family against bicolorings")
    p.add_argument("--family")
    p.add_argument("--bicolorings")
    p.add_argument("--delta", type=int, default=0)
    common(p)

    p = sub.add_parser("solve-exact", help="minimum SUR by branch and bound")
    p.add_argument("--bicolorings")
    p.add_argument("--n", type=int, help="use all nontrivial (or --k) bicolorings of [n]")
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--r-min", type=int, default=2)
    p.add_argument("--r-max", type=int)
    p.add_argument("--node-budget", type=int, default=10**8)
    p.add_argument("--time-budget", type=float, default=300.0)
    common(p)

    p = sub.add_parser("bounds", help="closed-form bounds for gamma(n, k, r)")
    for flag in ("--n", "--k", "--r"):
        p.add_argument(flag, type=int)
    common(p)

    p = sub.add_parser("table", help="exact gamma over a grid of cells")
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--k", dest="k_spec", default="all", help="'all' or comma-separated k values")
    p.add_argument("--r", dest="r_spec", default="all-even", help="'all-even' or comma-separated r values")
    p.add_argument("--node-budget", type=int, default=10**8)
    p.add_argument("--time-budget", type=float, default=300.0)
    common(p)
    return parser


def _params(args: argparse.Namespace) -> dict:
    skip = {"command", "format", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _render_text(record: dict) -> str:
    outputs = record["outputs"]
    if "text" in outputs:
        return outputs["text"] + "\n"
    lines = [f"command: {record['command']}"]
    if record.get("seed") is not None:
        lines.append(f"seed: {record['seed']}")

    def walk(prefix: str, value: Any) -> None:
        if isinstance(value, dict):
            for key, val in value.items():
                walk(f"{prefix}{key}.", val)
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{prefix[:-1]}:")
            lines.extend("  {" + ",".join(map(str, v)) + "}" for v in value)
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    walk("", outputs)
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        outputs, ok = HANDLERS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"sur: error: {exc}", file=sys.stderr)
        return 2
    except (SurError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"sur: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    record = {
        "command": args.command,
        "params": _params(args),
        "outputs": outputs,
        "wall_time": round(time.perf_counter() - start, 6),
        "seed": getattr(args, "seed", None),
    }
    if args.format == "structured":
        text = _dump_json(record) + "\n"
    else:
        text = _render_text(record)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


_NUMBER_LIST = re.compile(r"\[\s*(-?[\d.e+-]+(?:,\s*-?[\d.e+-]+)*)\s*\]")


def _dump_json(record: dict) -> str:
    text = json.dumps(record, indent=2, default=_json_default)
    return _NUMBER_LIST.sub(lambda m: "[" + ", ".join(p.strip() for p in m.group(1).split(",")) + "]", text)


def _json_default(obj: Any) -> Any:
    if obj is INFEASIBLE:
        return "INFEASIBLE"
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
