"""Command line entry point: ``ksplicer {gen,verify,stats,approx}``.

Exit codes: 0 success, 1 a checked property failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import secrets
import sys
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import formats
from .connectivity import edge_connectivity
from .disjointify import generate_k_connected
from .graph_core import GraphError
from .samplers import RngStream, SamplerKind
from .splicer_stats import (
    ORACLE_MAX_K, ORACLE_MAX_N, StatReport, brute_force_oracle, concentration_check,
    exact_value, render_table, reports_from_samples, simulate,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    n: int = 0
    k: int = 1
    sampler: SamplerKind = SamplerKind.PRUFER
    seed: int = 0
    trials: int = 10_000
    output_format: str = "edgelist"
    output_path: Path | None = None
    meta_path: Path | None = None
    oracle: bool = False
    s: float = 1.0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        seed = args.seed if getattr(args, "seed", None) is not None else secrets.randbits(64)
        out = getattr(args, "out", None)
        return cls(
            subcommand=args.command, n=args.n, k=args.k,
            sampler=SamplerKind.parse(getattr(args, "sampler", "prufer")),
            seed=seed, trials=getattr(args, "trials", 10_000),
            output_format=getattr(args, "format", "edgelist"),
            output_path=Path(out) if out else None,
            meta_path=Path(args.meta) if getattr(args, "meta", None) else None,
            oracle=getattr(args, "oracle", False), s=getattr(args, "s", 1.0),
        )


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _generate(cfg: RunConfig) -> dict:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g, log, _ = generate_k_connected(cfg.n, cfg.k, cfg.sampler, RngStream(cfg.seed))
    cert = edge_connectivity(g)
    lower = math.ceil(cfg.k * cfg.n / 2)
    ratio = Fraction(g.edge_count, lower)
    cap = Fraction(2 * (cfg.n - 1), cfg.n)
    return {
        "graph": g,
        "meta": {
            "n": cfg.n, "k": cfg.k, "seed": cfg.seed, "sampler": cfg.sampler.value,
            "edges": g.edge_count, "fallbacks": log.fallbacks, "lambda": cert.lam,
            "lower_bound": lower, "ratio": float(ratio), "ratio_bound": float(cap),
            "warnings": [str(w.message) for w in caught],
            "certificate": cert.to_dict(), "repair_log": log.to_dict(),
        },
        "ratio": ratio, "cap": cap,
    }


def _check_sizes(cfg: RunConfig, min_n: int = 2) -> str | None:
    if cfg.n < min_n:
        return f"--n must be at least {min_n}"
    if cfg.k < 1:
        return "--k must be at least 1"
    return None


def cmd_gen(cfg: RunConfig) -> int:
    if err := _check_sizes(cfg):
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    result = _generate(cfg)
    meta = result["meta"]
    _emit(formats.dumps(result["graph"], cfg.output_format), cfg.output_path)
    sidecar = json.dumps(meta, indent=2) + "\n"
    meta_path = cfg.meta_path or (cfg.output_path.with_name(cfg.output_path.name + ".meta.json")
                                  if cfg.output_path else None)
    if meta_path:
        meta_path.write_text(sidecar)
    else:
        sys.stderr.write(sidecar)
    if meta["lambda"] < cfg.k:
        print(f"edge connectivity {meta['lambda']} < k={cfg.k} "
              f"({meta['fallbacks']} fallback repair(s)); certificate: "
              f"{json.dumps(meta['certificate'])}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify(path: Path, expected_k: int) -> int:
    try:
        g = formats.loads(Path(path).read_text())
    except (OSError, GraphError, ValueError) as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if g.n < 2:
        print("error: graph needs at least 2 vertices", file=sys.stderr)
        return EXIT_USAGE
    cert = edge_connectivity(g)
    out = cert.to_dict()
    out["expected_k"] = expected_k
    out["pass"] = cert.lam >= expected_k
    print(json.dumps(out))
    return EXIT_OK if out["pass"] else EXIT_VIOLATION


def _oracle_rows(n: int, k: int) -> list[dict]:
    names = ["edge_prob", "s_k", "m", "var_m", "mean_re", "var_re"]
    if n >= 3:
        names += ["pair_adjacent", "cov_adjacent"]
    if n >= 4:
        names += ["pair_nonadjacent", "cov_nonadjacent"]
    rows = [(name, None) for name in names]
    rows += [("common", ell) for ell in range(1, k + 1)]
    out = []
    for name, ell in rows:
        exact = exact_value(n, k, name, ell)
        oracle = brute_force_oracle(n, k, name, ell)
        label = f"common_{ell}" if ell else name
        out.append({"quantity": label, "exact": str(exact), "oracle": str(oracle),
                    "pass": exact == oracle})
    return out


def stats_reports(cfg: RunConfig) -> list[StatReport]:
    rng = RngStream(cfg.seed)
    samples = simulate(cfg.n, cfg.k, cfg.trials, rng, cfg.sampler)
    reports = reports_from_samples(cfg.n, cfg.k, samples)
    if cfg.k >= 2:
        conc = concentration_check(cfg.n, cfg.k, cfg.s, cfg.trials, rng, m_values=samples["m"])
        reports.append(conc.report())
    return reports


def cmd_stats(cfg: RunConfig) -> int:
    if err := _check_sizes(cfg):
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.trials < 100:
        print("error: --trials must be at least 100", file=sys.stderr)
        return EXIT_USAGE
    if cfg.s <= 0:
        print("error: --s must be positive", file=sys.stderr)
        return EXIT_USAGE
    if cfg.oracle and (cfg.n > ORACLE_MAX_N or cfg.k > ORACLE_MAX_K):
        print(f"error: --oracle needs n <= {ORACLE_MAX_N} and k <= {ORACLE_MAX_K}", file=sys.stderr)
        return EXIT_USAGE
    reports = stats_reports(cfg)
    oracle = _oracle_rows(cfg.n, cfg.k) if cfg.oracle else []
    ok = all(r.passed for r in reports) and all(o["pass"] for o in oracle)

    if cfg.output_format == "json":
        doc = {"n": cfg.n, "k": cfg.k, "seed": cfg.seed, "sampler": cfg.sampler.value,
               "trials": cfg.trials, "s": cfg.s, "reports": [r.to_dict() for r in reports],
               "pass": ok}
        if cfg.oracle:
            doc["oracle"] = oracle
        text = json.dumps(doc, indent=2) + "\n"
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        fields = ["quantity", "n", "k", "exact", "estimate", "std_error", "trials", "pass"]
        writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow(r.to_dict())
        text = buf.getvalue()
    else:
        text = (f"# n={cfg.n} k={cfg.k} seed={cfg.seed} sampler={cfg.sampler.value} "
                f"trials={cfg.trials}\n" + render_table(reports) + "\n")
        if cfg.oracle:
            text += "\noracle cross-check (exact rational equality)\n"
            for o in oracle:
                text += f"  {o['quantity']:<18} {o['exact']:>14} {o['oracle']:>14}  {'PASS' if o['pass'] else 'FAIL'}\n"
    _emit(text, cfg.output_path)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_approx(cfg: RunConfig) -> int:
    if err := _check_sizes(cfg, min_n=3):
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    result = _generate(cfg)
    meta = result["meta"]
    if cfg.output_path:
        cfg.output_path.write_text(formats.dumps(result["graph"], cfg.output_format))
    ok = result["ratio"] <= result["cap"]
    report = {k: meta[k] for k in ("n", "k", "seed", "sampler", "edges", "lower_bound",
                                   "ratio", "ratio_bound", "lambda", "fallbacks")}
    report["ratio_fraction"] = str(result["ratio"])
    report["pass"] = ok
    print(json.dumps(report))
    return EXIT_OK if ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ksplicer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_format=True):
        p.add_argument("--n", type=int, required=True, help="number of vertices")
        p.add_argument("--k", type=int, required=True, help="number of spanning trees")
        p.add_argument("--seed", type=_u64, default=None, help="64-bit seed (default: random, echoed)")
        p.add_argument("--sampler", choices=[s.value for s in SamplerKind], default="prufer")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        if with_format:
            p.add_argument("--format", choices=formats.FORMATS, default="edgelist")

    gen = sub.add_parser("gen", help="generate a k-edge-connected graph")
    common(gen)
    gen.add_argument("--meta", default=None, help="sidecar JSON path (default: <out>.meta.json or stderr)")

    verify = sub.add_parser("verify", help="certify the edge connectivity of a graph file")
    verify.add_argument("path")
    verify.add_argument("--k", type=int, required=True, help="required edge connectivity")

    stats = sub.add_parser("stats", help="check the closed forms against simulation")
    common(stats, with_format=False)
    stats.add_argument("--trials", type=int, default=10_000)
    stats.add_argument("--s", type=float, default=1.0, help="relative deviation for the tail check")
    stats.add_argument("--oracle", action="store_true", help="cross-check closed forms by enumeration")
    stats.add_argument("--format", choices=("table", "json", "csv"), default="table")

    approx = sub.add_parser("approx", help="report the approximation ratio of a generated graph")
    common(approx)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify":
        return cmd_verify(Path(args.path), args.k)
    cfg = RunConfig.from_args(args)
    return {"gen": cmd_gen, "stats": cmd_stats, "approx": cmd_approx}[args.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
