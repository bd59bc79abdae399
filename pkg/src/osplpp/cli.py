"""Command-line entry point: enumerate, verify, simulate, compare.

Exit codes: 0 when every assertion passes, 1 when one fails, 2 for usage or
schema errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from .report import TestReport, merge_reports

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CACHE_FORMAT = "osplpp-enumeration"
CACHE_VERSION = 1
SIM_RANGE = (2, 12)
EXACT_RANGE = (2, 6)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: Optional[str] = None
    n: Optional[int] = None
    seed: int = 0
    replicas: Optional[int] = None
    tol: Optional[float] = None
    method: Optional[str] = None
    workers: int = 1
    cache_dir: Optional[str] = None
    out: Optional[str] = None
    extra: dict[str, Any] = field(default_factory=dict)

    def check_n(self, bounds: tuple[int, int]):
        lo, hi = bounds
        if self.n is None or not lo <= self.n <= hi:
            raise UsageError(f"--n must be in [{lo}, {hi}] for {self.command} {self.target or ''}".rstrip())


# -- helpers -----------------------------------------------------------------

def _emit(report: TestReport, cfg: RunConfig) -> int:
    record = report.to_record()
    record["run_config"] = asdict(cfg)
    print(report.line())
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(record, indent=2) + "\n")
    if not report.passed:
        failing = _failing_cases(record)
        if failing:
            print(json.dumps({"failing_cases": failing}, indent=2), file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _failing_cases(record: dict) -> list:
    found = list(record.get("details", {}).get("failing_cases", []))
    found += record.get("details", {}).get("mismatched", [])
    for sub in record.get("details", {}).get("reports", []):
        if not sub.get("passed", True):
            found.append({"report": sub.get("name"), "statistics": sub.get("statistics")})
            found += _failing_cases(sub)
    return found[:50]


def _cache_path(cfg: RunConfig) -> Optional[Path]:
    if cfg.out:
        return Path(cfg.out)
    if cfg.cache_dir:
        return Path(cfg.cache_dir) / f"{cfg.target}-n{cfg.n}.v{CACHE_VERSION}.txt"
    return None


def _read_cache(path: Path, kind: str, n: int) -> Optional[int]:
    """Return the verified record count of a cache file, or None if it must be rebuilt."""
    try:
        with path.open() as fh:
            header = json.loads(fh.readline())
            records = sum(1 for line in fh if line.strip())
    except (OSError, ValueError):
        return None
    if (header.get("format") != CACHE_FORMAT or header.get("version") != CACHE_VERSION
            or header.get("kind") != kind or header.get("n") != n or header.get("count") != records):
        return None
    return records


# -- commands ----------------------------------------------------------------

def cmd_enumerate(cfg: RunConfig) -> int:
    from .shapes import enumerate_syt, staircase
    from .sortnet import enumerate_sorting_networks

    cfg.check_n(EXACT_RANGE)
    path = _cache_path(cfg)
    if path is not None and path.exists():
        count = _read_cache(path, cfg.target, cfg.n)
        if count is not None:
            print(f"count {count} (cached, verified) {path}")
            return EXIT_PASS
    if cfg.target == "syt":
        records = [t.to_text() for t in enumerate_syt(staircase(cfg.n))]
    else:
        records = [str(s) for s in enumerate_sorting_networks(cfg.n)]
    header = {"format": CACHE_FORMAT, "version": CACHE_VERSION, "kind": cfg.target, "n": cfg.n,
              "count": len(records)}
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w") as fh:
            fh.write(json.dumps(header) + "\n")
            for r in records:
                fh.write(r + "\n")
    print(f"count {len(records)}" + (f" {path}" if path else ""))
    return EXIT_PASS


def cmd_verify(cfg: RunConfig) -> int:
    from . import checks, genfun
    from .edelman_greene import verify_eg_params
    from .shapes import YoungDiagram

    target = cfg.target
    if target == "eg":
        cfg.check_n(EXACT_RANGE)
        reports = [verify_eg_params(cfg.n)]
        if cfg.n <= 5:
            reports.insert(0, checks.eg_bijection_check(cfg.n))
        if cfg.n == 6:
            reports.append(checks.example_network_check())
        report = reports[0] if len(reports) == 1 else merge_reports(f"eg n={cfg.n}", reports)
        return _emit(report, cfg)
    if target == "identity":
        cfg.check_n(EXACT_RANGE)
        method = cfg.method or (genfun.CANONICAL if cfg.n <= 5 else genfun.EVALUATION)
        cfg.method = method
        points = cfg.extra.get("points", 20)
        report = genfun.verify_identity(cfg.n, method, points=points, seed=cfg.seed)
        if cfg.extra.get("show_component"):
            F = genfun.accumulate_F(cfg.n)
            ident = tuple(range(1, cfg.n))
            num, den = genfun.recombine(F[ident])
            text = genfun.format_rational(num, den)
            report.details["identity_component"] = text
            report.details["identity_component_basis"] = genfun.format_form(F[ident])
            print(f"component {','.join(map(str, ident))}: {text}")
        return _emit(report, cfg)
    if target == "rsk-burge":
        box = cfg.extra.get("box", 3)
        cap = cfg.extra.get("cap", 2)
        return _emit(checks.rsk_burge_exhaustive(box=box, cap=cap), cfg)
    if target == "thm22":
        try:
            shape = YoungDiagram.parse(cfg.extra.get("shape", "2,2"))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if cfg.extra.get("bernoulli"):
            return _emit(checks.border_law_bernoulli_check(shape), cfg)
        try:
            report = checks.border_law_check(shape, Fraction(cfg.extra.get("p", "1/2")), cfg.extra.get("cap", 4))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return _emit(report, cfg)
    raise UsageError(f"unknown verify target {target!r}")


def _columns(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{k}" for k in range(1, n)] + [f"{prefix}max"]


def cmd_simulate(cfg: RunConfig) -> int:
    from .processes import sample_coordinates

    cfg.check_n(SIM_RANGE)
    if not cfg.replicas or cfg.replicas < 1:
        raise UsageError("--replicas must be positive")
    data = sample_coordinates(cfg.target, cfg.n, cfg.replicas, cfg.seed, workers=cfg.workers)
    header = ["replica"]
    blocks = []
    for prefix, coords in data.items():
        header += _columns(prefix, cfg.n)
        blocks.append(np.column_stack([coords, coords.max(axis=1)]))
    table = np.hstack(blocks)
    fh = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(header)
        for r, row in enumerate(table):
            w.writerow([r] + ["%.17g" % v for v in row])
    finally:
        if cfg.out:
            fh.close()
    if cfg.out:
        print(f"wrote {len(table)} rows to {cfg.out}")
    return EXIT_PASS


def _load_csv(path: str) -> dict[str, np.ndarray]:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    if not rows:
        raise UsageError(f"{path}: empty file")
    header, body = rows[0], rows[1:]
    try:
        arr = np.array([[float(v) for v in row] for row in body], dtype=float).reshape(len(body), len(header))
    except ValueError as exc:
        raise UsageError(f"{path}: malformed CSV ({exc})") from exc
    return {name: arr[:, i] for i, name in enumerate(header)}


def _prefix(table: dict, requested: Optional[str], path: str) -> tuple[str, list[str]]:
    prefixes = sorted({c.rstrip("0123456789").removesuffix("max") for c in table if c != "replica"})
    prefix = requested or (prefixes[0] if len(prefixes) == 1 else None)
    if prefix is None:
        raise UsageError(f"{path}: several coordinate families {prefixes}; pass --lhs-prefix/--rhs-prefix")
    coords = sorted((c for c in table if c.startswith(prefix) and c[len(prefix):].isdigit()),
                    key=lambda c: int(c[len(prefix):]))
    if not coords:
        raise UsageError(f"{path}: no columns with prefix {prefix!r}")
    return prefix, coords


def parse_functional(spec: str, dim: int):
    """'max', 'sum', or a linear combination of 1-based coordinates such as '2+2*5'."""
    if spec == "max":
        return lambda m: m.max(axis=1)
    if spec == "sum":
        return lambda m: m.sum(axis=1)
    coef = np.zeros(dim)
    for term in spec.split("+"):
        c, _, k = term.strip().rpartition("*")
        try:
            idx = int(k)
            coef[idx - 1] += float(c) if c else 1.0
        except (ValueError, IndexError) as exc:
            raise UsageError(f"bad functional {spec!r}") from exc
        if idx < 1:
            raise UsageError(f"bad functional {spec!r}")
    return lambda m: m @ coef


def cmd_compare(cfg: RunConfig) -> int:
    from .stats import ALPHA, ks_two_sample

    lhs_path, rhs_path = cfg.extra["lhs"], cfg.extra["rhs"]
    lhs, rhs = _load_csv(lhs_path), _load_csv(rhs_path)
    lp, lcols = _prefix(lhs, cfg.extra.get("lhs_prefix"), lhs_path)
    rp, rcols = _prefix(rhs, cfg.extra.get("rhs_prefix"), rhs_path)
    if len(lcols) != len(rcols):
        raise UsageError(f"schema mismatch: {len(lcols)} vs {len(rcols)} coordinates")
    alpha = cfg.tol if cfg.tol is not None else ALPHA
    a = np.column_stack([lhs[c] for c in lcols])
    b = np.column_stack([rhs[c] for c in rcols])
    reports = [ks_two_sample(a[:, k], b[:, k], f"coord{k + 1}", alpha) for k in range(a.shape[1])]
    for spec in cfg.extra.get("functionals") or ["max", "sum"]:
        f = parse_functional(spec, a.shape[1])
        reports.append(ks_two_sample(f(a), f(b), spec, alpha))
    report = merge_reports(f"compare {lp} vs {rp}", reports, bonferroni=True)
    report.statistics.update({r.name + "_D": r.statistics["D"] for r in reports})
    report.statistics.update({r.name + "_p": r.statistics["p"] for r in reports})
    report.thresholds["alpha"] = alpha
    return _emit(report, cfg)


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--replicas", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--method", choices=["canonical", "evaluation"])
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cache-dir")
    common.add_argument("--out")

    parser = argparse.ArgumentParser(prog="osplpp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="dump SYT(delta_n) or sorting networks")
    p.add_argument("target", choices=["syt", "networks"])

    p = sub.add_parser("verify", parents=[common], help="run an exact verification suite")
    p.add_argument("target", choices=["eg", "identity", "rsk-burge", "thm22"])
    p.add_argument("--points", type=int, default=20, help="evaluation points for --method evaluation")
    p.add_argument("--show-component", action="store_true", help="print the recombined identity component")
    p.add_argument("--shape", default="2,2", help="partition for thm22, e.g. 3,2,1")
    p.add_argument("--p", default="1/2", help="geometric parameter for thm22 (exact rational)")
    p.add_argument("--cap", type=int, help="value cap (thm22, default 4) or entry cap (rsk-burge, default 2)")
    p.add_argument("--box", type=int, default=3, help="bounding box for rsk-burge")
    p.add_argument("--bernoulli", action="store_true", help="thm22 with uniform {0,1} weights")

    p = sub.add_parser("simulate", parents=[common], help="write coordinate samples as CSV")
    p.add_argument("target", choices=["osp", "osp-clocks", "growth", "lpp"])

    p = sub.add_parser("compare", parents=[common], help="two-sample KS tests between CSV files")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--functionals", default="max,sum", help="comma-separated: max, sum, or e.g. 2+2*5")
    p.add_argument("--lhs-prefix")
    p.add_argument("--rhs-prefix")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    extra: dict[str, Any] = {}
    if args.command == "verify":
        extra = {"points": args.points, "show_component": args.show_component, "shape": args.shape,
                 "p": args.p, "box": args.box, "bernoulli": args.bernoulli}
        if args.cap is not None:
            extra["cap"] = args.cap
    elif args.command == "compare":
        extra = {"lhs": args.lhs, "rhs": args.rhs, "lhs_prefix": args.lhs_prefix, "rhs_prefix": args.rhs_prefix,
                 "functionals": [f for f in args.functionals.split(",") if f]}
    return RunConfig(command=args.command, target=getattr(args, "target", None), n=args.n, seed=args.seed,
                     replicas=args.replicas, tol=args.tol, method=args.method, workers=max(1, args.workers),
                     cache_dir=args.cache_dir, out=args.out, extra=extra)


COMMANDS = {"enumerate": cmd_enumerate, "verify": cmd_verify, "simulate": cmd_simulate, "compare": cmd_compare}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    cfg = config_from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
