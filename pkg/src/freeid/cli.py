"""Command-line front end.

Usage:
    freeid transform --dist cosh --route closed --t 0.5:10:20 --log
    freeid verify --suite all --format json --out report.json
    freeid catalog [--dist tanh] [--format json]

Exit codes: 0 success, 1 a verification case failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .measures import CATALOG_NAMES, UnknownDistribution, catalog_lookup
from .quad import QuadConfig, QuadratureError
from .verify import SUITES, emit_report, run_suite
from .voiculescu import ROUTES, NoClosedForm, transform_fn

__all__ = ["CliConfig", "parse_t_spec", "t_grid", "run", "main"]

FORMATS = ("json", "csv", "table")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    dist: Optional[str] = None
    route: str = "closed"
    t_spec: tuple = (1.0, 1.0, 1)
    log: bool = False
    suite: str = "all"
    tol: Optional[float] = None
    format: str = "table"
    out: Optional[str] = None

    def __post_init__(self):
        start, stop, count = self.t_spec
        if not (start > 0 and stop > 0):
            raise UsageError("t values must be positive")
        if start > stop:
            raise UsageError("t grid needs start <= stop")
        if count < 1:
            raise UsageError("t grid needs count >= 1")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")


def parse_t_spec(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = float(parts[0])
            return v, v, 1
        if len(parts) == 3:
            return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        pass
    raise UsageError(f"bad t grid {text!r}; expected start:stop:count")


def t_grid(start: float, stop: float, count: int, log: bool = False) -> list[float]:
    if count == 1:
        return [float(start)]
    pts = np.geomspace(start, stop, count) if log else np.linspace(start, stop, count)
    return [float(v) for v in pts]


def _g12(x: float) -> str:
    return f"{x + 0.0:.12g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeid",
        description="Voiculescu transforms of free analogues of infinitely divisible laws.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", choices=FORMATS, default="table")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("transform", help="evaluate V(it) on a grid of t")
    p.add_argument("--dist", required=True)
    p.add_argument("--route", choices=ROUTES, default="closed")
    p.add_argument("--t", dest="t_spec", default="1:10:10", help="start:stop:count")
    p.add_argument("--log", action="store_true", help="log-spaced grid")
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    common(p)

    p = sub.add_parser("catalog", help="list catalogue entries")
    p.add_argument("--dist", default=None)
    common(p)
    return parser


def _transform(cfg: CliConfig, quad_cfg: QuadConfig) -> tuple[bytes, int]:
    fn = transform_fn(cfg.dist, cfg.route, quad_cfg)
    rows = [(t, fn(t)) for t in sorted(t_grid(*cfg.t_spec, log=cfg.log))]
    if cfg.format == "json":
        doc = {
            "dist": cfg.dist,
            "route": cfg.route,
            "points": [{"t": t, "re": v.real, "im": v.imag} for t, v in rows],
        }
        return (json.dumps(doc, indent=2) + "\n").encode(), 0
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "re", "im"])
        for t, v in rows:
            w.writerow([_g12(t), _g12(v.real), _g12(v.imag)])
        return buf.getvalue().encode(), 0
    lines = [f"{'t':>20}  {'Re V(it)':>20}  {'Im V(it)':>20}"]
    for t, v in rows:
        lines.append(f"{_g12(t):>20}  {_g12(v.real):>20}  {_g12(v.imag):>20}")
    return ("\n".join(lines) + "\n").encode(), 0


def _catalog(cfg: CliConfig) -> tuple[bytes, int]:
    names = [cfg.dist] if cfg.dist else list(CATALOG_NAMES)
    meta = [catalog_lookup(n).metadata() for n in names]
    if cfg.format == "json":
        return (json.dumps(meta, indent=2) + "\n").encode(), 0
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "mass", "bdcf_of", "log_cf", "m_density", "closed_v"])
        for m in meta:
            f = m["formulas"]
            w.writerow([m["name"], _g12(m["mass"]), m["bdcf_of"] or "", f["log_cf"],
                        f["m_density"], f.get("closed_v", "")])
        return buf.getvalue().encode(), 0
    lines = []
    for m in meta:
        f = m["formulas"]
        lines.append(m["name"])
        lines.append(f"  log phi(t)     = {f['log_cf']}")
        lines.append(f"  m density      = {f['m_density']}")
        lines.append(f"  Levy density   = {f['levy_density']}")
        lines.append(f"  V(it)          = {f.get('closed_v', '-')}")
        lines.append(f"  m(R)           = {_g12(m['mass'])}")
        if m["bdcf_of"]:
            lines.append(f"  drives         = {m['bdcf_of']}")
    return ("\n".join(lines) + "\n").encode(), 0


def run(argv: list[str], stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0

    try:
        cfg = CliConfig(
            subcommand=ns.subcommand,
            dist=getattr(ns, "dist", None),
            route=getattr(ns, "route", "closed"),
            t_spec=parse_t_spec(getattr(ns, "t_spec", "1")),
            log=getattr(ns, "log", False),
            suite=getattr(ns, "suite", "all"),
            tol=ns.tol,
            format=ns.format,
            out=ns.out,
        )
        quad_cfg = QuadConfig.from_env()
        if cfg.subcommand == "transform":
            if cfg.tol is not None:
                quad_cfg = replace(quad_cfg, rel_tol=cfg.tol, abs_tol=min(quad_cfg.abs_tol, cfg.tol))
            payload, code = _transform(cfg, quad_cfg)
        elif cfg.subcommand == "verify":
            report = run_suite(cfg.suite, cfg.tol, quad_cfg)
            payload, code = emit_report(report, cfg.format), (1 if report.n_fail else 0)
        else:
            payload, code = _catalog(cfg)
    except UnknownDistribution as exc:
        print(f"freeid: {exc.args[0]}", file=stderr)
        return 2
    except (UsageError, NoClosedForm, ValueError) as exc:
        print(f"freeid: {exc}", file=stderr)
        return 2
    except QuadratureError as exc:
        print(f"freeid: quadrature failed: {exc}", file=stderr)
        return 1

    if cfg.out:
        with open(cfg.out, "wb") as fh:
            fh.write(payload)
    else:
        stdout.write(payload)
        stdout.flush()
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
