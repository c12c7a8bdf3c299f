"""Command-line front end.

Exit codes: 0 success, 1 a verification failed (the report is still written),
2 usage or input error, 3 network failure during online discovery.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import cobweb, inversion
from .discovery import DiscoveryOptions, discovery_report
from .triangles import FAMILIES, Triangle, generate

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NETWORK = 0, 1, 2, 3

SUITES = {
    "eq1": (inversion.verify_eq1, 64),
    "eq2": (inversion.verify_eq2, 30),
    "ex3": (inversion.verify_ex3, 30),
    "ex4": (inversion.verify_ex4, 24),
    "ex5": (inversion.verify_ex5, 40),
    "ex6": (inversion.verify_ex6, 20),
    "eq4": (cobweb.eq4_report, 40),
    "bridge": (cobweb.bridge_check, 40),
}


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    family: str | None = None
    rows: int | None = None
    format: str = "json"
    output: str | None = None
    offline: bool = False
    cache_dir: str | None = None
    max_order: int = 4
    reference: str | None = None
    suite: str | None = None
    input: str | None = None
    max_offset: int = 6
    no_oeis: bool = False

    def __post_init__(self):
        if self.rows is not None and self.rows < 0:
            raise UsageError("--rows must be >= 0")
        for name in (self.family, self.reference):
            if name is not None and name not in FAMILIES:
                raise UsageError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fibinv", description="Exact inversion of combinatorial triangles.")
    sub = p.add_subparsers(dest="command", required=True)

    def rows_arg(sp, default=None):
        sp.add_argument("--rows", "-N", type=int, default=default, help="largest row index N")

    def out_arg(sp, formats, default):
        sp.add_argument("--format", "-f", choices=formats, default=default)
        sp.add_argument("--output", "-o", help="write here instead of stdout")

    g = sub.add_parser("gen", help="generate a triangle")
    g.add_argument("--family", required=True)
    rows_arg(g, 10)
    out_arg(g, ["csv", "json", "latex"], "csv")

    inv = sub.add_parser("invert", help="invert a generated or ingested triangle")
    src = inv.add_mutually_exclusive_group(required=True)
    src.add_argument("--family")
    src.add_argument("--input", help="triangle JSON document")
    rows_arg(inv, 10)
    out_arg(inv, ["csv", "json", "latex"], "csv")

    v = sub.add_parser("verify", help="check the inverse-pair identities")
    v.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    rows_arg(v)
    out_arg(v, ["json", "text"], "text")

    w = sub.add_parser("weighted-inverse", help="g = f^-1 in the cobweb incidence algebra")
    rows_arg(w, 10)
    out_arg(w, ["json", "csv"], "json")

    d = sub.add_parser("discover", help="mine the inverse of a family for patterns")
    d.add_argument("--family", default="fibonomial")
    rows_arg(d, 20)
    out_arg(d, ["json", "markdown"], "markdown")
    d.add_argument("--reference", help="normalize against this family (default: the family itself)")
    d.add_argument("--max-order", type=int, default=4)
    d.add_argument("--max-offset", type=int, default=6)
    d.add_argument("--offline", action="store_true", help="use only the OEIS cache")
    d.add_argument("--no-oeis", action="store_true", help="skip OEIS entirely")
    d.add_argument("--cache-dir", help="OEIS cache directory (default $FIBINV_CACHE_DIR)")
    return p


def _emit(text: str, output: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _render_triangle(T: Triangle, fmt: str) -> str:
    if fmt == "json":
        return T.to_json(indent=2)
    if fmt == "latex":
        return T.to_latex()
    return T.to_csv()


def _cmd_gen(cfg: CliConfig) -> int:
    _emit(_render_triangle(generate(cfg.family, cfg.rows), cfg.format), cfg.output)
    return EXIT_OK


def _cmd_invert(cfg: CliConfig) -> int:
    if cfg.input:
        try:
            T = Triangle.from_json(Path(cfg.input).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read triangle from {cfg.input}: {exc}") from exc
    else:
        T = generate(cfg.family, cfg.rows)
    try:
        B = inversion.invert_triangle(T)
    except inversion.SingularTriangleError as exc:
        raise UsageError(str(exc)) from exc
    _emit(_render_triangle(B, cfg.format), cfg.output)
    return EXIT_OK


def _cmd_verify(cfg: CliConfig) -> int:
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    reports = []
    for name in names:
        fn, default_rows = SUITES[name]
        reports.append(fn(cfg.rows if cfg.rows is not None else default_rows))
    ok = all(r.passed for r in reports)
    if cfg.format == "json":
        doc = reports[0].to_dict() if len(reports) == 1 else {
            "pass": ok, "reports": [r.to_dict() for r in reports]
        }
        _emit(json.dumps(doc, indent=2), cfg.output)
    else:
        _emit("\n".join(r.summary() for r in reports), cfg.output)
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_weighted(cfg: CliConfig) -> int:
    if cfg.rows < 1:
        raise UsageError("weighted-inverse needs --rows >= 1")
    g = cobweb.weighted_inverse(cobweb.fibonomial_function(cfg.rows))
    _emit(g.to_json() if cfg.format == "json" else g.to_csv(), cfg.output)
    return EXIT_OK


def _cmd_discover(cfg: CliConfig) -> int:
    opts = DiscoveryOptions(
        max_offset=cfg.max_offset,
        max_order=cfg.max_order,
        reference=cfg.reference,
        oeis=not cfg.no_oeis,
        offline=cfg.offline,
        cache_dir=cfg.cache_dir,
    )
    rep = discovery_report(cfg.family, cfg.rows, opts)
    _emit(rep.to_json() if cfg.format == "json" else rep.to_markdown(), cfg.output)
    for w in rep.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_NETWORK if rep.network_error else EXIT_OK


COMMANDS = {
    "gen": _cmd_gen,
    "invert": _cmd_invert,
    "verify": _cmd_verify,
    "weighted-inverse": _cmd_weighted,
    "discover": _cmd_discover,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    fields = {k.replace("-", "_"): v for k, v in vars(ns).items()}
    try:
        cfg = CliConfig(**fields)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fibinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
