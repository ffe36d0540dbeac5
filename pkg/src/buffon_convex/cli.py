"""Command-line runner for the batch experiments.

Exit status: 0 when every check passes, 1 on a check failure, 2 on a usage
or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .errors import BuffonError
from .experiments import (
    DEFAULT_ECCENTRICITIES,
    DEFAULT_LENGTHS,
    DEFAULT_VERIFY_LENGTHS,
    SweepConfig,
    Table,
    default_suite,
    monotone_in_eccentricity,
    run_body_eval,
    run_disk_curve,
    run_ellipse_sweep,
    run_steiner_check,
    run_verification_suite,
)
from .geom.bodies import DEFAULT_PROXY_N
from .geom.bodyfile import load_body, parse_body
from .geom.normalize import normalize_to_perimeter

__all__ = ["main", "normalize_to_perimeter", "run_disk_curve", "run_ellipse_sweep", "run_verification_suite",
           "SweepConfig"]

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
MC_COMMANDS = {"disk-curve", "ellipse-sweep", "verify", "body-eval"}


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from exc


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option defaults; flags override it")
    common.add_argument("--body", help="JSON body description")
    common.add_argument("--l", type=_float_list, help="needle lengths (or offsets), comma separated")
    common.add_argument("--n", type=int, help="Monte Carlo samples per cell")
    common.add_argument("--seed", type=_u64, help="master seed (required for Monte Carlo)")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--proxy-n", dest="proxy_n", type=int, help="polygon proxy resolution for curved bodies")
    common.add_argument("--workers", type=int, help="thread pool size for sweep cells")

    p = _Parser(prog="buffon-convex", description="Buffon needle probability experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("disk-curve", parents=[common], help="closed form, MC and quadrature for the unit disk")
    s = sub.add_parser("ellipse-sweep", parents=[common], help="MC over eccentricity and needle length")
    s.add_argument("--e", type=_float_list, help="eccentricities")
    sub.add_parser("verify", parents=[common], help="run every bound check on a body suite")
    sub.add_parser("steiner-check", parents=[common], help="Steiner identities for erosion then dilation")
    sub.add_parser("body-eval", parents=[common], help="all probability routes for one body")
    return p


_DEFAULTS: dict[str, Any] = {"n": 100_000, "format": "csv", "proxy_n": DEFAULT_PROXY_N, "workers": 1}


def resolve_options(args: argparse.Namespace) -> dict[str, Any]:
    """Defaults, then the config file, then explicit flags."""
    opts = dict(_DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        known = {"body", "l", "e", "n", "seed", "out", "format", "proxy_n", "workers"}
        if set(cfg) - known:
            raise UsageError(f"unknown config fields: {sorted(set(cfg) - known)}")
        opts.update(cfg)
    for k, v in vars(args).items():
        if k not in ("command", "config") and v is not None:
            opts[k] = v
    if args.command in MC_COMMANDS and opts.get("seed") is None:
        raise UsageError(f"{args.command} needs --seed")
    if opts["format"] not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    return opts


def _body(opts: dict[str, Any]):
    src = opts.get("body")
    if src is None:
        raise UsageError("--body is required")
    try:
        body = parse_body(src) if isinstance(src, dict) else load_body(src)
    except OSError as exc:
        raise UsageError(f"cannot read body {src}: {exc}") from exc
    return normalize_to_perimeter(body)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def _render(table: Table, fmt: str) -> str:
    return table.to_csv() if fmt == "csv" else table.to_json()


def _run(command: str, opts: dict[str, Any]) -> int:
    fmt, out = opts["format"], opts.get("out")
    if command == "disk-curve":
        lengths = opts.get("l") or [0.0, 0.5, 1.0, 1.5, 2.0]
        _emit(_render(run_disk_curve(lengths, opts["n"], opts["seed"]), fmt), out)
        return EXIT_OK

    if command == "ellipse-sweep":
        cfg = SweepConfig(
            eccentricities=tuple(opts.get("e") or DEFAULT_ECCENTRICITIES),
            lengths=tuple(opts.get("l") or DEFAULT_LENGTHS),
            n_samples=opts["n"], seed=opts["seed"], out=out, proxy_n=opts["proxy_n"], workers=opts["workers"],
        )
        table = run_ellipse_sweep(cfg)
        small = cfg.lengths[0]
        table.metadata["monotone_check_l"] = small
        table.metadata["monotone_violations"] = monotone_in_eccentricity(table, small)
        _emit(_render(table, fmt), out)
        return EXIT_OK

    if command == "verify":
        bodies = {"body": _body(opts)} if opts.get("body") else default_suite()
        report = run_verification_suite(bodies, opts.get("l") or DEFAULT_VERIFY_LENGTHS, n_samples=opts["n"],
                                        seed=opts["seed"], proxy_n=opts["proxy_n"])
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", out)
        return EXIT_OK if report["passed"] else EXIT_CHECK

    if command == "steiner-check":
        table = run_steiner_check(_body(opts), opts.get("l") or [2.0**-k for k in range(3, 13)],
                                  proxy_n=opts["proxy_n"])
        _emit(_render(table, fmt), out)
        ok = all(r[-1] is None or (r[-1] >= -1e-9 and r[-2] >= -1e-9) for r in table.rows)
        return EXIT_OK if ok else EXIT_CHECK

    if command == "body-eval":
        table = run_body_eval(_body(opts), opts.get("l") or [0.1, 0.5, 1.0], opts["n"], opts["seed"])
        _emit(_render(table, fmt), out)
        return EXIT_OK
    raise UsageError(f"unknown command {command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args.command, resolve_options(args))
    except (UsageError, ValueError, BuffonError) as exc:
        print(f"buffon-convex: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
