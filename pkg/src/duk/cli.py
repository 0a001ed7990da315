"""``duk`` command line: area | cn | validate | mc-cn | render.

Exit codes: 0 success, 2 bad input, 3 a center at the origin,
4 quadrature did not converge, 5 validation tolerance exceeded,
6 Monte Carlo failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from duk import __version__
from duk.closed_form import union_area
from duk.geometry import DiskConfig, GeometryError, argument_order, is_remote
from duk.oracle import exact_union_area, mc_c_n
from duk.quadrature import c2, c3
from duk.render import MAX_DISKS, render_svg
from duk.validation import validate

EXIT_OK, EXIT_INPUT, EXIT_GEOMETRY, EXIT_NOCONV, EXIT_VALIDATION, EXIT_MC = 0, 2, 3, 4, 5, 6


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: Optional[int] = None
    tool_version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z")
    )


class InputError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _emit(payload: dict, out: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _read_config(args) -> DiskConfig:
    if args.inline is not None:
        text = args.inline
    elif args.input is not None:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot read {args.input}: {e}")
    else:
        raise InputError("give the centers with --input PATH or --inline JSON")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}")
    if not isinstance(data, list) or not data or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(v, (int, float)) for v in p) for p in data
    ):
        raise InputError("expected a non-empty JSON array of [x, y] number pairs")
    if any(float(x) == 0.0 and float(y) == 0.0 for x, y in data):
        raise InputError("a disk center lies at the origin", EXIT_GEOMETRY)
    try:
        return DiskConfig.from_pairs(data)
    except GeometryError as e:
        raise InputError(str(e))


def cmd_area(args) -> int:
    config = _read_config(args)
    order = argument_order(config)
    ordered = config.permuted(order)
    remote = is_remote(ordered)
    oracle = exact_union_area(ordered)
    report = {
        "remote": remote,
        "oracle": oracle,
        "permutation": order,
        "sorted_config": ordered.to_pairs(),
    }
    try:
        closed = union_area(ordered)
    except GeometryError as e:
        closed = None
        report["closed_form_error"] = str(e)
    report["closed_form"] = closed
    report["abs_diff"] = None if closed is None else abs(closed - oracle)
    if not remote:
        report["warning"] = "centers are not remote: closed form is outside its validity domain"
    manifest = RunManifest("area", {"centers": config.to_pairs()})
    _emit({"manifest": asdict(manifest), "result": report}, args.out)
    return EXIT_OK


def cmd_cn(args) -> int:
    rel_tol = args.rel_tol if args.rel_tol is not None else (1e-6 if args.n == 2 else 1e-4)
    kwargs = {} if args.max_evals is None else {"max_evals": args.max_evals}
    try:
        result = (c2 if args.n == 2 else c3)(rel_tol, **kwargs)
    except ValueError as e:
        raise InputError(str(e))
    manifest = RunManifest("cn", {"n": args.n, "rel_tol": rel_tol, **kwargs})
    _emit({"manifest": asdict(manifest), "result": result.to_dict()}, args.out)
    return EXIT_OK if result.converged else EXIT_NOCONV


def _parse_n_values(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"--n expects comma-separated integers, got {text!r}")
    if not values:
        raise InputError("--n is empty")
    return values


def cmd_validate(args) -> int:
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    n_values = _parse_n_values(args.n)
    try:
        report = validate(args.trials, n_values, args.seed)
    except ValueError as e:
        raise InputError(str(e))
    manifest = RunManifest(
        "validate", {"trials": args.trials, "n_values": n_values}, seed=args.seed
    )
    _emit({"manifest": asdict(manifest), "result": report}, args.out)
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


def cmd_mc_cn(args) -> int:
    try:
        est = mc_c_n(args.n, args.samples, args.radius, args.seed, experimental=args.experimental)
    except Exception as e:  # any failure of the estimator is reported as exit 6
        sys.stderr.write(f"duk mc-cn: {e}\n")
        return EXIT_MC
    manifest = RunManifest(
        "mc-cn",
        {"n": args.n, "samples": args.samples, "radius": args.radius, "experimental": args.experimental},
        seed=args.seed,
    )
    _emit({"manifest": asdict(manifest), "result": est.to_dict()}, args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    config = _read_config(args)
    if config.n > MAX_DISKS:
        raise InputError(f"render supports at most {MAX_DISKS} disks")
    svg = render_svg(config)
    if args.out:
        Path(args.out).write_text(svg, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def _uint64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="duk", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"duk {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def config_flags(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--input", metavar="PATH", help="JSON file with [[x, y], ...] centers")
        g.add_argument("--inline", metavar="JSON", help="centers as inline JSON")

    sp = sub.add_parser("area", help="union area: closed form vs exact oracle")
    config_flags(sp)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_area)

    sp = sub.add_parser("cn", help="c_n from the reduced integrals")
    sp.add_argument("--n", type=int, choices=(2, 3), required=True)
    sp.add_argument("--rel-tol", type=float, default=None)
    sp.add_argument("--max-evals", type=int, default=None)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_cn)

    sp = sub.add_parser("validate", help="closed form vs oracle on random remote configurations")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--n", default="2,3,4,5", help="comma-separated disk counts (2..5)")
    sp.add_argument("--seed", type=_uint64, default=42)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("mc-cn", help="Monte Carlo estimate of the raw c_n integral")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=10_000_000)
    sp.add_argument("--radius", type=float, default=3.0)
    sp.add_argument("--seed", type=_uint64, default=0)
    sp.add_argument("--experimental", action="store_true", help="allow n outside {2, 3}")
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_mc_cn)

    sp = sub.add_parser("render", help="SVG drawing of a configuration")
    config_flags(sp)
    sp.add_argument("--out", metavar="PATH")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        sys.stderr.write(f"duk {args.command}: {e}\n")
        return e.code


if __name__ == "__main__":
    sys.exit(main())
