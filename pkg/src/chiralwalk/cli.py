"""Command-line interface: band structure, winding number, sweeps, edge states.

Exit codes: 0 on success, 2 for usage or configuration errors, 3 for domain
errors (closed gap, nonpositive temperature), 4 for numerical failures. All
angles are taken in radians; ``--theta2-pi-fraction p/q`` style flags accept
rationals of pi instead.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import scan
from .bloch import (
    SymmetryClass,
    WalkParameters,
    band_structure,
    check_chiral_symmetry,
    chiral_axis,
    winding_number,
)
from .errors import DomainError, NumericalError, ResolutionError
from .gibbs import GibbsFamily
from .realspace import (
    CoinProfile,
    build_floquet,
    quasienergy_spectrum,
    thermal_position_distribution,
)

CONFIG_SCHEMA = "chiralwalk-sweep/1"

BAND_CSV_HEADER = "k,E,n_x,n_y,n_z,degenerate"
EDGE_CSV_HEADER = "x,p"


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _pi_fraction(text: str) -> float:
    try:
        return math.pi * float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational multiple of pi: {text!r}") from exc


def _temps(text: str) -> list[float]:
    try:
        values = [float(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad temperature list: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("temperature list is empty")
    return values


def _resolve_angle(args, plain: str, fraction: str, required: bool = True) -> float | None:
    value = getattr(args, plain)
    frac = getattr(args, fraction)
    if value is not None and frac is not None:
        raise ValueError(f"--{plain.replace('_', '-')} and --{fraction.replace('_', '-')} are mutually exclusive")
    if value is None and frac is None:
        if required:
            raise ValueError(f"one of --{plain.replace('_', '-')} or --{fraction.replace('_', '-')} is required")
        return None
    return value if value is not None else frac


def _walk_parameters(args) -> WalkParameters:
    symmetry_class = SymmetryClass(args.symmetry_class)
    theta2 = _resolve_angle(args, "theta2", "theta2_pi_fraction")
    if args.theta1 is None:
        return WalkParameters.for_class(symmetry_class, theta2)
    return WalkParameters(
        symmetry_class,
        args.theta1,
        theta2,
        symmetry_class.canonical_axis,
        theta1_override=True,
    )


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"failed to write {out}: {exc}") from exc


def cmd_band(args) -> int:
    params = _walk_parameters(args)
    band = band_structure(params, args.nk)
    if args.verify:
        axis = chiral_axis(params.symmetry_class, params.theta1)
        violation = check_chiral_symmetry(band, axis)
        if violation >= 1e-8:
            raise NumericalError(f"chiral-plane violation {violation:.3e} >= 1e-8")
    lines = [BAND_CSV_HEADER]
    for k, e, n, d in zip(band.k, band.energy, band.bloch_vectors, band.degenerate):
        lines.append(
            ",".join(
                (_fmt(k), _fmt(e), _fmt(n[0]), _fmt(n[1]), _fmt(n[2]), str(int(d)))
            )
        )
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


def cmd_winding(args) -> int:
    params = _walk_parameters(args)
    band = band_structure(params, args.nk)
    axis = chiral_axis(params.symmetry_class, params.theta1)
    print(winding_number(band, axis))
    return 0


def _require_keys(obj: dict, path: str, required: dict, optional: dict) -> list[str]:
    problems = []
    for key in obj:
        if key not in required and key not in optional:
            problems.append(f"unknown key {path}{key}")
    for key, kind in required.items():
        if key not in obj:
            problems.append(f"missing key {path}{key}")
        elif not isinstance(obj[key], kind):
            problems.append(f"bad type for {path}{key}: expected {kind}")
    for key, kind in optional.items():
        if key in obj and not isinstance(obj[key], kind):
            problems.append(f"bad type for {path}{key}: expected {kind}")
    return problems


def load_sweep_config(path: str) -> scan.SweepConfig:
    """Parse and validate the canonical JSON sweep configuration."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValueError("config root must be an object")
    number = (int, float)
    problems = _require_keys(
        raw,
        "",
        {
            "schema": str,
            "class": str,
            "family": str,
            "theta": dict,
            "T": dict,
            "displacement": dict,
            "nk": int,
        },
        {"precision": str},
    )
    if not problems and raw["schema"] != CONFIG_SCHEMA:
        problems.append(f"schema: expected {CONFIG_SCHEMA!r}, got {raw['schema']!r}")
    for section, keys in (("theta", ("min", "max", "step")), ("T", ("min", "max", "step"))):
        if isinstance(raw.get(section), dict):
            problems += _require_keys(
                raw[section], f"{section}.", {k: number for k in keys}, {}
            )
    if isinstance(raw.get("displacement"), dict):
        problems += _require_keys(
            raw["displacement"], "displacement.", {"dtheta": number, "dT": number}, {}
        )
    if problems:
        raise ValueError("invalid sweep config:\n  " + "\n  ".join(problems))
    try:
        symmetry_class = SymmetryClass(raw["class"])
    except ValueError:
        raise ValueError(f"class: expected one of bdi, aiii; got {raw['class']!r}") from None
    try:
        family = GibbsFamily(raw["family"])
    except ValueError:
        raise ValueError(
            f"family: expected one of sp0, sp1, mb0, mb1; got {raw['family']!r}"
        ) from None
    return scan.SweepConfig(
        symmetry_class=symmetry_class,
        family=family,
        theta_min=float(raw["theta"]["min"]),
        theta_max=float(raw["theta"]["max"]),
        theta_step=float(raw["theta"]["step"]),
        T_min=float(raw["T"]["min"]),
        T_max=float(raw["T"]["max"]),
        T_step=float(raw["T"]["step"]),
        dtheta=float(raw["displacement"]["dtheta"]),
        dT=float(raw["displacement"]["dT"]),
        n_k=int(raw["nk"]),
        precision=raw.get("precision", scan.PRECISION_STANDARD),
    )


def cmd_sweep(args) -> int:
    config = load_sweep_config(args.config)
    if config.T_min < 0.003 and config.precision == scan.PRECISION_STANDARD:
        print(
            "warning: T_min below 0.003, forcing the extended-low-t path",
            file=sys.stderr,
        )
    records = scan.run_sweep(config, progress=not args.quiet)
    scan.write_csv(records, args.out)
    finite = [r for r in records if math.isfinite(r.F)]
    best = min(finite, key=lambda r: r.F)
    max_delta = max(abs(r.Delta) for r in finite)
    print(f"wrote {len(records)} rows to {args.out}")
    print(f"min F = {_fmt(best.F)} at theta = {_fmt(best.theta)}, T = {_fmt(best.T)}")
    print(f"max |Delta| = {_fmt(max_delta)}")
    return 0


def cmd_edge(args) -> int:
    theta2_left = _resolve_angle(args, "theta2_left", "theta2_left_pi_fraction")
    theta2_right = _resolve_angle(args, "theta2_right", "theta2_right_pi_fraction")
    x0 = args.x0 if args.x0 is not None else args.n // 2
    profile = CoinProfile(
        n_sites=args.n,
        theta1=args.theta1,
        theta2_left=theta2_left,
        theta2_right=theta2_right,
        wall_position=x0,
    )
    spec = quasienergy_spectrum(build_floquet(profile))
    blocks = []
    for T in args.temps:
        p = thermal_position_distribution(spec, T)
        lines = [f"# T = {_fmt(T)}", EDGE_CSV_HEADER]
        lines += [f"{x},{_fmt(px)}" for x, px in enumerate(p)]
        blocks.append("\n".join(lines))
    _write_text("\n\n".join(blocks) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chiralwalk",
        description="Split-step topological quantum walks: bands, winding numbers, "
        "thermal-state sweeps, and edge states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_angle_pair(p, name):
        p.add_argument(f"--{name}", type=float, default=None, help=f"{name} in radians")
        p.add_argument(
            f"--{name}-pi-fraction",
            type=_pi_fraction,
            default=None,
            metavar="P/Q",
            help=f"{name} as a rational multiple of pi, e.g. 1/4",
        )

    band = sub.add_parser("band", help="sample the quasienergy band to CSV")
    band.add_argument("--class", dest="symmetry_class", required=True, choices=["bdi", "aiii"])
    add_angle_pair(band, "theta2")
    band.add_argument("--nk", type=int, default=512, help="momentum grid size")
    band.add_argument("--theta1", type=float, default=None, help="override theta1 (radians)")
    band.add_argument("--verify", action="store_true", help="fail unless n.A < 1e-8 on every row")
    band.add_argument("--out", default=None, help="output CSV path (default stdout)")
    band.set_defaults(func=cmd_band)

    winding = sub.add_parser("winding", help="print the winding number")
    winding.add_argument("--class", dest="symmetry_class", required=True, choices=["bdi", "aiii"])
    add_angle_pair(winding, "theta2")
    winding.add_argument("--nk", type=int, default=512)
    winding.add_argument("--theta1", type=float, default=None)
    winding.set_defaults(func=cmd_winding)

    sweep = sub.add_parser("sweep", help="run a (theta, T) sweep from a JSON config")
    sweep.add_argument("--config", required=True, help="JSON config path")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--quiet", action="store_true", help="suppress progress lines")
    sweep.set_defaults(func=cmd_sweep)

    edge = sub.add_parser("edge", help="thermal site distributions of a domain-wall walk")
    edge.add_argument("--n", type=int, default=128, help="number of sites")
    edge.add_argument("--theta1", type=float, default=-math.pi / 2)
    add_angle_pair(edge, "theta2-left")
    add_angle_pair(edge, "theta2-right")
    edge.add_argument("--x0", type=int, default=None, help="wall site (default n/2)")
    edge.add_argument("--temps", type=_temps, required=True, help="comma-separated temperatures")
    edge.add_argument("--out", default=None, help="output CSV path (default stdout)")
    edge.set_defaults(func=cmd_edge)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NumericalError, ResolutionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(parser.format_usage(), end="", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
