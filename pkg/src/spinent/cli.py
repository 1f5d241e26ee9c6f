"""Command-line front end: concurrence evaluation, sweeps, critical temperatures.

Exit codes: 0 on success, 1 on compute contract violations, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from .analytic import PhysicalUnits, beta_to_temperature, critical_beta
from .entanglement import pair_concurrence, partial_trace_pair
from .errors import SpinentError
from .geometry import SpinCluster, build_chain, build_circle, parse_cluster_config
from .hamiltonian import ModelParams, total_hamiltonian
from .sweep import (
    GridSpec,
    figure_four_curves,
    figure_four_metadata,
    figure_one_table,
    figure_three_boundary,
    figure_two_table,
    sweep_beta,
    sweep_grid,
    write_boundary_csv,
    write_csv,
    write_labeled_csv,
)
from .thermal import gibbs_state
from .version import __version__

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_USAGE = 2

EPILOG = """\
system presets:
  pair        two spins one unit apart, bond perpendicular to the field
  chain:N     N equally spaced collinear spins (2 <= N <= 12), chain axis
              perpendicular to the field
  circle:N    regular N-gon with unit nearest-neighbor spacing (3 <= N <= 12),
              plane perpendicular to the field
  file:PATH   JSON document with "positions" (list of [x, y, z]) and optional
              "field_direction"; coordinates are rescaled so the minimal pair
              distance is 1

figure presets (sweep --fig N):
  1   pair eigenvalues and concurrence vs beta at alpha = 1 (beta -10:10:401)
  2   pair concurrence over the (beta, alpha) plane (beta -6:6:241, alpha 0:6:121)
  3   entangled/separable phase boundary on the same plane (boundary CSV)
  4   the seven zero-field curves: pair C12; chain:6 C12, C23; chain:8 C12,
      C23; circle:6 C12; circle:8 C12 (beta -10:10:401)
"""


def resolve_system(spec: str) -> tuple[str, SpinCluster]:
    """Map a system spec string to a cluster: pair | chain:N | circle:N | file:PATH."""
    if spec == "pair":
        return spec, build_chain(2)
    kind, sep, rest = spec.partition(":")
    if sep and kind in ("chain", "circle"):
        try:
            size = int(rest)
        except ValueError:
            raise ValueError(f"bad size in system spec {spec!r}") from None
        return spec, (build_chain(size) if kind == "chain" else build_circle(size))
    if sep and kind == "file":
        path = Path(rest)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ValueError(f"cannot read cluster file {path}: {exc.strerror}") from None
        return spec, parse_cluster_config(text)
    raise ValueError(f"unknown system {spec!r}; expected pair, chain:N, circle:N, or file:PATH")


def _parse_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"pair must be 'm,n', got {text!r}")
    m, n = int(parts[0]), int(parts[1])
    if not 1 <= m < n:
        raise ValueError(f"pair must satisfy 1 <= m < n, got ({m}, {n})")
    return m, n


def _parse_pairs(text: str):
    if text == "all":
        return "all"
    return [_parse_pair(chunk) for chunk in text.split(";") if chunk]


def _parse_units(text: str) -> PhysicalUnits:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"units must be 'gamma_khz_per_gauss,coupling_khz', got {text!r}")
    return PhysicalUnits(gamma_khz_per_gauss=float(parts[0]), coupling_khz=float(parts[1]))


def _check_pair_in_system(cluster: SpinCluster, pair: tuple[int, int]) -> None:
    if pair[1] > cluster.n_spins:
        raise ValueError(f"pair {pair} out of range for a {cluster.n_spins}-spin system")


# Grid values like "-10:10:401" start with a dash; widen argparse's
# negative-number heuristic so they are read as values, not flags.
_NEGATIVE_TOKEN = re.compile(r"^-\d")


def _accept_negative_values(parser: argparse.ArgumentParser) -> None:
    parser._negative_number_matcher = _NEGATIVE_TOKEN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinent",
        description="Thermal-equilibrium entanglement of dipolar-coupled spin-1/2 clusters "
                    "at positive and negative spin temperature.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"spinent {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_conc = sub.add_parser(
        "concurrence",
        help="concurrence of one pair at a single (beta, alpha)",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_conc.add_argument("system", help="pair | chain:N | circle:N | file:PATH")
    p_conc.add_argument("--beta", type=float, required=True, help="inverse temperature")
    p_conc.add_argument("--alpha", type=float, default=0.0, help="field strength (default 0)")
    p_conc.add_argument("--pair", default="1,2", help="spin pair m,n (default 1,2)")
    p_conc.add_argument("--show-rho", action="store_true", help="also print the reduced 4x4 matrix")
    p_conc.set_defaults(handler=_cmd_concurrence)

    p_sweep = sub.add_parser(
        "sweep",
        help="concurrence over beta (and alpha) grids, or a figure preset, as CSV",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_sweep.add_argument("system", nargs="?", help="pair | chain:N | circle:N | file:PATH")
    p_sweep.add_argument("--beta-range", help="beta grid start:stop:count")
    p_sweep.add_argument("--alpha", type=float, help="single field strength (default 0)")
    p_sweep.add_argument("--alpha-range", help="alpha grid start:stop:count")
    p_sweep.add_argument("--pairs", default="all", help="'all' or pairs like '1,2;2,3' (default all)")
    p_sweep.add_argument("--fig", type=int, choices=(1, 2, 3, 4),
                         help="figure preset; replaces system and grid flags")
    p_sweep.add_argument("--out", help="write CSV here (plus manifest sidecar and rendered PNG); "
                                       "default prints CSV to stdout")
    p_sweep.add_argument("--threads", type=int, default=None,
                         help="worker pool width (default: available parallelism)")
    p_sweep.add_argument("--no-plot", action="store_true",
                         help="skip the PNG render that normally accompanies --out")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_crit = sub.add_parser(
        "critical-beta",
        help="critical inverse temperature where a pair becomes entangled",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p_crit.add_argument("system", help="pair | chain:N | circle:N | file:PATH")
    p_crit.add_argument("--pair", default="1,2", help="spin pair m,n (default 1,2)")
    p_crit.add_argument("--alpha", type=float, default=0.0, help="field strength (default 0)")
    p_crit.add_argument("--side", choices=("negative", "positive"), required=True,
                        help="which side of beta = 0 to search")
    p_crit.add_argument("--units", help="gamma_khz_per_gauss,coupling_khz: also print microkelvin")
    p_crit.set_defaults(handler=_cmd_critical_beta)

    for p in (parser, p_conc, p_sweep, p_crit):
        _accept_negative_values(p)
    return parser


def _cmd_concurrence(args, parser) -> int:
    try:
        label, cluster = resolve_system(args.system)
        pair = _parse_pair(args.pair)
        _check_pair_in_system(cluster, pair)
        if args.alpha < 0:
            raise ValueError("alpha must be >= 0")
    except (ValueError, SpinentError) as exc:
        parser.error(str(exc))
    h = total_hamiltonian(cluster, ModelParams(alpha=args.alpha, beta=args.beta))
    rho = gibbs_state(h, args.beta)
    breakdown = pair_concurrence(rho, *pair)
    print(f"system: {label} ({cluster.n_spins} spins)")
    print(f"pair: {pair[0]},{pair[1]}  alpha: {args.alpha:g}  beta: {args.beta:g}")
    print(f"concurrence = {breakdown.concurrence:.12g}")
    print(f"signed gap  = {breakdown.signed:.12g}")
    lam = "  ".join(f"{v:.12g}" for v in breakdown.lambdas)
    print(f"lambdas     = {lam}")
    if args.show_rho:
        reduced = partial_trace_pair(rho, *pair)
        print("reduced density matrix:")
        print(np.array2string(reduced, precision=8, suppress_small=True))
    return EXIT_OK


def _render_plot(fig_id, data, png_path) -> None:
    # Imported lazily: matplotlib is only needed on the report path.
    from . import plotting

    if fig_id == 1:
        plotting.plot_eigenvalue_panels(data, png_path, title="pair, alpha = 1")
    elif fig_id == 2:
        plotting.plot_concurrence_plane(data, png_path, title="pair concurrence")
    elif fig_id == 3:
        plotting.plot_phase_boundary(data, png_path, title="pair phase boundary")
    elif fig_id == 4:
        plotting.plot_labeled_curves(data, png_path, title="zero-field concurrence")
    else:
        plotting.plot_for_table(data, png_path)


def _write_manifest(out_path: Path, payload: dict) -> Path:
    manifest_path = out_path.with_suffix(".manifest.json")
    manifest_path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                             encoding="utf-8")
    return manifest_path


def _emit(args, fig_id, data, writer, manifest_extra) -> int:
    if args.out is None:
        writer(data, sys.stdout)
        return EXIT_OK
    out_path = Path(args.out)
    with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
        writer(data, handle)
    png_path = None
    if not args.no_plot:
        png_path = out_path.with_suffix(".png")
        _render_plot(fig_id, data, png_path)
    payload = {
        "tool": "spinent",
        "version": __version__,
        "command": "sweep",
        "threads": args.threads,
        "outputs": {
            "csv": out_path.name,
            "plot": png_path.name if png_path else None,
        },
        **manifest_extra,
    }
    _write_manifest(out_path, payload)
    return EXIT_OK


def _cmd_sweep(args, parser) -> int:
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    args.threads = threads
    if args.fig is not None:
        if args.system or args.beta_range or args.alpha is not None or args.alpha_range:
            parser.error("--fig replaces the system argument and grid flags")
        if args.fig == 1:
            data = figure_one_table(threads=threads)
            return _emit(args, 1, data, write_csv, {"fig": 1, "system": "pair"})
        if args.fig == 2:
            data = figure_two_table(threads=threads)
            return _emit(args, 2, data, write_csv, {"fig": 2, "system": "pair"})
        if args.fig == 3:
            data = figure_three_boundary(threads=threads)
            return _emit(args, 3, data, write_boundary_csv, {"fig": 3, "system": "pair"})
        data = figure_four_curves(threads=threads)

        def writer(curves, handle):
            write_labeled_csv(curves, handle, metadata=figure_four_metadata())

        return _emit(args, 4, data, writer, {"fig": 4, "system": "presets"})

    try:
        if not args.system:
            raise ValueError("a system argument is required unless --fig is given")
        if not args.beta_range:
            raise ValueError("--beta-range is required unless --fig is given")
        if args.alpha is not None and args.alpha_range:
            raise ValueError("--alpha and --alpha-range are mutually exclusive")
        label, cluster = resolve_system(args.system)
        beta_grid = GridSpec.parse(args.beta_range)
        alpha_grid = GridSpec.parse(args.alpha_range) if args.alpha_range else None
        pairs = _parse_pairs(args.pairs)
        if pairs != "all":
            for p in pairs:
                _check_pair_in_system(cluster, p)
    except (ValueError, SpinentError) as exc:
        parser.error(str(exc))

    manifest = {"system": label, "beta_grid": str(beta_grid), "pairs": args.pairs, "fig": None}
    if alpha_grid is not None:
        table = sweep_grid(cluster, alpha_grid, beta_grid, pairs=pairs, threads=threads)
        table.metadata = {"system": label, **table.metadata}
        manifest["alpha_grid"] = str(alpha_grid)
    else:
        alpha = args.alpha if args.alpha is not None else 0.0
        table = sweep_beta(cluster, alpha, beta_grid, pairs=pairs, threads=threads)
        table.metadata = {"system": label, **table.metadata}
        manifest["alpha"] = alpha
    return _emit(args, None, table, write_csv, manifest)


def _cmd_critical_beta(args, parser) -> int:
    try:
        label, cluster = resolve_system(args.system)
        pair = _parse_pair(args.pair)
        _check_pair_in_system(cluster, pair)
        if args.alpha < 0:
            raise ValueError("alpha must be >= 0")
        units = _parse_units(args.units) if args.units else None
    except (ValueError, SpinentError) as exc:
        parser.error(str(exc))
    value = critical_beta(cluster, alpha=args.alpha, pair=pair, side=args.side)
    if value is None:
        print("none")
        return EXIT_OK
    print(f"{value:.6f}")
    if units is not None:
        temperature = beta_to_temperature(value, units)
        print(f"{temperature:.6g} microkelvin (coupling {units.coupling_khz:g} kHz)")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "handler", None) is None:
            parser.print_help()
            return EXIT_USAGE
        return args.handler(args, parser)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_USAGE
    except SpinentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
