"""Concurrence sweeps over temperature/field grids, CSV emission, phase boundaries.

Grid evaluation is deterministic: rows are sorted by (alpha, beta, m, n),
floats are written with 17 significant digits (round-trip exact), and the
worker pool only changes how points are scheduled, never their values.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analytic import critical_beta
from .entanglement import pair_concurrence
from .geometry import SpinCluster, build_chain, build_circle
from .hamiltonian import ModelParams, dipolar_hamiltonian, total_hamiltonian, zeeman_hamiltonian
from .thermal import gibbs_state
from .version import __version__

log = logging.getLogger(__name__)

CSV_HEADER = "beta,alpha,m,n,concurrence,lambda1,lambda2,lambda3,lambda4"
BOUNDARY_CSV_HEADER = "alpha,beta_cr_negative,beta_cr_positive"


def format_float(x: float) -> str:
    """Decimal form with 17 significant digits: round-trip exact for float64."""
    return f"{x:.17g}"


@dataclass(frozen=True)
class GridSpec:
    """Inclusive linear grid (start, stop, count)."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.count}")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise ValueError("grid endpoints must be finite")

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def __str__(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.count}"

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be 'start:stop:count', got {text!r}")
        try:
            return cls(start=float(parts[0]), stop=float(parts[1]), count=int(parts[2]))
        except ValueError as exc:
            raise ValueError(f"bad grid {text!r}: {exc}") from None


def _as_grid(betas) -> GridSpec:
    if isinstance(betas, GridSpec):
        return betas
    start, stop, count = betas
    return GridSpec(start=float(start), stop=float(stop), count=int(count))


@dataclass(frozen=True)
class SweepRow:
    beta: float
    alpha: float
    m: int
    n: int
    concurrence: float
    lambdas: tuple[float, float, float, float]


@dataclass
class SweepTable:
    """Rows of (beta, alpha, m, n, concurrence, lambdas) plus run metadata."""

    rows: list[SweepRow]
    metadata: dict[str, str] = field(default_factory=dict)

    def sort(self) -> None:
        self.rows.sort(key=lambda r: (r.alpha, r.beta, r.m, r.n))


@dataclass(frozen=True)
class BoundaryPoint:
    alpha: float
    beta_cr_negative: float | None
    beta_cr_positive: float | None


@dataclass
class PhaseBoundary:
    """Per-alpha critical inverse temperatures bounding the entangled regions."""

    points: list[BoundaryPoint]
    metadata: dict[str, str] = field(default_factory=dict)


def resolve_pairs(cluster: SpinCluster, pairs) -> list[tuple[int, int]]:
    """Normalize a pair selection: \"all\" or an iterable of (m, n) with m < n."""
    if isinstance(pairs, str):
        if pairs != "all":
            raise ValueError(f"pairs must be 'all' or explicit index pairs, got {pairs!r}")
        return cluster.pairs()
    out = []
    for m, n in pairs:
        m, n = int(m), int(n)
        if not (1 <= m < n <= cluster.n_spins):
            raise ValueError(f"need 1 <= m < n <= {cluster.n_spins}, got ({m}, {n})")
        out.append((m, n))
    return sorted(set(out))


def _map_ordered(func, items, threads):
    items = list(items)
    if threads is not None and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def _pairs_label(pair_list) -> str:
    return ";".join(f"{m},{n}" for m, n in pair_list)


def sweep_beta(cluster: SpinCluster, alpha: float, betas, pairs="all",
               threads: int | None = None) -> SweepTable:
    """Concurrence of the selected pairs over a beta grid at fixed alpha.

    One thermal state is diagonalized per beta and reused for every pair;
    grid points are independent work items for the optional thread pool.
    """
    grid = _as_grid(betas)
    pair_list = resolve_pairs(cluster, pairs)
    h = total_hamiltonian(cluster, ModelParams(alpha=float(alpha), beta=0.0))

    def rows_at(beta: float) -> list[SweepRow]:
        rho = gibbs_state(h, beta)
        out = []
        for m, n in pair_list:
            br = pair_concurrence(rho, m, n)
            out.append(SweepRow(beta=float(beta), alpha=float(alpha), m=m, n=n,
                                concurrence=br.concurrence, lambdas=br.lambdas))
        return out

    chunks = _map_ordered(rows_at, grid.points(), threads)
    table = SweepTable(
        rows=[row for chunk in chunks for row in chunk],
        metadata={
            "n_spins": str(cluster.n_spins),
            "alpha": format_float(float(alpha)),
            "beta_grid": str(grid),
            "pairs": _pairs_label(pair_list),
            "version": __version__,
        },
    )
    table.sort()
    return table


def trace_phase_boundary(cluster: SpinCluster, alpha_grid, pair=(1, 2),
                         threads: int | None = None, beta_limit: float = 60.0) -> PhaseBoundary:
    """Critical inverse temperatures on both sides of beta = 0, per alpha.

    Boundary points come from bisection refinement, not from grid thresholds,
    so their resolution is independent of any sweep grid.
    """
    grid = _as_grid(alpha_grid)
    m, n = pair

    def point_at(alpha: float) -> BoundaryPoint:
        neg = critical_beta(cluster, alpha=float(alpha), pair=(m, n), side="negative",
                            beta_limit=beta_limit)
        pos = critical_beta(cluster, alpha=float(alpha), pair=(m, n), side="positive",
                            beta_limit=beta_limit)
        return BoundaryPoint(alpha=float(alpha), beta_cr_negative=neg, beta_cr_positive=pos)

    points = _map_ordered(point_at, grid.points(), threads)
    return PhaseBoundary(
        points=points,
        metadata={
            "n_spins": str(cluster.n_spins),
            "alpha_grid": str(grid),
            "pair": f"{m},{n}",
            "version": __version__,
        },
    )


def sweep_grid(cluster: SpinCluster, alpha_grid, beta_grid, pairs="all",
               threads: int | None = None) -> SweepTable:
    """Concurrence of the selected pairs over a full (alpha, beta) grid.

    Work is split by alpha value; within each alpha one thermal state is
    diagonalized per beta and shared across all pairs.
    """
    agrid = _as_grid(alpha_grid)
    bgrid = _as_grid(beta_grid)
    pair_list = resolve_pairs(cluster, pairs)
    h_dd = dipolar_hamiltonian(cluster)
    h_z = zeeman_hamiltonian(cluster)

    def rows_for(alpha: float) -> list[SweepRow]:
        h = h_dd + float(alpha) * h_z
        out = []
        for beta in bgrid.points():
            rho = gibbs_state(h, float(beta))
            for m, n in pair_list:
                br = pair_concurrence(rho, m, n)
                out.append(SweepRow(beta=float(beta), alpha=float(alpha), m=m, n=n,
                                    concurrence=br.concurrence, lambdas=br.lambdas))
        return out

    chunks = _map_ordered(rows_for, agrid.points(), threads)
    table = SweepTable(
        rows=[row for chunk in chunks for row in chunk],
        metadata={
            "n_spins": str(cluster.n_spins),
            "alpha_grid": str(agrid),
            "beta_grid": str(bgrid),
            "pairs": _pairs_label(pair_list),
            "version": __version__,
        },
    )
    table.sort()
    return table


def phase_diagram(cluster: SpinCluster, beta_grid, alpha_grid, pair=(1, 2),
                  threads: int | None = None) -> tuple[SweepTable, PhaseBoundary]:
    """Full concurrence surface over (beta, alpha) plus the refined boundary."""
    m, n = resolve_pairs(cluster, [pair])[0]
    table = sweep_grid(cluster, alpha_grid, beta_grid, pairs=[(m, n)], threads=threads)
    boundary = trace_phase_boundary(cluster, _as_grid(alpha_grid), pair=(m, n),
                                    threads=threads)
    return table, boundary


def _open_destination(destination):
    if hasattr(destination, "write"):
        return destination, False
    return open(Path(destination), "w", encoding="utf-8", newline="\n"), True


def write_csv(table: SweepTable, destination) -> None:
    """Emit metadata comment lines, the fixed header, and one row per record."""
    handle, owned = _open_destination(destination)
    try:
        for key, value in table.metadata.items():
            handle.write(f"# {key}: {value}\n")
        handle.write(CSV_HEADER + "\n")
        for r in table.rows:
            cells = [format_float(r.beta), format_float(r.alpha), str(r.m), str(r.n),
                     format_float(r.concurrence)] + [format_float(v) for v in r.lambdas]
            handle.write(",".join(cells) + "\n")
    finally:
        if owned:
            handle.close()


def read_csv(source) -> SweepTable:
    """Parse a file produced by write_csv back into an equal table."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    metadata: dict[str, str] = {}
    rows: list[SweepRow] = []
    saw_header = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, value = body.partition(": ")
            if sep:
                metadata[key] = value
            continue
        if not saw_header:
            if line != CSV_HEADER:
                raise ValueError(f"line {lineno}: expected header {CSV_HEADER!r}")
            saw_header = True
            continue
        cells = line.split(",")
        if len(cells) != 9:
            raise ValueError(f"line {lineno}: expected 9 fields, got {len(cells)}")
        rows.append(SweepRow(
            beta=float(cells[0]), alpha=float(cells[1]), m=int(cells[2]), n=int(cells[3]),
            concurrence=float(cells[4]),
            lambdas=(float(cells[5]), float(cells[6]), float(cells[7]), float(cells[8])),
        ))
    if not saw_header:
        raise ValueError("missing CSV header")
    return SweepTable(rows=rows, metadata=metadata)


def write_boundary_csv(boundary: PhaseBoundary, destination) -> None:
    """Boundary table: alpha plus the two critical betas; absent roots stay empty."""
    handle, owned = _open_destination(destination)
    try:
        for key, value in boundary.metadata.items():
            handle.write(f"# {key}: {value}\n")
        handle.write(BOUNDARY_CSV_HEADER + "\n")
        for p in boundary.points:
            neg = "" if p.beta_cr_negative is None else format_float(p.beta_cr_negative)
            pos = "" if p.beta_cr_positive is None else format_float(p.beta_cr_positive)
            handle.write(f"{format_float(p.alpha)},{neg},{pos}\n")
    finally:
        if owned:
            handle.close()


def write_labeled_csv(curves: list[tuple[str, SweepTable]], destination,
                      metadata: dict[str, str] | None = None) -> None:
    """Multi-system table with a leading system column (used by the 7-curve preset)."""
    handle, owned = _open_destination(destination)
    try:
        for key, value in (metadata or {}).items():
            handle.write(f"# {key}: {value}\n")
        handle.write("system," + CSV_HEADER + "\n")
        for label, table in curves:
            for r in table.rows:
                cells = [label, format_float(r.beta), format_float(r.alpha), str(r.m),
                         str(r.n), format_float(r.concurrence)] + \
                        [format_float(v) for v in r.lambdas]
                handle.write(",".join(cells) + "\n")
    finally:
        if owned:
            handle.close()


# Figure presets. Grids are a rendering choice; the physics fixes only the systems.
LINE_BETA_GRID = GridSpec(-10.0, 10.0, 401)  # single-curve sweeps (presets 1 and 4)
PLANE_BETA_GRID = GridSpec(-6.0, 6.0, 241)  # (beta, alpha) surfaces (presets 2 and 3)
PLANE_ALPHA_GRID = GridSpec(0.0, 6.0, 121)

FIG4_CURVES: tuple[tuple[str, tuple[int, int]], ...] = (
    ("pair", (1, 2)),
    ("chain:6", (1, 2)),
    ("chain:6", (2, 3)),
    ("chain:8", (1, 2)),
    ("chain:8", (2, 3)),
    ("circle:6", (1, 2)),
    ("circle:8", (1, 2)),
)


def _preset_cluster(label: str) -> SpinCluster:
    if label == "pair":
        return build_chain(2)
    kind, _, size = label.partition(":")
    if kind == "chain":
        return build_chain(int(size))
    if kind == "circle":
        return build_circle(int(size))
    raise ValueError(f"unknown system preset {label!r}")


def figure_one_table(threads: int | None = None) -> SweepTable:
    """Pair eigenvalues and concurrence versus beta at alpha = 1."""
    table = sweep_beta(build_chain(2), alpha=1.0, betas=LINE_BETA_GRID,
                       pairs=[(1, 2)], threads=threads)
    table.metadata = {"fig": "1", "system": "pair", **table.metadata}
    return table


def figure_two_table(threads: int | None = None) -> SweepTable:
    """Pair concurrence over the (beta, alpha) plane."""
    table, _ = phase_diagram(build_chain(2), PLANE_BETA_GRID, PLANE_ALPHA_GRID,
                             pair=(1, 2), threads=threads)
    table.metadata = {"fig": "2", "system": "pair", **table.metadata}
    return table


def figure_three_boundary(threads: int | None = None) -> PhaseBoundary:
    """Entangled/separable phase boundary of the pair on the (beta, alpha) plane."""
    boundary = trace_phase_boundary(build_chain(2), PLANE_ALPHA_GRID, pair=(1, 2),
                                    threads=threads)
    boundary.metadata = {"fig": "3", "system": "pair", **boundary.metadata}
    return boundary


def figure_four_curves(threads: int | None = None) -> list[tuple[str, SweepTable]]:
    """The seven zero-field concurrence curves (pair, chains, circles)."""
    curves = []
    for label, pair in FIG4_CURVES:
        cluster = _preset_cluster(label)
        table = sweep_beta(cluster, alpha=0.0, betas=LINE_BETA_GRID,
                           pairs=[pair], threads=threads)
        curves.append((label, table))
    return curves


def figure_four_metadata() -> dict[str, str]:
    return {
        "fig": "4",
        "systems": ";".join(sorted({label for label, _ in FIG4_CURVES})),
        "curves": ";".join(f"{label}:{m},{n}" for label, (m, n) in FIG4_CURVES),
        "beta_grid": str(LINE_BETA_GRID),
        "alpha": "0",
        "version": __version__,
    }
