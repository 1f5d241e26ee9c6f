"""Figure rendering for sweep tables and phase boundaries.

The CSV files are the normative output; these renderers are a convenience
layer the CLI runs alongside them. Everything draws through the Agg backend
so no display is needed.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .sweep import PhaseBoundary, SweepTable


def _grouped_curves(table: SweepTable):
    groups: dict[tuple[float, int, int], list] = {}
    for r in table.rows:
        groups.setdefault((r.alpha, r.m, r.n), []).append(r)
    return groups


def plot_sweep_curves(table: SweepTable, path, title: str | None = None) -> None:
    """Concurrence versus beta, one curve per (alpha, pair) group."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    groups = _grouped_curves(table)
    many_alpha = len({a for a, _, _ in groups}) > 1
    for (alpha, m, n), rows in sorted(groups.items()):
        betas = [r.beta for r in rows]
        cs = [r.concurrence for r in rows]
        label = f"C{m}{n}" + (f", $\\alpha$={alpha:g}" if many_alpha else "")
        ax.plot(betas, cs, label=label)
    ax.set_xlabel(r"inverse temperature $\beta$")
    ax.set_ylabel("concurrence")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_eigenvalue_panels(table: SweepTable, path, title: str | None = None) -> None:
    """Two panels: the four flip-operator eigenvalues, and the concurrence."""
    rows = sorted(table.rows, key=lambda r: r.beta)
    betas = [r.beta for r in rows]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7.0, 7.0), sharex=True)
    for i in range(4):
        top.plot(betas, [r.lambdas[i] for r in rows], label=rf"$\lambda_{i + 1}$")
    top.set_ylabel("eigenvalues")
    top.legend(fontsize=8)
    top.grid(True, alpha=0.3)
    bottom.plot(betas, [r.concurrence for r in rows], color="black")
    bottom.set_xlabel(r"inverse temperature $\beta$")
    bottom.set_ylabel("concurrence")
    bottom.grid(True, alpha=0.3)
    if title:
        top.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_concurrence_plane(table: SweepTable, path, title: str | None = None) -> None:
    """Heatmap of the concurrence over the (beta, alpha) plane (single pair)."""
    betas = np.array(sorted({r.beta for r in table.rows}))
    alphas = np.array(sorted({r.alpha for r in table.rows}))
    grid = np.full((len(alphas), len(betas)), np.nan)
    b_index = {b: i for i, b in enumerate(betas)}
    a_index = {a: i for i, a in enumerate(alphas)}
    for r in table.rows:
        grid[a_index[r.alpha], b_index[r.beta]] = r.concurrence
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    mesh = ax.pcolormesh(betas, alphas, grid, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="concurrence")
    ax.set_xlabel(r"inverse temperature $\beta$")
    ax.set_ylabel(r"field strength $\alpha$")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_phase_boundary(boundary: PhaseBoundary, path, title: str | None = None) -> None:
    """Critical inverse temperatures versus alpha, one branch per sign."""
    alphas = [p.alpha for p in boundary.points]
    neg = [p.beta_cr_negative if p.beta_cr_negative is not None else np.nan
           for p in boundary.points]
    pos = [p.beta_cr_positive if p.beta_cr_positive is not None else np.nan
           for p in boundary.points]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(neg, alphas, color="tab:blue", label=r"$\beta_{cr} < 0$")
    ax.plot(pos, alphas, color="tab:red", label=r"$\beta_{cr} > 0$")
    ax.axvline(0.0, color="gray", lw=0.5)
    ax.set_xlabel(r"inverse temperature $\beta$")
    ax.set_ylabel(r"field strength $\alpha$")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_labeled_curves(curves: list[tuple[str, SweepTable]], path,
                        title: str | None = None) -> None:
    """Zero-field concurrence curves for several systems on shared axes."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for label, table in curves:
        for (_, m, n), rows in sorted(_grouped_curves(table).items()):
            betas = [r.beta for r in rows]
            cs = [r.concurrence for r in rows]
            ax.plot(betas, cs, label=f"{label} C{m}{n}")
    ax.set_xlabel(r"inverse temperature $\beta$")
    ax.set_ylabel("concurrence")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_for_table(table: SweepTable, path, title: str | None = None) -> None:
    """Pick the natural rendering for a table: plane heatmap or curves."""
    alphas = {r.alpha for r in table.rows}
    pairs = {(r.m, r.n) for r in table.rows}
    if len(alphas) > 1 and len(pairs) == 1:
        plot_concurrence_plane(table, path, title=title)
    else:
        plot_sweep_curves(table, path, title=title)
