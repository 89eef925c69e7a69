"""Figure rendering from experiment CSV files.

Two figure kinds are supported: the bound-tightness scatter (gamma against
the larger robustness, one color per rank class, with the 1/(1+R) reference
curve in black) and the distinguishability-gap curve (deltaP against the
pinned minimum robustness, with a dashed vertical marker at the threshold).

Output is deterministic for identical input: SVG text stays text, the hash
salt is fixed, and no timestamps are embedded.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIG1_COLUMNS = [
    "index", "seed", "rank1", "rank2", "is_product", "p1",
    "R1", "R2", "Rmax", "p_eta", "p_eps", "gamma",
]
FIG2_COLUMNS = [
    "r", "deltaP", "p1", "lambda1", "lambda2",
    "angle1", "angle2", "angle3", "angle4", "angle5", "angle6",
    "best_restart", "iterations",
]

# Rank class colors, highest rank first (figure legend order).
CLASS_COLORS = {4: "green", 3: "blue", 2: "gold", 1: "red"}

# A gap this close to zero counts as "zero" when locating the threshold.
DEFAULT_ZERO_TOLERANCE = 1e-4

matplotlib.rcParams["svg.hashsalt"] = "qsdplots"
matplotlib.rcParams["svg.fonttype"] = "none"


class SchemaError(ValueError):
    """The input CSV does not match the expected column schema."""


@dataclass(frozen=True)
class PlotSpec:
    """What to read, which figure to draw, and where to write it."""

    input_csv: str
    kind: str
    output_path: str
    r_c: float | None = None

    def __post_init__(self):
        if self.kind not in ("fig1", "fig2"):
            raise ValueError(f"kind must be 'fig1' or 'fig2', got {self.kind!r}")


def _read_rows(path: str, expected: list[str]) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {expected}") from None
        if header != expected:
            missing = [c for c in expected if c not in header]
            extra = [c for c in header if c not in expected]
            detail = []
            if missing:
                detail.append(f"missing column(s): {', '.join(missing)}")
            if extra:
                detail.append(f"unexpected column(s): {', '.join(extra)}")
            if not detail:
                detail.append("columns are out of order")
            raise SchemaError(f"{path}: header mismatch; " + "; ".join(detail))
        return [dict(zip(expected, row)) for row in reader]


def _new_axes():
    fig, ax = plt.subplots(figsize=(6.0, 4.2), constrained_layout=True)
    ax.grid(True, alpha=0.25)
    return fig, ax


def _render_fig1(rows: list[dict], spec: PlotSpec) -> "plt.Figure":
    fig, ax = _new_axes()
    by_class: dict[int, tuple[list[float], list[float]]] = {}
    r_maxima = [1.0]
    for row in rows:
        rank_class = max(int(row["rank1"]), int(row["rank2"]))
        xs, ys = by_class.setdefault(rank_class, ([], []))
        r = float(row["Rmax"])
        xs.append(r)
        ys.append(float(row["gamma"]))
        r_maxima.append(r)
    for rank_class in sorted(by_class, reverse=True):
        xs, ys = by_class[rank_class]
        points = ax.scatter(
            xs, ys, s=9, color=CLASS_COLORS.get(rank_class, "gray"),
            label=f"rank {rank_class}", alpha=0.75, linewidths=0,
        )
        points.set_gid(f"class-rank-{rank_class}")
    top = max(r_maxima)
    grid = [i * top / 400.0 for i in range(401)]
    (curve,) = ax.plot(grid, [1.0 / (1.0 + r) for r in grid], color="black", linewidth=1.2)
    curve.set_gid("reference-curve")
    ax.set_xlabel(r"$\mathbb{R}$")
    ax.set_ylabel(r"$\gamma$")
    if by_class:
        ax.legend(frameon=False, fontsize=8)
    return fig


def _threshold_from_rows(rows: list[dict], tol: float) -> float | None:
    ordered = sorted(rows, key=lambda row: float(row["r"]))
    threshold = None
    for row in reversed(ordered):
        if float(row["deltaP"]) >= -tol:
            threshold = float(row["r"])
        else:
            break
    return threshold


def _render_fig2(rows: list[dict], spec: PlotSpec) -> "plt.Figure":
    fig, ax = _new_axes()
    rs = [float(row["r"]) for row in rows]
    gaps = [float(row["deltaP"]) for row in rows]
    if rows:
        points = ax.plot(rs, gaps, "o", color="red", markersize=4)[0]
        points.set_gid("gap-points")
    ax.axhline(0.0, color="gray", linewidth=0.8)
    marker = spec.r_c if spec.r_c is not None else _threshold_from_rows(rows, DEFAULT_ZERO_TOLERANCE)
    if marker is not None and math.isfinite(marker):
        line = ax.axvline(marker, color="orange", linestyle="--", linewidth=1.2)
        line.set_gid("threshold-marker")
        ax.annotate(f"$r_c={marker:g}$", xy=(marker, 0.0), xytext=(4, 6),
                    textcoords="offset points", color="darkorange", fontsize=8)
    ax.set_xlabel(r"$r$")
    ax.set_ylabel(r"$\delta P$")
    return fig


def render(spec: PlotSpec) -> str:
    """Validate the CSV against its schema, draw the figure, write the file."""
    if spec.kind == "fig1":
        rows = _read_rows(spec.input_csv, FIG1_COLUMNS)
        fig = _render_fig1(rows, spec)
    else:
        rows = _read_rows(spec.input_csv, FIG2_COLUMNS)
        fig = _render_fig2(rows, spec)
    try:
        if spec.output_path.lower().endswith(".svg"):
            # Suppressing the date stamp keeps identical input byte-identical.
            fig.savefig(spec.output_path, metadata={"Date": None})
        else:
            fig.savefig(spec.output_path)
    finally:
        plt.close(fig)
    return spec.output_path
