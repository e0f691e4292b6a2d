"""Render risk grids as phase-diagram heatmaps.

Input is one CSV per scheme in the harness risk format (columns
scheme,n,a,b,alpha,snr,s,M,fa,md,risk,seed). Cells where every scheme has
risk above 1 - delta are grey; cells where at least one scheme has risk below
delta are colored by the set of succeeding schemes (colors averaged when
several succeed); everything else is white. Axes are the change size s
against the SNR multiplier alpha. The script writes both a PNG and an SVG.

This module performs no statistics of its own; all numbers come from the
CSVs.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field

import numpy as np

GREY = (0.55, 0.55, 0.55)
WHITE = (1.0, 1.0, 1.0)
SCHEME_COLORS = {
    "gof": (0.20, 0.45, 0.80),
    "naive-gof": (0.85, 0.40, 0.15),
    "tst": (0.20, 0.45, 0.80),
    "naive-tst": (0.85, 0.40, 0.15),
}
FALLBACK_COLORS = [
    (0.20, 0.45, 0.80),
    (0.85, 0.40, 0.15),
    (0.25, 0.65, 0.35),
    (0.60, 0.30, 0.65),
]


@dataclass(frozen=True)
class PlotSpec:
    """Inputs for one phase diagram: {scheme: csv_path} plus shading rules."""

    csv_paths: dict
    delta: float = 0.1
    output: str = "phase_diagram"
    title: str = ""
    xlabel: str = "SNR multiplier"
    ylabel: str = "change size s"
    colors: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if not self.csv_paths:
            raise ValueError("at least one CSV is required")


def load_risk_csv(path) -> dict:
    """Read a risk CSV into {(s, alpha): risk}."""
    grid = {}
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        required = {"s", "alpha", "risk"}
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise ValueError(f"{path}: missing columns {required}")
        for row in reader:
            key = (int(row["s"]), float(row["alpha"]))
            grid[key] = float(row["risk"])
    return grid


def shading_grid(risk_by_scheme: dict, delta: float):
    """Apply the shading rule and return (s_values, alpha_values, rgb array).

    risk_by_scheme maps scheme name to {(s, alpha): risk}. All schemes must
    cover the same cells. The returned array has shape
    (len(s_values), len(alpha_values), 3) with s ascending along axis 0.
    """
    schemes = sorted(risk_by_scheme)
    cells = None
    for scheme in schemes:
        keys = set(risk_by_scheme[scheme])
        if cells is None:
            cells = keys
        elif keys != cells:
            raise ValueError("CSV grids do not cover the same (s, alpha) cells")
    if not cells:
        raise ValueError("no grid cells found")
    s_values = sorted({s for s, _ in cells})
    alpha_values = sorted({alpha for _, alpha in cells})
    if len(s_values) * len(alpha_values) != len(cells):
        raise ValueError("grid is not a full cartesian product")

    def color_of(scheme):
        custom = SCHEME_COLORS.get(scheme)
        if custom is not None:
            return custom
        return FALLBACK_COLORS[schemes.index(scheme) % len(FALLBACK_COLORS)]

    rgb = np.ones((len(s_values), len(alpha_values), 3))
    for i, s in enumerate(s_values):
        for j, alpha in enumerate(alpha_values):
            risks = {scheme: risk_by_scheme[scheme][(s, alpha)] for scheme in schemes}
            succeeding = [scheme for scheme, r in risks.items() if r < delta]
            if succeeding:
                rgb[i, j] = np.mean([color_of(sch) for sch in succeeding], axis=0)
            elif all(r > 1 - delta for r in risks.values()):
                rgb[i, j] = GREY
            else:
                rgb[i, j] = WHITE
    return s_values, alpha_values, rgb


def render_phase_diagram(spec: PlotSpec) -> list:
    """Render the diagram and write <output>.png and <output>.svg.

    Returns the list of written paths.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    risk_by_scheme = {scheme: load_risk_csv(path)
                      for scheme, path in spec.csv_paths.items()}
    s_values, alpha_values, rgb = shading_grid(risk_by_scheme, spec.delta)

    fig, ax = plt.subplots(figsize=(6, 5))
    ax.imshow(rgb, origin="lower", aspect="auto",
              extent=(-0.5, len(alpha_values) - 0.5, -0.5, len(s_values) - 0.5),
              interpolation="nearest")
    ax.set_xticks(range(len(alpha_values)))
    ax.set_xticklabels([f"{a:g}" for a in alpha_values])
    ax.set_yticks(range(len(s_values)))
    ax.set_yticklabels([str(s) for s in s_values])
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    written = []
    for ext in ("png", "svg"):
        path = f"{spec.output}.{ext}"
        fig.savefig(path, metadata={"Date": None} if ext == "svg" else None)
        written.append(path)
    plt.close(fig)
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Render a risk-grid phase diagram from sweep CSVs")
    parser.add_argument("--csv", action="append", required=True,
                        metavar="SCHEME=PATH",
                        help="risk CSV for one scheme (repeatable)")
    parser.add_argument("--delta", type=float, default=0.1,
                        help="shading threshold")
    parser.add_argument("--out", default="phase_diagram",
                        help="output path base (.png and .svg are appended)")
    parser.add_argument("--title", default="")
    parser.add_argument("--xlabel", default="SNR multiplier")
    parser.add_argument("--ylabel", default="change size s")
    args = parser.parse_args(argv)
    csv_paths = {}
    for item in args.csv:
        if "=" not in item:
            parser.error(f"--csv expects SCHEME=PATH, got {item!r}")
        scheme, path = item.split("=", 1)
        csv_paths[scheme] = path
    spec = PlotSpec(csv_paths=csv_paths, delta=args.delta, output=args.out,
                    title=args.title, xlabel=args.xlabel, ylabel=args.ylabel)
    for path in render_phase_diagram(spec):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
