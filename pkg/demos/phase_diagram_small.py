"""Sweep a small risk grid and render the phase diagram.

This is a scaled-down version of the n = 1000 experiment: a coarse grid of
change sizes s and SNR multipliers alpha, a handful of Monte Carlo trials
per cell, one CSV per scheme, and a rendered heatmap. Expect a couple of
minutes of runtime; increase `trials` and the grid for smoother pictures.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent))

from sbmtest import grid_sweep

OUT = pathlib.Path("demo_output/phase_diagram")

spec = {
    "n": 300,
    "trials": 40,
    "schemes": ["tst", "naive-tst"],
    "s_values": [10, 40, 75],
    "alpha_values": [1.0, 4.0, 8.0],
}

OUT.mkdir(parents=True, exist_ok=True)
paths = grid_sweep(spec, OUT, seed=7)
for scheme, path in paths.items():
    print(f"{scheme}: {path}")

try:
    from plots import PlotSpec, render_phase_diagram
except ImportError:
    print("matplotlib not installed; skipping the rendering step")
else:
    plot = PlotSpec(
        csv_paths={scheme: str(path) for scheme, path in paths.items()},
        delta=0.1,
        output=str(OUT / "diagram"),
        title="two-sample risk at n = 300",
    )
    for written in render_phase_diagram(plot):
        print(written)
