"""Phase-diagram rendering for risk grid CSVs produced by the sweep harness."""

from .render_phase_diagram import PlotSpec, render_phase_diagram, shading_grid

__all__ = ["PlotSpec", "render_phase_diagram", "shading_grid"]
