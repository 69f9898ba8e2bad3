"""Figure rendering for sepvol CSV outputs."""

from .figures import (
    FIGURE_IDS,
    SchemaError,
    load_table,
    render,
    render_distribution,
    render_radius,
    render_region,
    render_scaling,
    render_sweep,
    sweep_argmin,
    sweep_grid,
)

__version__ = "0.1.0"

__all__ = [
    "FIGURE_IDS",
    "SchemaError",
    "load_table",
    "render",
    "render_distribution",
    "render_radius",
    "render_region",
    "render_scaling",
    "render_sweep",
    "sweep_argmin",
    "sweep_grid",
]
