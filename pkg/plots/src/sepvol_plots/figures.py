"""Figure renderers for the sepvol CSV outputs.

Five figure types: the 3D separable-region surface, the two-parameter
sweep heatmap, the per-frame distribution panels, the dimension-scaling
curves, and the effective-radius curve.  Rendering is read-only and
deterministic: fixed styles, fixed hash salt, no timestamps.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "sepvol-plots"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

FIGURE_IDS = ("region", "sweep", "distribution", "scaling", "radius")

# Two-qubit analytic lower bound on the separable fraction, drawn as a
# reference line in the scaling figure.
TWO_QUBIT_LOWER_BOUND = 0.302

HIST_BINS = 50

EXPECTED_HEADERS = {
    "region": ["x", "y", "z", "class"],
    "sweep": ["theta", "alpha", "fraction"],
    "distribution": ["frame_index", "entanglement", "fraction", "std_error"],
    "scaling": ["d_a", "d_b", "mean", "min", "n_frames", "n_points", "min_std_error"],
    "radius": ["d", "ratio"],
}


class SchemaError(ValueError):
    """Input CSV does not carry the expected header row."""


def load_table(path: str | Path, figure_id: str) -> dict[str, np.ndarray]:
    """Read a sepvol CSV and return its columns keyed by header name."""
    expected = EXPECTED_HEADERS[figure_id]
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"input file {path} does not exist")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected:
            raise SchemaError(
                f"{path} header {header} does not match expected {expected} "
                f"for figure {figure_id!r}"
            )
        rows = [row for row in reader if row]
    if not rows:
        raise SchemaError(f"{path} contains no data rows")
    data = np.asarray(rows, dtype=float)
    return {name: data[:, i] for i, name in enumerate(expected)}


def _save(fig, output: str | Path) -> None:
    fig.savefig(output, metadata={"Date": None} if str(output).endswith(".svg") else None)
    plt.close(fig)


# -- region ------------------------------------------------------------

_TETRA_VERTICES = np.array(
    [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
)
_TETRA_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def render_region(mesh_csv: str | Path, output: str | Path) -> None:
    """Separable-region surface inside the eigenvalue tetrahedron.

    Marching cubes on the separable-cell indicator; the tetrahedron is
    drawn as a wireframe for context.
    """
    from skimage import measure

    table = load_table(mesh_csv, "region")
    n = round(len(table["x"]) ** (1 / 3))
    if n**3 != len(table["x"]):
        raise SchemaError(f"mesh of {len(table['x'])} cells is not a cubic grid")
    cls = table["class"].reshape(n, n, n)
    centers = table["x"].reshape(n, n, n)[:, 0, 0]

    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    separable = (cls == 1).astype(float)
    if separable.any() and not separable.all():
        spacing = 2.0 / n
        verts, faces, _, _ = measure.marching_cubes(separable, level=0.5,
                                                    spacing=(spacing,) * 3)
        verts += centers[0]
        ax.plot_trisurf(
            verts[:, 0], verts[:, 1], faces, verts[:, 2],
            color="tab:blue", alpha=0.6, linewidth=0.0,
        )
    for i, j in _TETRA_EDGES:
        seg = _TETRA_VERTICES[[i, j]]
        ax.plot(seg[:, 0], seg[:, 1], seg[:, 2], color="black", linewidth=1.0)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    ax.set_title("separable region")
    ax.set_box_aspect((1, 1, 1))
    _save(fig, output)


# -- sweep -------------------------------------------------------------

def sweep_grid(table: dict[str, np.ndarray]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reshape sweep rows into (thetas, alphas, fraction matrix).

    The matrix is indexed [theta, alpha] with axes sorted ascending.
    """
    thetas = np.unique(table["theta"])
    alphas = np.unique(table["alpha"])
    grid = np.full((len(thetas), len(alphas)), np.nan)
    ti = np.searchsorted(thetas, table["theta"])
    ai = np.searchsorted(alphas, table["alpha"])
    grid[ti, ai] = table["fraction"]
    if np.isnan(grid).any():
        raise SchemaError("sweep rows do not fill a complete theta x alpha grid")
    return thetas, alphas, grid


def sweep_argmin(table: dict[str, np.ndarray]) -> tuple[float, float]:
    """(theta, alpha) of the minimum-fraction cell of the sweep grid."""
    thetas, alphas, grid = sweep_grid(table)
    i, j = np.unravel_index(np.argmin(grid), grid.shape)
    return float(thetas[i]), float(alphas[j])


def render_sweep(sweep_csv: str | Path, output: str | Path) -> None:
    """Heatmap of the separable fraction in the (sin 2theta, sin 2alpha) plane."""
    table = load_table(sweep_csv, "sweep")
    thetas, alphas, grid = sweep_grid(table)
    fig, ax = plt.subplots(figsize=(6, 5))
    mesh = ax.pcolormesh(
        np.sin(2 * thetas), np.sin(2 * alphas), grid.T, shading="nearest",
        cmap="viridis",
    )
    fig.colorbar(mesh, ax=ax, label="separable fraction")
    ax.set_xlabel(r"$\sin 2\theta$")
    ax.set_ylabel(r"$\sin 2\alpha$")
    ax.set_title("two-parameter family")
    _save(fig, output)


# -- distribution ------------------------------------------------------

def render_distribution(frames_csv: str | Path, output: str | Path) -> None:
    """Four panels: fraction and entanglement marginals, scatter, joint histogram."""
    table = load_table(frames_csv, "distribution")
    fraction = table["fraction"]
    entanglement = table["entanglement"]
    edges = np.linspace(0.0, 1.0, HIST_BINS + 1)

    fig, axes = plt.subplots(2, 2, figsize=(9, 8))
    axes[0, 0].hist(fraction, bins=edges, color="tab:blue")
    axes[0, 0].set_xlabel("separable fraction")
    axes[0, 0].set_ylabel("frames")

    axes[0, 1].hist(entanglement, bins=edges, color="tab:orange")
    axes[0, 1].set_xlabel("frame entanglement")
    axes[0, 1].set_ylabel("frames")

    axes[1, 0].scatter(fraction, entanglement, s=4, alpha=0.5, color="tab:green")
    axes[1, 0].set_xlabel("separable fraction")
    axes[1, 0].set_ylabel("frame entanglement")

    h = axes[1, 1].hist2d(fraction, entanglement, bins=[edges, edges], cmap="magma")
    fig.colorbar(h[3], ax=axes[1, 1])
    axes[1, 1].set_xlabel("separable fraction")
    axes[1, 1].set_ylabel("frame entanglement")

    fig.tight_layout()
    _save(fig, output)


# -- scaling -----------------------------------------------------------

def render_scaling(scan_csv: str | Path, output: str | Path) -> None:
    """Mean and minimum fraction against total dimension, log scale."""
    table = load_table(scan_csv, "scaling")
    d = table["d_a"] * table["d_b"]
    order = np.argsort(d, kind="stable")
    fig, ax = plt.subplots(figsize=(6, 5))
    ax.semilogy(d[order], table["mean"][order], "o-", label="mean")
    ax.semilogy(d[order], table["min"][order], "s--", label="minimum")
    ax.axhline(TWO_QUBIT_LOWER_BOUND, color="gray", linewidth=1.0,
               label=f"two-qubit lower bound {TWO_QUBIT_LOWER_BOUND}")
    ax.set_xlabel("Hilbert space dimension")
    ax.set_ylabel("separable fraction")
    ax.legend()
    _save(fig, output)


# -- radius ------------------------------------------------------------

def render_radius(radius_csv: str | Path, output: str | Path) -> None:
    """Effective inner/outer radius ratio against dimension."""
    table = load_table(radius_csv, "radius")
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(table["d"], table["ratio"], "-", color="tab:red")
    ax.set_xlabel("Hilbert space dimension")
    ax.set_ylabel("radius ratio")
    ax.set_ylim(0.0, 1.05)
    _save(fig, output)


_RENDERERS = {
    "region": render_region,
    "sweep": render_sweep,
    "distribution": render_distribution,
    "scaling": render_scaling,
    "radius": render_radius,
}


def render(figure_id: str, inputs: list[str | Path], output: str | Path) -> None:
    """Render one figure type from its input CSV to an image file."""
    if figure_id not in _RENDERERS:
        raise ValueError(f"unknown figure id {figure_id!r}; choose from {FIGURE_IDS}")
    if not inputs:
        raise ValueError("at least one input file is required")
    _RENDERERS[figure_id](inputs[0], output)
