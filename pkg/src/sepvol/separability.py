"""Separability classification: PPT test, analytic oracles, simplex geometry, region meshes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .frames import Frame, assemble_states
from .linalg import BipartiteDims, partial_transpose_batch

# Default relative tolerance on the minimum partial-transpose eigenvalue.
# Generic Monte Carlo points sit far from the boundary, so flips inside
# this band are immaterial at the accuracy targeted; boundary points are
# counted as separable.
PPT_TOL = 1e-9

CLASS_OUTSIDE = 0
CLASS_SEPARABLE = 1
CLASS_ENTANGLED = 2

__all__ = [
    "CartesianPoint",
    "RegionMesh",
    "octahedron_member",
    "ppt_min_eigenvalue",
    "ppt_separable",
    "ppt_separable_batch",
    "region_mesh",
    "simplex_to_xyz",
    "two_param_separable",
    "xyz_to_simplex",
]


class CartesianPoint(NamedTuple):
    """Point of the eigenvalue tetrahedron in Cartesian coordinates."""

    x: float
    y: float
    z: float


def simplex_to_xyz(p: np.ndarray) -> CartesianPoint:
    """Map a 4-component simplex point to tetrahedron coordinates.

    Inverse of xyz_to_simplex; vertices go to (1,1,1), (1,-1,-1),
    (-1,1,-1), (-1,-1,1).
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError(f"expected 4 probabilities, got shape {p.shape}")
    p1, p2, p3, p4 = p
    return CartesianPoint(p1 + p2 - p3 - p4, p1 - p2 + p3 - p4, p1 - p2 - p3 + p4)


def xyz_to_simplex(pt: CartesianPoint) -> np.ndarray:
    """Probabilities of a tetrahedron point; raises if the point lies outside."""
    x, y, z = pt
    p = np.array(
        [1 + x + y + z, 1 + x - y - z, 1 - x + y - z, 1 - x - y + z]
    ) / 4.0
    if p.min() < -1e-12:
        raise ValueError(f"point {tuple(pt)} lies outside the tetrahedron")
    return np.clip(p, 0.0, None)


def _xyz_to_simplex_grid(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Vectorized xyz_to_simplex without the inside check, shape (..., 4)."""
    return np.stack(
        [1 + x + y + z, 1 + x - y - z, 1 - x + y - z, 1 - x - y + z], axis=-1
    ) / 4.0


def ppt_min_eigenvalue(rho: np.ndarray, dims: BipartiteDims) -> float:
    """Minimum eigenvalue of the partial transpose (over B) of rho."""
    return float(_ppt_min_eigenvalues(np.asarray(rho, dtype=complex)[None], dims)[0])


def _ppt_min_eigenvalues(rhos: np.ndarray, dims: BipartiteDims) -> np.ndarray:
    pt = partial_transpose_batch(rhos, dims, "B")
    return np.linalg.eigvalsh(pt)[:, 0]


def ppt_separable(rho: np.ndarray, dims: BipartiteDims, tol: float = PPT_TOL) -> bool:
    """PPT criterion: partial transpose over B positive semidefinite within tol.

    Exactly separability for composite dimension d_a*d_b <= 6; the
    necessary-only PPT proxy above that.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dims.d, dims.d):
        raise ValueError(f"rho has shape {rho.shape}, expected ({dims.d}, {dims.d})")
    return bool(ppt_separable_batch(rho[None], dims, tol)[0])


def ppt_separable_batch(
    rhos: np.ndarray, dims: BipartiteDims, tol: float = PPT_TOL
) -> np.ndarray:
    """Vectorized PPT test for a stack of density matrices, shape (n, d, d)."""
    pt = partial_transpose_batch(rhos, dims, "B")
    w_min = np.linalg.eigvalsh(pt)[:, 0]
    scale = np.maximum(1.0, np.abs(pt).max(axis=(1, 2)))
    return w_min >= -tol * scale


def two_param_separable(theta: float, alpha: float, p: np.ndarray) -> bool:
    """Analytic separability test for the two-parameter two-qubit family.

    The partial transpose splits into two 2x2 blocks, so separability
    reduces to two quadratic inequalities in the probabilities; both must
    hold with slack >= -1e-12.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError(f"expected 4 probabilities, got shape {p.shape}")
    p1, p2, p3, p4 = p
    st2, ct2 = np.sin(theta) ** 2, np.cos(theta) ** 2
    sa2, ca2 = np.sin(alpha) ** 2, np.cos(alpha) ** 2
    lhs1 = (p1**2 + p2**2) * st2 * ct2 + p1 * p2 * (st2**2 + ct2**2) - (
        p3 - p4
    ) ** 2 * sa2 * ca2
    lhs2 = (p3**2 + p4**2) * sa2 * ca2 + p3 * p4 * (sa2**2 + ca2**2) - (
        p1 - p2
    ) ** 2 * st2 * ct2
    return bool(lhs1 >= -1e-12 and lhs2 >= -1e-12)


def octahedron_member(p: np.ndarray) -> bool:
    """Separability oracle for Bell-diagonal two-qubit states: max p_j <= 1/2."""
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError(f"expected 4 probabilities, got shape {p.shape}")
    return bool(p.max() <= 0.5 + 1e-12)


@dataclass(frozen=True)
class RegionMesh:
    """Cell-center classification of the [-1,1]^3 cube around the tetrahedron.

    classification holds CLASS_OUTSIDE / CLASS_SEPARABLE / CLASS_ENTANGLED
    per cell; centers are the per-axis cell-center coordinates.
    """

    resolution: int
    centers: np.ndarray
    classification: np.ndarray

    @property
    def separable_fraction(self) -> float:
        """Separable cells over inside-tetrahedron cells."""
        inside = self.classification != CLASS_OUTSIDE
        return float((self.classification == CLASS_SEPARABLE).sum() / inside.sum())


def region_mesh(frame: Frame, resolution: int, tol: float = PPT_TOL) -> RegionMesh:
    """Classify the eigenvalue tetrahedron of a (2,2) frame on a cubic grid.

    Cell centers only (no supersampling); volume numbers come from Monte
    Carlo, the mesh feeds the region figure.
    """
    if (frame.dims.d_a, frame.dims.d_b) != (2, 2):
        raise ValueError("region meshes are defined for (2,2) frames")
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    centers = -1.0 + (2.0 * np.arange(resolution) + 1.0) / resolution
    gx, gy, gz = np.meshgrid(centers, centers, centers, indexing="ij")
    probs = _xyz_to_simplex_grid(gx, gy, gz).reshape(-1, 4)
    inside = probs.min(axis=1) >= -1e-12

    cls = np.full(probs.shape[0], CLASS_OUTSIDE, dtype=np.int8)
    inside_probs = np.clip(probs[inside], 0.0, None)
    rhos = assemble_states(frame, inside_probs)
    sep = ppt_separable_batch(rhos, frame.dims, tol)
    cls[inside] = np.where(sep, CLASS_SEPARABLE, CLASS_ENTANGLED)
    return RegionMesh(
        resolution=resolution,
        centers=centers,
        classification=cls.reshape(resolution, resolution, resolution),
    )
