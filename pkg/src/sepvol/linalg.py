"""Dense complex linear algebra kernel for small bipartite density matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Relative tolerance for accepting a matrix as Hermitian.
HERMITIAN_RTOL = 1e-12

# Relative tolerance for accepting a vector as normalized.
UNIT_NORM_TOL = 1e-10

__all__ = [
    "BipartiteDims",
    "hermitian_eigenvalues",
    "is_psd",
    "partial_transpose",
    "reduced_density",
    "trace_inner_product",
]


@dataclass(frozen=True)
class BipartiteDims:
    """Subsystem dimensions (d_a, d_b) of a bipartite system.

    Composite-basis index convention (used everywhere in this package):
    the product state |a>|b> sits at row a * d_b + b.
    """

    d_a: int
    d_b: int

    def __post_init__(self) -> None:
        if self.d_a < 1 or self.d_b < 1:
            raise ValueError(f"subsystem dimensions must be positive, got {self}")

    @property
    def d(self) -> int:
        """Total composite dimension d_a * d_b."""
        return self.d_a * self.d_b

    @property
    def orbit_param_count(self) -> int:
        """Parameters labelling orthonormal frames modulo local unitaries."""
        return (self.d_a**2 - 1) * (self.d_b**2 - 1) - self.d_a * self.d_b + 1

    def __str__(self) -> str:
        return f"{self.d_a}x{self.d_b}"


def _as_square(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


def _require_hermitian(h: np.ndarray, name: str = "matrix") -> np.ndarray:
    h = _as_square(h, name)
    scale = max(1.0, float(np.abs(h).max())) if h.size else 1.0
    dev = float(np.abs(h - h.conj().T).max()) if h.size else 0.0
    if dev > HERMITIAN_RTOL * scale:
        raise ValueError(
            f"{name} is not Hermitian: max |H - H^dag| = {dev:.3e} "
            f"exceeds {HERMITIAN_RTOL:.0e} * {scale:.3e}"
        )
    return h


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    Raises ValueError if the input deviates from Hermiticity by more
    than HERMITIAN_RTOL relative to its largest entry.
    """
    h = _require_hermitian(h)
    return np.linalg.eigvalsh(h)


def is_psd(h: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff the Hermitian matrix h has min eigenvalue >= -tol * max(1, maxabs(h))."""
    if tol < 0:
        raise ValueError(f"tol must be non-negative, got {tol}")
    h = _require_hermitian(h)
    scale = max(1.0, float(np.abs(h).max()))
    return bool(np.linalg.eigvalsh(h)[0] >= -tol * scale)


def partial_transpose(
    rho: np.ndarray, dims: BipartiteDims, subsystem: str = "B"
) -> np.ndarray:
    """Transpose the indices of one subsystem of a bipartite matrix.

    Entry-permutation only: the result is exact, trace-preserving, and an
    involution.  subsystem is "A" or "B".
    """
    rho = _as_square(rho, "rho")
    d_a, d_b = dims.d_a, dims.d_b
    if rho.shape[0] != dims.d:
        raise ValueError(f"rho has dim {rho.shape[0]}, expected {dims.d} for dims {dims}")
    four = rho.reshape(d_a, d_b, d_a, d_b)
    if subsystem == "B":
        out = four.transpose(0, 3, 2, 1)
    elif subsystem == "A":
        out = four.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return np.ascontiguousarray(out).reshape(dims.d, dims.d)


def partial_transpose_batch(
    rhos: np.ndarray, dims: BipartiteDims, subsystem: str = "B"
) -> np.ndarray:
    """partial_transpose applied to a stack of matrices of shape (n, d, d)."""
    n = rhos.shape[0]
    d_a, d_b = dims.d_a, dims.d_b
    four = rhos.reshape(n, d_a, d_b, d_a, d_b)
    if subsystem == "B":
        out = four.transpose(0, 1, 4, 3, 2)
    elif subsystem == "A":
        out = four.transpose(0, 3, 2, 1, 4)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return np.ascontiguousarray(out).reshape(n, dims.d, dims.d)


def reduced_density(psi: np.ndarray, dims: BipartiteDims, keep: str = "A") -> np.ndarray:
    """Reduced state of one subsystem of a bipartite pure state.

    psi must be a unit vector of length d_a * d_b.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape[0] != dims.d:
        raise ValueError(f"psi has length {psi.shape[0]}, expected {dims.d}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise ValueError(f"psi is not normalized: |psi| = {norm!r}")
    mat = psi.reshape(dims.d_a, dims.d_b)
    if keep == "A":
        return mat @ mat.conj().T
    if keep == "B":
        return mat.T @ mat.conj()
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def trace_inner_product(x: np.ndarray, y: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(X^dag Y)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    return complex(np.vdot(x, y))
