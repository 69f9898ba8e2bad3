"""Shared test helpers: independent oracles and random-input generators."""

from __future__ import annotations

import numpy as np


def charpoly_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Independent eigenvalue oracle: characteristic-polynomial roots.

    Coefficients via the Faddeev-LeVerrier recursion (matrix products and
    traces only), roots via the companion matrix under the hood of
    np.roots; no Hermitian eigensolver involved.  The matrix is rescaled
    to unit size first to keep the root finding well conditioned.
    """
    h = np.asarray(h, dtype=complex)
    d = h.shape[0]
    scale = max(1.0, float(np.abs(h).max()))
    hs = h / scale
    coeffs = np.zeros(d + 1, dtype=complex)
    coeffs[0] = 1.0
    aux = np.zeros_like(hs)
    eye = np.eye(d, dtype=complex)
    for k in range(1, d + 1):
        aux = hs @ aux + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(hs @ aux) / k
    roots = np.roots(coeffs)
    return np.sort(roots.real) * scale


def random_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2.0


def random_state_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)
