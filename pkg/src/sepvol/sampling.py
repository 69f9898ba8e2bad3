"""Seedable random sources: derived streams, Haar unitaries, flat simplex points."""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

__all__ = [
    "RandomStream",
    "derive_stream",
    "haar_unitary",
    "haar_unitary_batch",
    "sample_simplex",
    "sample_simplex_batch",
]


class RandomStream:
    """Deterministic counter-based random stream.

    Built on Philox keyed by (master_seed, stream_id): identical key pairs
    reproduce identical value sequences on any platform, distinct stream
    ids give statistically independent streams, and derivation is O(1).
    """

    def __init__(self, master_seed: int, stream_id: int = 0) -> None:
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        key = np.array(
            [self.master_seed & _MASK64, self.stream_id & _MASK64], dtype=np.uint64
        )
        self.generator = np.random.Generator(np.random.Philox(key=key))


def derive_stream(master_seed: int, stream_id: int = 0) -> RandomStream:
    """Construct the stream identified by (master_seed, stream_id)."""
    return RandomStream(master_seed, stream_id)


def _standard_complex(rng: RandomStream, shape: tuple[int, ...]) -> np.ndarray:
    """i.i.d. standard complex Gaussians, drawn real/imag interleaved.

    Interleaving keeps single and batched draws on the same stream
    positions, so haar_unitary_batch(d, n) reproduces n sequential
    haar_unitary(d) calls exactly.
    """
    z = rng.generator.standard_normal(shape + (2,))
    return z[..., 0] + 1j * z[..., 1]


def haar_unitary(d: int, rng: RandomStream) -> np.ndarray:
    """A d x d unitary drawn from the Haar measure.

    Ginibre matrix followed by QR with the diagonal-phase correction of
    the R factor; the uncorrected Q alone is not Haar distributed.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    z = _standard_complex(rng, (d, d))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r)
    return q * (phases / np.abs(phases))


def haar_unitary_batch(d: int, n: int, rng: RandomStream) -> np.ndarray:
    """n Haar unitaries as a stack of shape (n, d, d)."""
    if d < 1 or n < 1:
        raise ValueError(f"d and n must be positive, got d={d}, n={n}")
    z = _standard_complex(rng, (n, d, d))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r, axis1=1, axis2=2)
    return q * (phases / np.abs(phases))[:, None, :]


def sample_simplex(d: int, rng: RandomStream) -> np.ndarray:
    """A point uniform on the probability simplex over d outcomes.

    Normalized standard-exponential variates, i.e. the flat Dirichlet.
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    e = rng.generator.standard_exponential(d)
    return e / e.sum()


def sample_simplex_batch(d: int, n: int, rng: RandomStream) -> np.ndarray:
    """n uniform simplex points as an (n, d) array."""
    if d < 1 or n < 1:
        raise ValueError(f"d and n must be positive, got d={d}, n={n}")
    e = rng.generator.standard_exponential((n, d))
    return e / e.sum(axis=1, keepdims=True)
