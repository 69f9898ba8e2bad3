"""Monte Carlo orchestration: per-frame fractions, orbit averages, sweeps, scans, decay fits."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .frames import Frame, assemble_states, frame_entanglement, frame_from_unitary, two_param_frame
from .linalg import BipartiteDims
from .sampling import RandomStream, derive_stream, haar_unitary, sample_simplex_batch
from .separability import PPT_TOL, ppt_separable_batch

# Points per classification batch; keeps the (n, d, d) work arrays small
# without changing the random stream (chunked draws are stream-identical
# to one monolithic draw).
_CHUNK = 65536

__all__ = [
    "FrameRecord",
    "ScanRow",
    "VolumeEstimate",
    "dimension_scan",
    "fit_exponential",
    "frame_fraction",
    "global_volume",
    "radius_ratio",
    "sweep_two_param",
]


@dataclass(frozen=True)
class VolumeEstimate:
    """Binomial Monte Carlo estimate of a separable fraction."""

    mean: float
    std_error: float
    n_samples: int
    n_separable: int

    @classmethod
    def from_counts(cls, n_separable: int, n_samples: int) -> "VolumeEstimate":
        mean = n_separable / n_samples
        return cls(
            mean=mean,
            std_error=float(np.sqrt(mean * (1.0 - mean) / n_samples)),
            n_samples=n_samples,
            n_separable=n_separable,
        )


@dataclass(frozen=True)
class FrameRecord:
    """Per-frame result of a global volume run."""

    frame_index: int
    frame_entanglement: float
    fraction: VolumeEstimate


@dataclass(frozen=True)
class ScanRow:
    """Per-system summary of a dimension scan.

    min_std_error is the binomial error of the minimum frame's estimate;
    the minimum of noisy per-frame estimates is biased low by about that
    much.
    """

    d_a: int
    d_b: int
    mean_fraction: float
    min_fraction: float
    n_frames: int
    n_points: int
    min_std_error: float


def frame_fraction(
    frame: Frame, n_points: int, rng: RandomStream, tol: float = PPT_TOL
) -> VolumeEstimate:
    """Fraction of the frame's simplex that assembles to a PPT state.

    Draws n_points uniform simplex samples, assembles the corresponding
    density matrices, and classifies each with the PPT test.
    """
    if n_points < 1:
        raise ValueError(f"n_points must be positive, got {n_points}")
    d = frame.dims.d
    n_sep = 0
    for start in range(0, n_points, _CHUNK):
        m = min(_CHUNK, n_points - start)
        probs = sample_simplex_batch(d, m, rng)
        rhos = assemble_states(frame, probs)
        n_sep += int(ppt_separable_batch(rhos, frame.dims, tol).sum())
    return VolumeEstimate.from_counts(n_sep, n_points)


def _map_ordered(fn, items: Sequence, n_threads: int) -> list:
    """Apply fn over items, optionally on a thread pool; output order is fixed."""
    if n_threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n_threads) as pool:
        return list(pool.map(fn, items))


def global_volume(
    dims: BipartiteDims,
    n_frames: int,
    n_points: int,
    seed: int,
    n_threads: int = 1,
    stream_base: int = 0,
    tol: float = PPT_TOL,
) -> tuple[VolumeEstimate, list[FrameRecord]]:
    """Orbit-averaged separable volume from Haar-sampled frames.

    Each frame gets its own stream (stream_id = stream_base + frame
    index) used first for the Haar unitary and then for its simplex
    samples, so results are bit-identical for any worker count.  With
    equal points per frame the frame average equals the pooled per-sample
    mean, which is what the returned estimate carries.
    """
    if n_frames < 1 or n_points < 1:
        raise ValueError("n_frames and n_points must be positive")

    def one_frame(index: int) -> FrameRecord:
        rng = derive_stream(seed, stream_base + index)
        frame = frame_from_unitary(haar_unitary(dims.d, rng), dims)
        ent = frame_entanglement(frame)
        est = frame_fraction(frame, n_points, rng, tol)
        return FrameRecord(index, ent, est)

    records = _map_ordered(one_frame, range(n_frames), n_threads)
    n_sep = sum(rec.fraction.n_separable for rec in records)
    return VolumeEstimate.from_counts(n_sep, n_frames * n_points), records


def sweep_two_param(
    grid_size: int,
    n_points: int,
    seed: int,
    n_threads: int = 1,
    tol: float = PPT_TOL,
) -> list[tuple[float, float, VolumeEstimate]]:
    """Separable fraction over a grid of two-parameter frames.

    theta and alpha each run over grid_size equispaced nodes of
    [0, pi/4] (symmetry covers the remaining range); node (i, j) uses
    stream_id i*grid_size + j.
    """
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    angles = np.linspace(0.0, np.pi / 4, grid_size)

    def one_node(idx: tuple[int, int]) -> tuple[float, float, VolumeEstimate]:
        i, j = idx
        rng = derive_stream(seed, i * grid_size + j)
        frame = two_param_frame(angles[i], angles[j])
        return float(angles[i]), float(angles[j]), frame_fraction(frame, n_points, rng, tol)

    nodes = [(i, j) for i in range(grid_size) for j in range(grid_size)]
    return _map_ordered(one_node, nodes, n_threads)


def dimension_scan(
    dims_list: Sequence[BipartiteDims],
    n_frames: int,
    n_points: int,
    seed: int,
    n_threads: int = 1,
    tol: float = PPT_TOL,
) -> list[ScanRow]:
    """Mean and minimum frame fraction for each system in dims_list.

    Row r uses stream ids r << 32 .. (r << 32) + n_frames - 1, keeping
    every frame of every row on an independent stream.
    """
    rows = []
    for r, dims in enumerate(dims_list):
        _, records = global_volume(
            dims, n_frames, n_points, seed, n_threads=n_threads, stream_base=r << 32, tol=tol
        )
        fractions = [rec.fraction.mean for rec in records]
        arg_min = int(np.argmin(fractions))
        rows.append(
            ScanRow(
                d_a=dims.d_a,
                d_b=dims.d_b,
                mean_fraction=sum(rec.fraction.n_separable for rec in records)
                / (n_frames * n_points),
                min_fraction=fractions[arg_min],
                n_frames=n_frames,
                n_points=n_points,
                min_std_error=records[arg_min].fraction.std_error,
            )
        )
    return rows


def fit_exponential(rows: Sequence[ScanRow]) -> float:
    """Decay rate of mean fraction with total dimension.

    Least-squares slope of ln(mean) against d = d_a * d_b; positive for
    data that decays with dimension.
    """
    if len(rows) < 2:
        raise ValueError("need at least two rows to fit a decay rate")
    d = np.array([row.d_a * row.d_b for row in rows], dtype=float)
    means = np.array([row.mean_fraction for row in rows], dtype=float)
    if (means <= 0).any():
        raise ValueError("all mean fractions must be positive for a log fit")
    slope = np.polyfit(d, np.log(means), 1)[0]
    return float(-slope)


def radius_ratio(d: int, decay_rate: float) -> float:
    """Effective inner/outer radius ratio exp(-decay_rate * d / (d^2 - 1)).

    Models the separable region and the full state space as balls in the
    (d^2 - 1)-dimensional state space whose volume ratio decays like
    exp(-decay_rate * d); strictly increasing in d, with limit 1.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if decay_rate < 0:
        raise ValueError(f"decay_rate must be non-negative, got {decay_rate}")
    return float(np.exp(-decay_rate * d / (d**2 - 1)))
