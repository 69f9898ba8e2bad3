"""CSV and JSON writers for the command-line front end.

CSV bodies are deterministic functions of the results (full double
precision, fixed header, LF newlines); anything time-dependent goes to
the JSON summary only.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .estimator import FrameRecord, ScanRow, VolumeEstimate
from .separability import RegionMesh

__all__ = [
    "fmt",
    "write_frames_csv",
    "write_mesh_csv",
    "write_radius_csv",
    "write_scan_csv",
    "write_summary_json",
    "write_sweep_csv",
]


def fmt(x: float) -> str:
    """Format a float with 17 significant digits (lossless round trip)."""
    return f"{x:.17g}"


def _write_lines(path: Path, header: str, lines: Sequence[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for line in lines:
            fh.write(line + "\n")


def write_frames_csv(path: str | Path, records: Sequence[FrameRecord]) -> None:
    _write_lines(
        Path(path),
        "frame_index,entanglement,fraction,std_error",
        [
            f"{rec.frame_index},{fmt(rec.frame_entanglement)},"
            f"{fmt(rec.fraction.mean)},{fmt(rec.fraction.std_error)}"
            for rec in records
        ],
    )


def write_scan_csv(path: str | Path, rows: Sequence[ScanRow]) -> None:
    _write_lines(
        Path(path),
        "d_a,d_b,mean,min,n_frames,n_points,min_std_error",
        [
            f"{row.d_a},{row.d_b},{fmt(row.mean_fraction)},{fmt(row.min_fraction)},"
            f"{row.n_frames},{row.n_points},{fmt(row.min_std_error)}"
            for row in rows
        ],
    )


def write_sweep_csv(
    path: str | Path, table: Sequence[tuple[float, float, VolumeEstimate]]
) -> None:
    _write_lines(
        Path(path),
        "theta,alpha,fraction",
        [f"{fmt(theta)},{fmt(alpha)},{fmt(est.mean)}" for theta, alpha, est in table],
    )


def write_mesh_csv(path: str | Path, mesh: RegionMesh) -> None:
    c = mesh.centers
    cls = mesh.classification
    lines = []
    for i in range(mesh.resolution):
        for j in range(mesh.resolution):
            for k in range(mesh.resolution):
                lines.append(f"{fmt(c[i])},{fmt(c[j])},{fmt(c[k])},{cls[i, j, k]}")
    _write_lines(Path(path), "x,y,z,class", lines)


def write_mesh_header_json(
    path: str | Path, mesh: RegionMesh, frame_spec: dict
) -> None:
    payload = {
        "resolution": mesh.resolution,
        "frame": frame_spec,
        "classes": {"0": "outside", "1": "separable", "2": "entangled"},
        "separable_fraction_of_inside": mesh.separable_fraction,
    }
    Path(path).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


def write_radius_csv(path: str | Path, d_values: Sequence[int], ratios: Sequence[float]) -> None:
    _write_lines(
        Path(path),
        "d,ratio",
        [f"{d},{fmt(r)}" for d, r in zip(d_values, ratios)],
    )


def write_summary_json(path: str | Path, payload: dict) -> None:
    def _default(obj):
        if isinstance(obj, (np.integer,)):
            return int(obj)
        if isinstance(obj, (np.floating,)):
            return float(obj)
        raise TypeError(f"not JSON serializable: {type(obj)}")

    Path(path).write_text(
        json.dumps(payload, indent=1, default=_default) + "\n", encoding="utf-8"
    )
