"""Command-line front end for seeded volume estimation and geometry runs."""

from __future__ import annotations

import argparse
import datetime
import os
import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .estimator import (
    dimension_scan,
    fit_exponential,
    frame_fraction,
    global_volume,
    radius_ratio,
    sweep_two_param,
)
from .frames import (
    CanonicalTwoQubitParams,
    FeasibilityError,
    Frame,
    bell_frame,
    canonical_two_qubit_frame,
    frame_concurrence,
    frame_entanglement,
    load_frame,
    qubit_qutrit_frame,
    two_param_frame,
)
from .linalg import BipartiteDims
from .output import (
    fmt,
    write_frames_csv,
    write_mesh_csv,
    write_mesh_header_json,
    write_radius_csv,
    write_scan_csv,
    write_summary_json,
    write_sweep_csv,
)
from .sampling import derive_stream
from .separability import region_mesh

OUTDIR_ENV = "SEPVOL_OUTDIR"

PAPER_SCALE_FRAMES = 2**15
PAPER_SCALE_POINTS = 10**6


@dataclass
class RunConfig:
    """Resolved invocation of one CLI command."""

    command: str
    output_dir: Path
    seed: int = 0
    dims: BipartiteDims | None = None
    dims_list: list[BipartiteDims] = field(default_factory=list)
    n_frames: int = 0
    n_points: int = 0
    grid_size: int = 0
    resolution: int = 0
    threads: int = 1
    paper_scale: bool = False
    frame: Frame | None = None
    frame_spec: dict = field(default_factory=dict)
    entanglement_measure: str = "entropy"
    scan_file: Path | None = None
    d_max: int = 100


def _parse_dims(text: str) -> BipartiteDims:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"dims must look like '2x3', got {text!r}")
    d_a, d_b = int(parts[0]), int(parts[1])
    if d_a < 2 or d_b < 2:
        raise ValueError(f"subsystem dimensions must be >= 2, got {text!r}")
    return BipartiteDims(d_a, d_b)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_frame_flags(sub: argparse.ArgumentParser, with_angle_sugar: bool = False) -> None:
    group = sub.add_argument_group("frame selection (precedence: bell, two-param, "
                                   "qutrit-family, canonical, frame-file)")
    group.add_argument("--bell", action="store_true", help="Bell frame of --dims")
    group.add_argument("--two-param", nargs=2, type=float, metavar=("THETA", "ALPHA"),
                       help="two-parameter (2,2) family frame")
    group.add_argument("--qutrit-family", nargs=3, type=float,
                       metavar=("THETA", "ALPHA", "BETA"),
                       help="three-parameter (2,3) family frame")
    group.add_argument("--canonical", nargs=6, type=float,
                       metavar=("THETA1", "ALPHA", "THETA2", "THETA3", "PHI", "PHI3"),
                       help="canonical six-parameter (2,2) frame")
    group.add_argument("--frame-file", type=Path, help="frame JSON written by this tool")
    if with_angle_sugar:
        group.add_argument("--theta", type=float, help="two-param theta in radians")
        group.add_argument("--alpha", type=float, help="two-param alpha in radians")
        group.add_argument("--theta-deg", type=float, help="two-param theta in degrees")
        group.add_argument("--alpha-deg", type=float, help="two-param alpha in degrees")


def _resolve_frame(args: argparse.Namespace, parser: argparse.ArgumentParser,
                   dims: BipartiteDims | None) -> tuple[Frame, dict]:
    """Apply the frame-flag precedence and build the frame plus its spec record."""
    if args.bell:
        dims = dims if dims is not None else BipartiteDims(2, 2)
        return bell_frame(dims), {"kind": "bell", "dims": str(dims)}
    if args.two_param is not None:
        theta, alpha = args.two_param
        return two_param_frame(theta, alpha), {
            "kind": "two-param", "theta": theta, "alpha": alpha,
        }
    if args.qutrit_family is not None:
        theta, alpha, beta = args.qutrit_family
        return qubit_qutrit_frame(theta, alpha, beta), {
            "kind": "qutrit-family", "theta": theta, "alpha": alpha, "beta": beta,
        }
    if args.canonical is not None:
        params = CanonicalTwoQubitParams(*args.canonical)
        return canonical_two_qubit_frame(params), {
            "kind": "canonical", "params": list(args.canonical),
        }
    if args.frame_file is not None:
        frame = load_frame(args.frame_file)
        return frame, {"kind": "frame-file", "path": str(args.frame_file)}
    theta = getattr(args, "theta", None)
    alpha = getattr(args, "alpha", None)
    if theta is None and getattr(args, "theta_deg", None) is not None:
        theta = np.deg2rad(args.theta_deg)
    if alpha is None and getattr(args, "alpha_deg", None) is not None:
        alpha = np.deg2rad(args.alpha_deg)
    if theta is not None and alpha is not None:
        return two_param_frame(theta, alpha), {
            "kind": "two-param", "theta": float(theta), "alpha": float(alpha),
        }
    parser.error("no frame specified (use --bell, --two-param, --qutrit-family, "
                 "--canonical, --frame-file, or --theta/--alpha)")
    raise AssertionError("unreachable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepvol",
        description="Monte Carlo estimation of separable (PPT) state-space volume.",
    )
    parser.add_argument("--version", action="version", version=f"sepvol {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser, points_default: int) -> None:
        sub.add_argument("--seed", type=int, default=0, help="master seed (decimal 64-bit)")
        sub.add_argument("--points", type=_positive_int, default=points_default,
                         help="simplex samples per frame")
        sub.add_argument("--output-dir", type=Path,
                         default=Path(os.environ.get(OUTDIR_ENV, ".")),
                         help=f"output directory (default: ${OUTDIR_ENV} or '.')")

    est = subs.add_parser("estimate", help="orbit-averaged separable volume")
    est.add_argument("--dims", type=str, required=True, help="subsystem dims, e.g. 2x2")
    est.add_argument("--frames", type=_positive_int, default=512, help="number of Haar frames")
    est.add_argument("--threads", type=_positive_int, default=1, help="worker threads (results unchanged)")
    est.add_argument("--paper-scale", action="store_true",
                     help=f"use {PAPER_SCALE_FRAMES} frames x {PAPER_SCALE_POINTS} points")
    common(est, 20000)

    fv = subs.add_parser("frame-volume", help="separable fraction of one frame")
    fv.add_argument("--dims", type=str, help="subsystem dims (required with --bell)")
    fv.add_argument("--entanglement-measure", choices=("entropy", "concurrence"),
                    default="entropy",
                    help="frame-entanglement measure reported for (2,2) frames")
    _add_frame_flags(fv)
    common(fv, 20000)

    sw = subs.add_parser("sweep", help="fraction over a theta/alpha grid")
    sw.add_argument("--grid", type=_positive_int, default=9, help="nodes per axis on [0, pi/4]")
    sw.add_argument("--threads", type=_positive_int, default=1)
    common(sw, 20000)

    rg = subs.add_parser("region", help="classify the tetrahedron of a (2,2) frame")
    rg.add_argument("--resolution", type=_positive_int, default=64, help="grid cells per axis")
    _add_frame_flags(rg, with_angle_sugar=True)
    rg.add_argument("--dims", type=str, help="subsystem dims (with --bell; must be 2x2)")
    rg.add_argument("--seed", type=int, default=0)
    rg.add_argument("--output-dir", type=Path,
                    default=Path(os.environ.get(OUTDIR_ENV, ".")))

    sc = subs.add_parser("scan", help="mean/min fraction across systems")
    sc.add_argument("--dims-list", type=str, required=True,
                    help="comma-separated systems, e.g. 2x6,3x4")
    sc.add_argument("--frames", type=_positive_int, default=128, help="Haar frames per system")
    sc.add_argument("--threads", type=_positive_int, default=1)
    sc.add_argument("--paper-scale", action="store_true",
                    help=f"use {PAPER_SCALE_FRAMES} frames x {PAPER_SCALE_POINTS} points")
    common(sc, 20000)

    rf = subs.add_parser("radius-fit", help="decay rate and radius-ratio curve from a scan")
    rf.add_argument("--scan-file", type=Path, required=True, help="scan.csv from 'scan'")
    rf.add_argument("--d-max", type=_positive_int, default=100, help="largest dimension tabulated")
    rf.add_argument("--output-dir", type=Path,
                    default=Path(os.environ.get(OUTDIR_ENV, ".")))

    return parser


def config_from_args(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        output_dir=Path(getattr(args, "output_dir", ".")),
        seed=getattr(args, "seed", 0),
    )
    try:
        if getattr(args, "dims", None):
            cfg.dims = _parse_dims(args.dims)
        if getattr(args, "dims_list", None):
            cfg.dims_list = [_parse_dims(t) for t in args.dims_list.split(",") if t]
    except ValueError as exc:
        parser.error(str(exc))

    cfg.n_points = getattr(args, "points", 0)
    cfg.n_frames = getattr(args, "frames", 0)
    cfg.grid_size = getattr(args, "grid", 0)
    cfg.resolution = getattr(args, "resolution", 0)
    cfg.threads = getattr(args, "threads", 1)
    cfg.paper_scale = getattr(args, "paper_scale", False)
    cfg.entanglement_measure = getattr(args, "entanglement_measure", "entropy")
    cfg.scan_file = getattr(args, "scan_file", None)
    cfg.d_max = getattr(args, "d_max", 100)
    if cfg.paper_scale:
        cfg.n_frames = PAPER_SCALE_FRAMES
        cfg.n_points = PAPER_SCALE_POINTS

    if args.command in ("frame-volume", "region"):
        if args.command == "frame-volume" and args.bell and cfg.dims is None:
            parser.error("--bell requires --dims")
        cfg.frame, cfg.frame_spec = _resolve_frame(args, parser, cfg.dims)
        if args.command == "region" and (cfg.frame.dims.d_a, cfg.frame.dims.d_b) != (2, 2):
            parser.error("region meshes require a (2,2) frame")
    return cfg


def _summary_payload(cfg: RunConfig, elapsed: float, result: dict) -> dict:
    return {
        "command": cfg.command,
        "seed": cfg.seed,
        "config": {
            "dims": str(cfg.dims) if cfg.dims else None,
            "dims_list": [str(d) for d in cfg.dims_list] or None,
            "n_frames": cfg.n_frames or None,
            "n_points": cfg.n_points or None,
            "grid_size": cfg.grid_size or None,
            "resolution": cfg.resolution or None,
            "threads": cfg.threads,
            "paper_scale": cfg.paper_scale,
            "frame": cfg.frame_spec or None,
        },
        "result": result,
        "versions": {
            "sepvol": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
        "timings": {"elapsed_s": elapsed},
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _estimate_dict(est) -> dict:
    return {
        "mean": est.mean,
        "std_error": est.std_error,
        "n_samples": est.n_samples,
        "n_separable": est.n_separable,
    }


def run(cfg: RunConfig) -> int:
    """Execute a resolved command; writes files and prints one summary line."""
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()

    if cfg.command == "estimate":
        est, records = global_volume(
            cfg.dims, cfg.n_frames, cfg.n_points, cfg.seed, n_threads=cfg.threads
        )
        write_frames_csv(out / "frames.csv", records)
        result = _estimate_dict(est)
        summary = (
            f"estimate {cfg.dims}: v_sep = {est.mean:.5f} +/- {est.std_error:.5f} "
            f"({cfg.n_frames} frames x {cfg.n_points} points, seed {cfg.seed})"
        )

    elif cfg.command == "frame-volume":
        rng = derive_stream(cfg.seed, 0)
        est = frame_fraction(cfg.frame, cfg.n_points, rng)
        if cfg.entanglement_measure == "concurrence":
            ent = frame_concurrence(cfg.frame)
        else:
            ent = frame_entanglement(cfg.frame)
        result = {
            **_estimate_dict(est),
            "frame_entanglement": ent,
            "entanglement_measure": cfg.entanglement_measure,
        }
        summary = (
            f"frame-volume {cfg.frame.dims} [{cfg.frame_spec['kind']}]: "
            f"fraction = {est.mean:.5f} +/- {est.std_error:.5f} "
            f"({cfg.n_points} points, seed {cfg.seed}, entanglement {ent:.4f})"
        )

    elif cfg.command == "sweep":
        table = sweep_two_param(cfg.grid_size, cfg.n_points, cfg.seed, n_threads=cfg.threads)
        write_sweep_csv(out / "sweep.csv", table)
        fractions = [est.mean for _, _, est in table]
        arg_min = int(np.argmin(fractions))
        result = {
            "grid_size": cfg.grid_size,
            "min_fraction": fractions[arg_min],
            "min_theta": table[arg_min][0],
            "min_alpha": table[arg_min][1],
        }
        summary = (
            f"sweep {cfg.grid_size}x{cfg.grid_size}: min fraction = "
            f"{fractions[arg_min]:.5f} at (theta, alpha) = "
            f"({table[arg_min][0]:.5f}, {table[arg_min][1]:.5f}), seed {cfg.seed}"
        )

    elif cfg.command == "region":
        mesh = region_mesh(cfg.frame, cfg.resolution)
        write_mesh_csv(out / "mesh.csv", mesh)
        write_mesh_header_json(out / "mesh.json", mesh, cfg.frame_spec)
        result = {
            "resolution": cfg.resolution,
            "separable_fraction_of_inside": mesh.separable_fraction,
        }
        summary = (
            f"region [{cfg.frame_spec['kind']}] resolution {cfg.resolution}: "
            f"separable/inside = {mesh.separable_fraction:.4f}"
        )

    elif cfg.command == "scan":
        rows = dimension_scan(
            cfg.dims_list, cfg.n_frames, cfg.n_points, cfg.seed, n_threads=cfg.threads
        )
        write_scan_csv(out / "scan.csv", rows)
        result = {
            "rows": [
                {
                    "dims": f"{r.d_a}x{r.d_b}",
                    "mean": r.mean_fraction,
                    "min": r.min_fraction,
                }
                for r in rows
            ]
        }
        parts = ", ".join(f"{r.d_a}x{r.d_b}: {r.mean_fraction:.4f}" for r in rows)
        summary = (
            f"scan ({cfg.n_frames} frames x {cfg.n_points} points, seed {cfg.seed}): {parts}"
        )

    elif cfg.command == "radius-fit":
        rows = _read_scan_csv(cfg.scan_file)
        rate = fit_exponential(rows)
        d_values = list(range(2, cfg.d_max + 1))
        ratios = [radius_ratio(d, rate) for d in d_values]
        write_radius_csv(out / "radius.csv", d_values, ratios)
        result = {"decay_rate": rate, "d_max": cfg.d_max}
        summary = (
            f"radius-fit: decay rate = {fmt(rate)} from {len(rows)} rows; "
            f"ratio({cfg.d_max}) = {ratios[-1]:.6f}"
        )

    else:
        raise AssertionError(f"unhandled command {cfg.command!r}")

    elapsed = time.perf_counter() - t0
    write_summary_json(out / "summary.json", _summary_payload(cfg, elapsed, result))
    print(summary)
    return 0


def _read_scan_csv(path: Path):
    from .estimator import ScanRow

    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        expected = ["d_a", "d_b", "mean", "min", "n_frames", "n_points", "min_std_error"]
        if header != expected:
            raise ValueError(f"unexpected scan.csv header {header}, want {expected}")
        for line in fh:
            cells = line.strip().split(",")
            rows.append(
                ScanRow(
                    d_a=int(cells[0]),
                    d_b=int(cells[1]),
                    mean_fraction=float(cells[2]),
                    min_fraction=float(cells[3]),
                    n_frames=int(cells[4]),
                    n_points=int(cells[5]),
                    min_std_error=float(cells[6]),
                )
            )
    return rows


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args, parser)
        return run(cfg)
    except FeasibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
