"""Batch command-line front end.

Subcommands wire the pipeline end to end (``run``) or expose individual
stages on the documented JSON/CSV formats (``lift``, ``reduce-winding``,
``experiment``, ``coords``). Every failure exits nonzero with a
machine-readable JSON diagnostic naming the failing operation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .complexes import Chain, Cochain, FilteredComplex, GF, ZZ, build_from_simplices
from .errors import CircliftError, TorsionObstruction, Unliftable, ZeroPairing
from .experiments import sparsity_sweep, write_sparsity_csv
from .fields import OddPrime
from .lifting import DEFAULT_SNF_CAP, lift_closed
from .pipeline import run_pipeline
from .plots import pca_project, svg_line_chart, svg_scatter
from .smoothing import circular_map, harmonic_smooth
from .winding import reduce_winding

EXIT_ERROR = 1
EXIT_UNLIFTABLE = 2
EXIT_ZERO_PAIRING = 3
EXIT_TORSION = 4


@dataclass
class PipelineConfig:
    """Validated configuration for a full pipeline run."""

    input: Path
    prime: int = 47
    max_dim: int = 1
    threshold: float | str = "auto"
    class_strategy: str = "max-persistence"
    scale_policy: str | float = "midpoint"
    snf_cap: int = DEFAULT_SNF_CAP
    seed: int = 0
    out: Path = Path(".")
    reduce: bool = True

    def __post_init__(self):
        OddPrime(self.prime)   # rejects p = 2 and composites before any compute
        if self.threshold != "auto":
            self.threshold = float(self.threshold)
        if self.scale_policy != "midpoint":
            self.scale_policy = float(self.scale_policy)


def _read_points_csv(path: Path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([float(v) for v in line.split(",")])
    if not rows:
        raise CircliftError(f"no points in {path}", operation="cli_io.cmd_run")
    return np.asarray(rows, dtype=float)


def _load_complex(path: Path) -> FilteredComplex:
    with open(path) as fh:
        data = json.load(fh)
    return build_from_simplices(
        [(tuple(e["vertices"]), float(e["filtration"])) for e in data["simplices"]])


def _load_input(path: Path):
    """Points CSV or explicit-complex JSON, by extension."""
    if path.suffix.lower() == ".json":
        return None, _load_complex(path)
    return _read_points_csv(path), None


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def cmd_run(config: PipelineConfig) -> int:
    points, complex_ = _load_input(config.input)
    result = run_pipeline(
        points=points, complex=complex_, prime=config.prime,
        max_dim=config.max_dim, threshold=config.threshold,
        class_strategy=config.class_strategy, scale_policy=config.scale_policy,
        reduce=config.reduce, snf_cap=config.snf_cap)

    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    result.diagram.write_json(out / "diagram.json")
    _write_json(out / "lift_report.json", result.cocycle_lift.to_json_dict())
    if result.winding_report is not None:
        _write_json(out / "winding_report.json", result.winding_report.to_json_dict())
    result.smoothed.write_json(out / "smoothed.json")
    result.coords.write_csv(out / "coords.csv")

    if points is not None:
        proj = pca_project(points, 2)
        thetas = [result.coords.values[v] for v in sorted(result.coords.values)]
        svg_scatter(proj, thetas, out / "coords.svg",
                    title=f"circlift {__version__}")
    return 0


def cmd_lift(args) -> int:
    cx = _load_complex(Path(args.complex))
    with open(args.input) as fh:
        data = json.load(fh)
    cls = Chain if args.kind == "cycle" else Cochain
    vec = cls.from_json_dict(cx, data, ring=GF(args.prime))
    report = lift_closed(vec, args.kind, snf_cap=args.snf_cap)
    _write_json(Path(args.out) / "lift_report.json", report.to_json_dict())
    return 0


def cmd_reduce_winding(args) -> int:
    cx = _load_complex(Path(args.complex))
    with open(args.cocycle) as fh:
        alpha = Cochain.from_json_dict(cx, json.load(fh), ring=ZZ)
    with open(args.cycle) as fh:
        beta = Chain.from_json_dict(cx, json.load(fh), ring=ZZ)
    report = reduce_winding(alpha, beta, snf_cap=args.snf_cap)
    _write_json(Path(args.out) / "winding_report.json", report.to_json_dict())
    return 0


def cmd_experiment(args) -> int:
    if args.experiment != "sparsity":
        raise CircliftError(f"unknown experiment {args.experiment!r}",
                            operation="cli_io.cmd_experiment")
    rows = sparsity_sweep(args.n, args.pmin, args.pmax, args.samples, args.k,
                          args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_sparsity_csv(rows, out / "sparsity.csv", seed=args.seed)
    svg_line_chart([r.prime for r in rows], [r.proportion for r in rows],
                   out / "sparsity.svg", x_label="p", y_label="proportion",
                   title=f"non-liftable lines, n={args.n} k={args.k} "
                         f"seed={args.seed} circlift {__version__}")
    return 0


def cmd_coords(args) -> int:
    cx = _load_complex(Path(args.complex))
    with open(args.cocycle) as fh:
        alpha = Cochain.from_json_dict(cx, json.load(fh), ring=ZZ)
    smoothed = harmonic_smooth(alpha)
    coords = circular_map(smoothed, base_vertex=args.base_vertex)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    smoothed.write_json(out / "smoothed.json")
    coords.write_csv(out / "coords.csv")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlift",
        description="circular coordinates with validated cocycle lifting")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="full pipeline on a point cloud or complex")
    run.add_argument("--input", required=True, type=Path,
                     help="points CSV (no header) or explicit-complex JSON")
    run.add_argument("--prime", type=int, default=47)
    run.add_argument("--max-dim", type=int, default=1)
    run.add_argument("--threshold", default="auto")
    run.add_argument("--class", dest="class_strategy", default="max-persistence",
                     help='"max-persistence" or "index:k"')
    run.add_argument("--scale", dest="scale_policy", default="midpoint")
    run.add_argument("--snf-cap", type=int, default=DEFAULT_SNF_CAP)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--no-reduce", action="store_true",
                     help="skip the winding reduction step")
    run.add_argument("--out", type=Path, default=Path("."))

    lift = sub.add_parser("lift", help="lift one F_p (co)chain")
    lift.add_argument("--complex", required=True)
    lift.add_argument("--input", required=True, help="(co)chain JSON over F_p")
    lift.add_argument("--prime", type=int, required=True)
    lift.add_argument("--kind", choices=["cocycle", "cycle"], default="cocycle")
    lift.add_argument("--snf-cap", type=int, default=DEFAULT_SNF_CAP)
    lift.add_argument("--out", default=".")

    rw = sub.add_parser("reduce-winding", help="reduce an integer cocycle")
    rw.add_argument("--complex", required=True)
    rw.add_argument("--cocycle", required=True, help="integer cochain JSON")
    rw.add_argument("--cycle", required=True, help="integer chain JSON")
    rw.add_argument("--snf-cap", type=int, default=DEFAULT_SNF_CAP)
    rw.add_argument("--out", default=".")

    exp = sub.add_parser("experiment", help="run a statistical experiment")
    exp.add_argument("experiment", choices=["sparsity"])
    exp.add_argument("--n", type=int, default=6)
    exp.add_argument("--k", type=int, default=3)
    exp.add_argument("--pmin", type=int, default=3)
    exp.add_argument("--pmax", type=int, default=300)
    exp.add_argument("--samples", type=int, default=10_000)
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--out", default=".")

    coords = sub.add_parser("coords", help="smooth a cocycle and emit coordinates")
    coords.add_argument("--complex", required=True)
    coords.add_argument("--cocycle", required=True, help="integer cochain JSON")
    coords.add_argument("--base-vertex", type=int, default=None)
    coords.add_argument("--out", default=".")
    return parser


def _exit_code_for(err: Exception) -> int:
    if isinstance(err, TorsionObstruction):
        return EXIT_TORSION
    if isinstance(err, Unliftable):
        return EXIT_UNLIFTABLE
    if isinstance(err, ZeroPairing):
        return EXIT_ZERO_PAIRING
    return EXIT_ERROR


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            config = PipelineConfig(
                input=args.input, prime=args.prime, max_dim=args.max_dim,
                threshold=args.threshold, class_strategy=args.class_strategy,
                scale_policy=args.scale_policy, snf_cap=args.snf_cap,
                seed=args.seed, out=args.out, reduce=not args.no_reduce)
            return cmd_run(config)
        if args.command == "lift":
            return cmd_lift(args)
        if args.command == "reduce-winding":
            return cmd_reduce_winding(args)
        if args.command == "experiment":
            return cmd_experiment(args)
        if args.command == "coords":
            return cmd_coords(args)
        raise CircliftError(f"unknown command {args.command}")
    except (CircliftError, ValueError, OSError, KeyError) as err:
        operation = getattr(err, "operation", None) or type(err).__name__
        diagnostic = {
            "error": type(err).__name__,
            "operation": operation,
            "message": str(err),
        }
        print(json.dumps(diagnostic, sort_keys=True), file=sys.stderr)
        out = getattr(args, "out", None)
        if out is not None:
            try:
                out = Path(out)
                out.mkdir(parents=True, exist_ok=True)
                _write_json(out / "error.json", diagnostic)
            except OSError:
                pass
        return _exit_code_for(err)


if __name__ == "__main__":
    raise SystemExit(main())
