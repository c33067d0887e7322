"""Command-line pipeline: graph features, diagrams, vectors, diagram distances, stability audit.

Exit codes: 0 success, 1 bad configuration, 2 unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .distances import pairwise_distance_matrix
from .errors import FormatError, InputError, ValidationError
from .features import CSV_HEADER, compute_features
from .graph import Graph, GraphDataset, delete_edges_random, parse_tu_dataset
from .metric import normalize, resistance_distance_matrix, shortest_path_matrix
from .persistence import PersistenceDiagram, diagrams
from .rips import build_flag_filtration, threshold_grid
from .stability import stability_audit
from .vectorize import KINDS, clamp, vectorize

THREADS_ENV = "GRAPH_PH_THREADS"
FLOAT_FMT = ".9g"
MAX_PROTOCOL_FRACTION = 0.45
SWEEP = [i / 100 for i in range(0, 50, 5)]
# below this many graphs a process pool costs more than it saves
MIN_PARALLEL = 64


@dataclass(frozen=True)
class PipelineConfig:
    dataset_dir: str = "."
    dataset: str = ""
    metric: str = "spd"
    steps: int = 100
    max_threshold: float = 1.0
    vectorizer: Optional[str] = None
    landscape_k: int = 1
    silhouette_power: float = 1.0
    dims: tuple[int, ...] = (0, 1)
    seed: int = 0
    delete_fraction: float = 0.0
    output: Optional[str] = None
    format: str = "csv"
    normalize: bool = True
    layout: str = "wide"
    allow_large_fraction: bool = False

    def validate(self) -> None:
        if self.steps < 2:
            raise ValidationError(f"--steps must be >= 2, got {self.steps}")
        if not 0 < self.max_threshold <= 1:
            raise ValidationError(f"--max-threshold must lie in (0, 1], got {self.max_threshold}")
        if self.metric not in ("spd", "resistance"):
            raise ValidationError(f"--metric must be spd or resistance, got {self.metric!r}")
        if self.vectorizer is not None and self.vectorizer not in KINDS:
            raise ValidationError(f"--vectorizer must be one of {KINDS}")
        if not self.dims or any(d not in (0, 1) for d in self.dims) or len(set(self.dims)) != len(self.dims):
            raise ValidationError(f"--dims must be a subset of {{0, 1}}, got {self.dims}")
        if self.landscape_k < 1:
            raise ValidationError("--landscape-k must be >= 1")
        if self.silhouette_power < 0:
            raise ValidationError("--silhouette-power must be >= 0")
        hi = 1.0 if self.allow_large_fraction else MAX_PROTOCOL_FRACTION
        if not 0 <= self.delete_fraction <= hi:
            raise ValidationError(
                f"--delete-fraction must lie in [0, {hi}]"
                + ("" if self.allow_large_fraction else " (use --allow-large-fraction to go higher)")
            )
        if self.format not in ("csv", "json"):
            raise ValidationError("--format must be csv or json")
        if self.layout not in ("wide", "long"):
            raise ValidationError("--layout must be wide or long")


# --------------------------------------------------------------------------
# per-graph work (module level so it pickles into worker processes)


def graph_diagrams(g: Graph, cfg: PipelineConfig) -> tuple[dict[int, PersistenceDiagram], np.ndarray]:
    """Diagrams of ``g`` for ``cfg.dims`` and the scale grid they are sampled on."""
    dm = shortest_path_matrix(g) if cfg.metric == "spd" else resistance_distance_matrix(g)
    if cfg.normalize:
        dm = normalize(dm)
    cap = cfg.max_threshold * (dm.max_finite or 1.0)
    f = build_flag_filtration(dm, max_dim=2 if 1 in cfg.dims else 1, threshold=cap)
    return diagrams(f, cfg.dims), threshold_grid(cfg.steps) * cap


def graph_vectors(g: Graph, cfg: PipelineConfig) -> dict[int, np.ndarray]:
    dgms, grid = graph_diagrams(g, cfg)
    return {
        dim: vectorize(pd, cfg.vectorizer, grid, cfg.landscape_k, cfg.silhouette_power).values
        for dim, pd in dgms.items()
    }


def graph_feature_row(g: Graph) -> list:
    return compute_features(g).as_list()


def worker_count() -> int:
    n = os.cpu_count() or 1
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = min(n, max(1, int(env)))
        except ValueError:
            raise ValidationError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
    return n


def ordered_map(fn: Callable, items: Sequence) -> list:
    """``map`` over items, in a process pool when worthwhile; results keep input order."""
    workers = worker_count()
    if workers <= 1 or len(items) < MIN_PARALLEL:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


# --------------------------------------------------------------------------
# output


def fmt(x) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf"
    return format(x, FLOAT_FMT)


def _open_out(path: Optional[str]):
    if path is None:
        return _NoClose(sys.stdout)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", newline="")


class _NoClose(io.TextIOBase):
    def __init__(self, stream):
        self.stream = stream

    def write(self, s):
        return self.stream.write(s)

    def __exit__(self, *exc):
        self.stream.flush()
        return False


def write_features(ds: GraphDataset, cfg: PipelineConfig, path: Optional[str]) -> None:
    if cfg.vectorizer is None:
        rows = ordered_map(graph_feature_row, ds.graphs)
        if cfg.format == "json":
            payload = {
                "dataset": ds.name,
                "columns": CSV_HEADER[2:],
                "graphs": [
                    {"graph_id": i, "label": g.label, "features": row}
                    for i, (g, row) in enumerate(zip(ds.graphs, rows))
                ],
            }
            with _open_out(path) as fh:
                fh.write(json.dumps(payload, indent=1) + "\n")
            return
        with _open_out(path) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for i, (g, row) in enumerate(zip(ds.graphs, rows)):
                w.writerow([i, g.label] + [fmt(x) for x in row])
        return

    vecs = ordered_map(partial(graph_vectors, cfg=cfg), ds.graphs)
    kind = cfg.vectorizer
    if cfg.format == "json":
        payload = {
            "dataset": ds.name,
            "kind": kind,
            "dims": list(cfg.dims),
            "params": {"landscape_k": cfg.landscape_k, "silhouette_power": cfg.silhouette_power},
            "grid": (threshold_grid(cfg.steps) * cfg.max_threshold).tolist() if cfg.normalize else None,
            "graphs": [
                {"graph_id": i, "label": g.label, "vectors": {f"h{d}": v[d].tolist() for d in cfg.dims}}
                for i, (g, v) in enumerate(zip(ds.graphs, vecs))
            ],
        }
        with _open_out(path) as fh:
            fh.write(json.dumps(payload, indent=1) + "\n")
        return
    with _open_out(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        if cfg.layout == "wide":
            w.writerow(
                ["graph_id", "label"]
                + [f"{kind}_h{d}_{i}" for d in cfg.dims for i in range(1, cfg.steps + 1)]
            )
            for i, (g, v) in enumerate(zip(ds.graphs, vecs)):
                w.writerow([i, g.label] + [fmt(x) for d in cfg.dims for x in v[d]])
        else:
            w.writerow(["graph_id", "label", "kind", "dim"] + [f"v_{i}" for i in range(1, cfg.steps + 1)])
            for i, (g, v) in enumerate(zip(ds.graphs, vecs)):
                for d in cfg.dims:
                    w.writerow([i, g.label, kind, d] + [fmt(x) for x in v[d]])


def _diagrams_only(g: Graph, cfg: PipelineConfig) -> dict[int, PersistenceDiagram]:
    return graph_diagrams(g, cfg)[0]


def write_diagrams(ds: GraphDataset, cfg: PipelineConfig, path: Optional[str]) -> None:
    all_dgms = ordered_map(partial(_diagrams_only, cfg=cfg), ds.graphs)
    with _open_out(path) as fh:
        if cfg.format == "json":
            payload = {
                "dataset": ds.name,
                "graphs": [
                    {
                        "graph_id": i,
                        "label": g.label,
                        "diagrams": [r for d in cfg.dims for r in dg[d].to_records()],
                    }
                    for i, (g, dg) in enumerate(zip(ds.graphs, all_dgms))
                ],
            }
            fh.write(json.dumps(payload, indent=1) + "\n")
            return
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["graph_id", "dim", "birth", "death"])
        for i, dg in enumerate(all_dgms):
            for d in cfg.dims:
                for b, dd in dg[d].points:
                    w.writerow([i, d, fmt(b), fmt(dd)])


# --------------------------------------------------------------------------
# commands


def load_dataset(cfg: PipelineConfig) -> GraphDataset:
    if not cfg.dataset:
        raise ValidationError("--dataset is required")
    return parse_tu_dataset(cfg.dataset_dir, cfg.dataset)


def perturbed(ds: GraphDataset, fraction: float, seed: int) -> GraphDataset:
    """Delete ``fraction`` of the edges of every graph; graph ``i`` uses seed ``(seed, i)``."""
    graphs = tuple(delete_edges_random(g, fraction, [seed, i]) for i, g in enumerate(ds.graphs))
    return GraphDataset(ds.name, graphs, ds.class_count)


def cmd_featurize(cfg: PipelineConfig) -> int:
    cfg.validate()
    write_features(load_dataset(cfg), cfg, cfg.output)
    return 0


def cmd_perturb(cfg: PipelineConfig, sweep: bool = False) -> int:
    cfg.validate()
    ds = load_dataset(cfg)
    if not sweep:
        write_features(perturbed(ds, cfg.delete_fraction, cfg.seed), cfg, cfg.output)
        return 0
    if cfg.output is None:
        raise ValidationError("--sweep needs --output DIR")
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    for frac in SWEEP:
        name = f"{ds.name}_del{round(frac * 100):02d}.{cfg.format}"
        write_features(perturbed(ds, frac, cfg.seed), cfg, str(out / name))
    return 0


def cmd_pd(cfg: PipelineConfig) -> int:
    cfg.validate()
    write_diagrams(load_dataset(cfg), cfg, cfg.output)
    return 0


def cmd_distance(cfg: PipelineConfig, q: float = 1.0, use_bottleneck: bool = False) -> int:
    cfg.validate()
    if len(cfg.dims) != 1:
        raise ValidationError("distance compares diagrams of one dimension; pass a single --dims value")
    if not use_bottleneck and not q >= 1:
        raise ValidationError(f"--q must be >= 1, got {q}")
    ds = load_dataset(cfg)
    dim = cfg.dims[0]
    dgms = [clamp(dg[dim]) for dg in ordered_map(partial(_diagrams_only, cfg=cfg), ds.graphs)]
    metric = "bottleneck" if use_bottleneck else q
    mat = pairwise_distance_matrix(dgms, metric)
    with _open_out(cfg.output) as fh:
        if cfg.format == "json":
            fh.write(json.dumps({"ids": list(range(len(dgms))), "metric": str(metric), "dim": dim,
                                 "matrix": mat.tolist()}) + "\n")
            return 0
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["graph_id"] + list(range(len(dgms))))
        for i, row in enumerate(mat):
            w.writerow([i] + [fmt(x) for x in row])
    return 0


def cmd_stability(trials: int, max_points: int, seed: int, witness: bool = False, output: Optional[str] = None) -> int:
    if trials < 1:
        raise ValidationError(f"--trials must be >= 1, got {trials}")
    if max_points < 0:
        raise ValidationError("--max-points must be >= 0")
    report = stability_audit(trials, max_points, seed)
    with _open_out(output) as fh:
        fh.write(report.to_json(witness=witness) + "\n")
    return 0 if report.holds else 1


# --------------------------------------------------------------------------
# argument parsing


def _dims(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dims expects comma-separated integers, got {s!r}") from None


def _bool(s) -> bool:
    if isinstance(s, bool):
        return s
    if s.lower() in ("1", "true", "yes", "on"):
        return True
    if s.lower() in ("0", "false", "no", "off"):
        return False
    raise ValidationError(f"not a boolean: {s!r}")


def read_config_file(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; keys may use dashes or underscores."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected key=value")
        key, value = (p.strip() for p in line.split("=", 1))
        out[key.replace("-", "_")] = value.strip("\"'")
    return out


def _pipeline_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; flags given on the command line win")
    p.add_argument("--dataset-dir", default=".")
    p.add_argument("--dataset")
    p.add_argument("--metric", default="spd", help="spd or resistance")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--max-threshold", type=float, default=1.0)
    p.add_argument("--vectorizer", default=None, help="betti, landscape or silhouette; omit for graph features")
    p.add_argument("--landscape-k", type=int, default=1)
    p.add_argument("--silhouette-power", type=float, default=1.0)
    p.add_argument("--dims", type=_dims, default=(0, 1))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.add_argument("--format", default="csv", help="csv or json")
    p.add_argument("--layout", default="wide", help="wide: one row per graph; long: one row per graph and dim")
    p.add_argument("--no-normalize", action="store_true", help="skip scaling distances to [0, 1]")


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors (exit 1), not argparse's exit 2."""

    def error(self, message):
        raise ValidationError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("featurize", help="graph features or topological vectors per graph")
    _pipeline_args(p)

    p = sub.add_parser("perturb", help="featurize after deleting a random fraction of edges")
    _pipeline_args(p)
    p.add_argument("--delete-fraction", type=float, default=0.0)
    p.add_argument("--allow-large-fraction", action="store_true")
    p.add_argument("--sweep", action="store_true", help="write one file per fraction 0, 0.05, ..., 0.45 into --output")

    p = sub.add_parser("pd", help="persistence diagrams of every graph")
    _pipeline_args(p)

    p = sub.add_parser("distance", help="pairwise diagram distance matrix")
    _pipeline_args(p)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--bottleneck", action="store_true")

    p = sub.add_parser("stability", help="randomized audit of the Betti L1 stability bound")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--max-points", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--witness", action="store_true", help="include the worst-ratio diagram pair")
    p.add_argument("--output", "-o")
    return parser


def _parse(argv: Optional[Sequence[str]]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        conf = read_config_file(args.config)
        sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(conf) - known
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        flags = {a.dest for a in sub._actions if a.const is True}
        sub.set_defaults(**{k: _bool(v) if k in flags else v for k, v in conf.items()})
        args = parser.parse_args(argv)
    return args


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig(
        dataset_dir=args.dataset_dir,
        dataset=args.dataset or "",
        metric=args.metric,
        steps=args.steps,
        max_threshold=args.max_threshold,
        vectorizer=args.vectorizer,
        landscape_k=args.landscape_k,
        silhouette_power=args.silhouette_power,
        dims=tuple(args.dims),
        seed=args.seed,
        delete_fraction=getattr(args, "delete_fraction", 0.0),
        output=args.output,
        format=args.format,
        normalize=not args.no_normalize,
        layout=args.layout,
        allow_large_fraction=getattr(args, "allow_large_fraction", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _parse(argv)
        if args.command == "stability":
            return cmd_stability(args.trials, args.max_points, args.seed, args.witness, args.output)
        cfg = config_from_args(args)
        if args.command == "featurize":
            return cmd_featurize(cfg)
        if args.command == "perturb":
            return cmd_perturb(cfg, sweep=args.sweep)
        if args.command == "pd":
            return cmd_pd(cfg)
        if args.command == "distance":
            return cmd_distance(cfg, q=args.q, use_bottleneck=args.bottleneck)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, FormatError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    return 1


if __name__ == "__main__":
    sys.exit(main())
