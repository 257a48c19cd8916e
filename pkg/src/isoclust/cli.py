"""isoclust command line.

Subcommands: measure, sweep, mp, transform, generate, cluster,
project.  CSV in and out (RFC 4180, header row); reports are UTF-8
JSON.  Outputs are byte-identical for identical inputs and equal
seeds; wall-clock timings, which vary, live in a report's "metadata"
block, the one part excluded from that guarantee.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .core import (
    ClusterAssignment,
    ClusterView,
    DataError,
    NumericError,
    PointCloud,
    size_weighted_mean,
    split_clusters,
)
from .kmeans import kmeans
from .randmat import MpParams, expected_fa, expected_var_lambda, mp_moments, mp_support
from .spectral import fractional_anisotropy, spectral_summary, var_lambda
from .synth import SHAPE_KINDS, anisotropic_gaussian, gaussian_cluster, shape_cluster
from .transforms import RbfMap, minmax_scale, pca_project, rbf_fit, rbf_transform
from .validation import (
    calinski_harabasz,
    cluster_size_variance,
    davies_bouldin,
    mean_dist_to_centroid,
    mean_pairwise_dist,
    silhouette,
)
from .zmeasure import isotropy_given_b, isotropy_rnd, isotropy_vec, random_unit_vectors

PER_CLUSTER_METRICS = (
    "var_lambda",
    "fa",
    "i_vec",
    "i_rnd",
    "mean_dist_to_centroid",
    "mean_pairwise_dist",
)
GLOBAL_ONLY_METRICS = (
    "silhouette",
    "davies_bouldin",
    "calinski_harabasz",
    "cluster_size_variance",
)
ALL_METRICS = PER_CLUSTER_METRICS + GLOBAL_ONLY_METRICS
# global companion name of each aggregated per-cluster metric
GLOBAL_COMPANION = {
    "var_lambda": "var_lambda_g",
    "fa": "fa_g",
    "i_vec": "i_g_vec",
    "i_rnd": "i_g_rnd",
}


# ---------------------------------------------------------------------------
# CSV I/O


def read_cloud_csv(path, label_column: str | None = None):
    """Read a CSV with a header row into (cloud, labels_or_None).

    All columns except the label column must be numeric; parse
    failures are reported with their row number.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"input file not found: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        label_idx = None
        if label_column is not None:
            if label_column not in header:
                raise DataError(f"{path}: no column named {label_column!r}")
            label_idx = header.index(label_column)
        feat_idx = [i for i in range(len(header)) if i != label_idx]
        if not feat_idx:
            raise DataError(f"{path}: no feature columns")
        rows, raw_labels = [], []
        for rownum, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(f"{path} row {rownum}: {len(row)} fields, header has {len(header)}")
            try:
                rows.append([float(row[i]) for i in feat_idx])
            except ValueError as exc:
                raise DataError(f"{path} row {rownum}: {exc}") from None
            if label_idx is not None:
                raw_labels.append(row[label_idx])
    if not rows:
        raise DataError(f"{path}: no data rows")
    cloud = PointCloud(rows, columns=[header[i] for i in feat_idx])
    if label_idx is None:
        return cloud, None, None
    mapping: dict[str, int] = {}
    labels = []
    for value in raw_labels:
        if value not in mapping:
            mapping[value] = len(mapping)
        labels.append(mapping[value])
    return cloud, ClusterAssignment(labels), mapping


def write_cloud_csv(path, cloud: PointCloud, labels=None, label_name: str = "label"):
    columns = cloud.columns or [f"x{i}" for i in range(cloud.n_dims)]
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(columns) + ([label_name] if labels is not None else []))
        for i, row in enumerate(cloud.data):
            out = [repr(float(x)) for x in row]
            if labels is not None:
                out.append(int(labels[i]))
            writer.writerow(out)


def _write_rows_csv(path, fieldnames, rows):
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})


def _write_json(path, doc):
    text = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# measure


def _measure_one_cluster(view, metrics, rnd_set, fa_normalized):
    values: dict[str, float] = {}
    times: dict[str, float] = {}
    for name in metrics:
        if name not in PER_CLUSTER_METRICS:
            continue
        t0 = time.perf_counter()
        if name == "var_lambda":
            values[name] = float(var_lambda(spectral_summary(view)))
        elif name == "fa":
            values[name] = fractional_anisotropy(spectral_summary(view), normalized=fa_normalized)
        elif name == "i_vec":
            values[name] = isotropy_vec(view)
        elif name == "i_rnd":
            values[name] = 1.0 if view.degenerate else isotropy_given_b(view, rnd_set)
        elif name == "mean_dist_to_centroid":
            values[name] = mean_dist_to_centroid(view)
        elif name == "mean_pairwise_dist":
            values[name] = mean_pairwise_dist(view)
        times[name] = time.perf_counter() - t0
    return values, times


def run_measure(
    cloud: PointCloud,
    assignment: ClusterAssignment,
    metrics=None,
    vectors: int = 1000,
    seed: int = 0,
    fa_normalized: bool = False,
    threads: int = 1,
):
    """Compute the selected metrics for one clustering.

    Returns a dict with per-cluster values, size-weighted global
    values, degenerate-cluster flags, skipped metrics and timings.
    Results are independent of the thread count.
    """
    explicit = metrics is not None
    selected = list(metrics) if explicit else list(ALL_METRICS)
    unknown = [m for m in selected if m not in ALL_METRICS]
    if unknown:
        raise DataError(f"unknown metrics: {', '.join(unknown)} (known: {', '.join(ALL_METRICS)})")
    views = split_clusters(cloud, assignment)
    sizes = [v.size for v in views]

    rnd_set = None
    if "i_rnd" in selected:
        rnd_set = random_unit_vectors(cloud.n_dims, vectors, seed)

    per_metrics = [m for m in selected if m in PER_CLUSTER_METRICS]
    if threads > 1 and len(views) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(lambda v: _measure_one_cluster(v, per_metrics, rnd_set, fa_normalized), views)
            )
    else:
        results = [_measure_one_cluster(v, per_metrics, rnd_set, fa_normalized) for v in views]

    per_cluster: dict[str, list[float]] = {"size": [float(s) for s in sizes]}
    timings: dict[str, float] = {}
    for name in per_metrics:
        per_cluster[name] = [res[0][name] for res in results]
        timings[name] = sum(res[1][name] for res in results)

    overall: dict[str, float] = {}
    skipped: dict[str, str] = {}
    for name in per_metrics:
        companion = GLOBAL_COMPANION.get(name)
        if companion:
            overall[companion] = size_weighted_mean(per_cluster[name], sizes)
    for name in (m for m in selected if m in GLOBAL_ONLY_METRICS):
        fn = {
            "silhouette": silhouette,
            "davies_bouldin": davies_bouldin,
            "calinski_harabasz": calinski_harabasz,
            "cluster_size_variance": cluster_size_variance,
        }[name]
        t0 = time.perf_counter()
        try:
            overall[name] = fn(views)
        except DataError as exc:
            if explicit:
                raise
            skipped[name] = str(exc)
        timings[name] = time.perf_counter() - t0

    return {
        "per_cluster": per_cluster,
        "global": overall,
        "degenerate_clusters": [v.cluster_id for v in views if v.degenerate],
        "skipped_metrics": skipped,
        "timings_s": timings,
    }


def cmd_measure(args) -> int:
    metrics = args.metrics.split(",") if args.metrics else None
    cloud, assignment, mapping = read_cloud_csv(args.input, args.label_column)
    report = {
        "version": __version__,
        "command": "measure",
        "params": {
            "input": str(args.input),
            "label_column": args.label_column,
            "kmeans": args.kmeans,
            "kmeans_multi": args.kmeans_multi,
            "metrics": metrics or list(ALL_METRICS),
            "vectors": args.vectors,
            "seed": args.seed,
            "fa_normalized": args.fa_normalized,
            "threads": args.threads,
        },
        "n_points": cloud.n_points,
        "n_dims": cloud.n_dims,
    }
    metadata: dict = {}

    def one_run(assignment_):
        section = run_measure(
            cloud,
            assignment_,
            metrics=metrics,
            vectors=args.vectors,
            seed=args.seed,
            fa_normalized=args.fa_normalized,
            threads=args.threads,
        )
        timings = section.pop("timings_s")
        return section, timings

    if args.kmeans_multi:
        ks = _parse_int_list(args.kmeans_multi, "--kmeans-multi")
        runs, sums = {}, {}
        for k in ks:
            result = kmeans(cloud, k, seed=args.seed)
            section, timings = one_run(result.assignment)
            section["kmeans"] = {
                "k": k,
                "inertia": result.inertia,
                "iterations": result.n_iter,
                "reseeded": result.reseeded,
            }
            runs[str(k)] = section
            metadata[f"timings_s.k={k}"] = timings
            for name, value in section["global"].items():
                sums.setdefault(name, []).append(value)
        report["multi"] = runs
        report["global_mean"] = {
            name: sum(vals) / len(vals) for name, vals in sums.items() if len(vals) == len(ks)
        }
    else:
        if args.kmeans:
            result = kmeans(cloud, args.kmeans, seed=args.seed)
            assignment = result.assignment
            report["kmeans"] = {
                "k": args.kmeans,
                "inertia": result.inertia,
                "iterations": result.n_iter,
                "reseeded": result.reseeded,
            }
        elif assignment is None:
            raise DataError("no labels: pass --label-column, --kmeans or --kmeans-multi")
        if mapping is not None:
            report["label_mapping"] = mapping
        section, timings = one_run(assignment)
        report.update(section)
        report["k"] = assignment.k
        metadata["timings_s"] = timings

    report["metadata"] = metadata
    _write_json(args.output, report)
    return 0


# ---------------------------------------------------------------------------
# sweep


def run_sweep(dims, points: int, repeats: int, counts, seed: int):
    """Mean isotropy and wall-clock per (dimension, method) over fresh
    Gaussian clusters.  Methods: eigenvector probing plus random
    probing at each requested direction count."""
    if repeats < 1:
        raise DataError(f"repeats must be >= 1, got {repeats}")
    master = np.random.default_rng(seed)
    data_seeds = master.integers(2**63, size=(len(dims), repeats))
    dir_seeds = master.integers(2**63, size=(len(dims), repeats))
    rows = []
    for i, dim in enumerate(dims):
        vec_vals, vec_times = [], []
        rnd_vals = {c: [] for c in counts}
        rnd_times = {c: [] for c in counts}
        for r in range(repeats):
            cloud = gaussian_cluster(dim, points, seed=int(data_seeds[i, r]))
            view = ClusterView(cloud, np.arange(points))
            t0 = time.perf_counter()
            vec_vals.append(isotropy_vec(view))
            vec_times.append(time.perf_counter() - t0)
            for count in counts:
                t0 = time.perf_counter()
                rnd_vals[count].append(isotropy_rnd(view, count=count, seed=int(dir_seeds[i, r])))
                rnd_times[count].append(time.perf_counter() - t0)
        # timing medians need >= 3 samples even when repeats < 3; extra
        # passes rerun the last cluster and feed timings only
        while len(vec_times) < 3:
            t0 = time.perf_counter()
            isotropy_vec(view)
            vec_times.append(time.perf_counter() - t0)
            for count in counts:
                t0 = time.perf_counter()
                isotropy_rnd(view, count=count, seed=int(dir_seeds[i, repeats - 1]))
                rnd_times[count].append(time.perf_counter() - t0)
        rows.append(
            {
                "dim": dim,
                "method": "vec",
                "vectors": None,
                "repeats": repeats,
                "mean_isotropy": sum(vec_vals) / repeats,
                "mean_seconds": sum(vec_times[:repeats]) / repeats,
                "median_seconds": statistics.median(vec_times),
            }
        )
        for count in counts:
            rows.append(
                {
                    "dim": dim,
                    "method": "rnd",
                    "vectors": count,
                    "repeats": repeats,
                    "mean_isotropy": sum(rnd_vals[count]) / repeats,
                    "mean_seconds": sum(rnd_times[count][:repeats]) / repeats,
                    "median_seconds": statistics.median(rnd_times[count]),
                }
            )
    return rows


def cmd_sweep(args) -> int:
    dims = _parse_int_list(args.dims, "--dims")
    counts = _parse_int_list(args.vectors, "--vectors")
    rows = run_sweep(dims, args.points, args.repeats, counts, args.seed)
    _write_rows_csv(
        args.output,
        ["dim", "method", "vectors", "repeats", "mean_isotropy", "mean_seconds", "median_seconds"],
        rows,
    )
    return 0


# ---------------------------------------------------------------------------
# mp


def run_mp_rows(points: int, dims, sigma2: float, mu: float, empirical: int, seed: int):
    """Spectral-law predictions per dimensionality, with optional
    empirical columns from sampled Gaussian clusters (mu = 0 only)."""
    rows = []
    master = np.random.default_rng(seed)
    for n in dims:
        params = MpParams(points=points, dims=n, sigma2=sigma2, mu=mu)
        lo, hi = mp_support(params)
        moments = mp_moments(params)
        row = {
            "dims": n,
            "points": points,
            "sigma2": sigma2,
            "mu": mu,
            "lambda_min": lo,
            "lambda_max": hi,
            "mass": moments.mass,
            "e_lambda": moments.e_lambda,
            "e_lambda2": moments.e_lambda2,
            "expected_fa": expected_fa(params),
            "expected_var_lambda": expected_var_lambda(params),
            "measured_fa_mean": None,
            "measured_var_lambda_mean": None,
        }
        if empirical > 0 and mu == 0.0:
            fas, variances = [], []
            for _ in range(empirical):
                cloud = gaussian_cluster(n, points, std=float(np.sqrt(sigma2)), seed=int(master.integers(2**63)))
                summary = spectral_summary(ClusterView(cloud, np.arange(points)))
                fas.append(fractional_anisotropy(summary))
                variances.append(float(var_lambda(summary)))
            row["measured_fa_mean"] = sum(fas) / empirical
            row["measured_var_lambda_mean"] = sum(variances) / empirical
        rows.append(row)
    return rows


def cmd_mp(args) -> int:
    dims = _parse_int_list(args.dims, "--dims")
    rows = run_mp_rows(args.points, dims, args.sigma2, args.mu, args.empirical, args.seed)
    _write_rows_csv(
        args.output,
        [
            "dims", "points", "sigma2", "mu", "lambda_min", "lambda_max", "mass",
            "e_lambda", "e_lambda2", "expected_fa", "expected_var_lambda",
            "measured_fa_mean", "measured_var_lambda_mean",
        ],
        rows,
    )
    return 0


# ---------------------------------------------------------------------------
# transform / generate / cluster / project


def cmd_transform(args) -> int:
    cloud, _, _ = read_cloud_csv(args.input)
    if args.minmax is not None:
        lo, hi = _parse_float_pair(args.minmax, "--minmax")
        cloud, _ = minmax_scale(cloud, lo, hi)
    if args.rbf_map:
        rbf = RbfMap.from_json(Path(args.rbf_map).read_text(encoding="utf-8"))
        cloud = rbf_transform(rbf, cloud)
    elif args.components:
        gamma = args.gamma if args.gamma is not None else 1.0 / cloud.n_dims
        rbf = rbf_fit(cloud.n_dims, args.components, gamma, args.seed)
        cloud = rbf_transform(rbf, cloud)
        Path(str(args.output) + ".rbf.json").write_text(rbf.to_json() + "\n", encoding="utf-8")
    elif args.gamma is not None:
        raise DataError("--gamma requires --components")
    if args.minmax is None and not args.rbf_map and not args.components:
        raise DataError("nothing to do: pass --minmax and/or --components/--rbf-map")
    write_cloud_csv(args.output, cloud)
    return 0


def cmd_generate(args) -> int:
    if args.kind in SHAPE_KINDS:
        if args.dims not in (None, "2"):
            raise DataError(f"{args.kind} clusters are 2-D; omit --dims")
        cloud = shape_cluster(args.kind, args.points, noise=args.noise, seed=args.seed)
    elif args.kind == "gaussian":
        dims = int(args.dims) if args.dims else 2
        cloud = gaussian_cluster(dims, args.points, mean=args.mean, std=args.std, seed=args.seed)
    elif args.kind == "anisotropic":
        if not args.stds:
            raise DataError("anisotropic clusters need --stds (comma-separated, one per axis)")
        stds = _parse_float_list(args.stds, "--stds")
        cloud = anisotropic_gaussian(len(stds), args.points, stds, seed=args.seed)
    else:  # pragma: no cover - argparse choices guard this
        raise DataError(f"unknown kind {args.kind!r}")
    write_cloud_csv(args.output, cloud)
    return 0


def cmd_cluster(args) -> int:
    cloud, _, _ = read_cloud_csv(args.input)
    result = kmeans(cloud, args.kmeans, seed=args.seed)
    write_cloud_csv(args.output, cloud, labels=result.assignment.labels)
    sidecar = args.centroids or (str(args.output) + ".centroids.json")
    _write_json(
        sidecar,
        {
            "k": args.kmeans,
            "seed": args.seed,
            "inertia": result.inertia,
            "iterations": result.n_iter,
            "reseeded": result.reseeded,
            "centroids": [[float(x) for x in row] for row in result.centroids],
        },
    )
    return 0


def cmd_project(args) -> int:
    cloud, _, _ = read_cloud_csv(args.input)
    projected = pca_project(cloud, args.dims)
    write_cloud_csv(args.output, projected)
    return 0


# ---------------------------------------------------------------------------
# parsing helpers and entry point


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise DataError(f"{flag} expects comma-separated integers, got {text!r}") from None
    if not values:
        raise DataError(f"{flag} got an empty list")
    return values


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise DataError(f"{flag} expects comma-separated numbers, got {text!r}") from None
    if not values:
        raise DataError(f"{flag} got an empty list")
    return values


def _parse_float_pair(text: str, flag: str) -> tuple[float, float]:
    parts = text.replace(":", ",").split(",")
    if len(parts) != 2:
        raise DataError(f"{flag} expects LO:HI, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise DataError(f"{flag} expects numbers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoclust",
        description="Isotropy measures for point clusters.",
    )
    parser.add_argument("--version", action="version", version=f"isoclust {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("measure", help="compute cluster metrics from a CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="JSON report path")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--label-column", help="CSV column holding cluster labels")
    group.add_argument("--kmeans", type=int, metavar="K", help="cluster with k-means (typical K: 5 or 10)")
    group.add_argument(
        "--kmeans-multi",
        nargs="?",
        const="5,10",
        metavar="K1,K2",
        help="run k-means at several K (default 5,10) and average global metrics",
    )
    p.add_argument("--metrics", help=f"comma list from: {','.join(ALL_METRICS)} (default: all)")
    p.add_argument("--vectors", type=int, default=1000, help="random directions for i_rnd")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fa-normalized", action="store_true", help="scale FA so a one-hot spectrum is 1")
    p.add_argument("--threads", type=int, default=1, help="cap on per-cluster worker threads")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", help="isotropy and timing across dimensionalities")
    p.add_argument("--dims", required=True, help="comma list of dimensionalities")
    p.add_argument("--points", type=int, default=100, help="points per sampled cluster")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--vectors", default="10,100,1000,10000", help="comma list of direction counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True, help="CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mp", help="spectral-law predictions vs sampled clusters")
    p.add_argument("--points", type=int, required=True, help="points per cluster (T)")
    p.add_argument("--dims", required=True, help="comma list of dimensionalities")
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--empirical", type=int, default=10, help="sampled clusters per row (0 to skip)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True, help="CSV path")
    p.set_defaults(func=cmd_mp)

    p = sub.add_parser("transform", help="min-max scale and/or map through random Fourier features")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--minmax", nargs="?", const="-1:1", metavar="LO:HI", help="scale columns to [LO, HI]")
    p.add_argument("--components", type=int, metavar="L", help="RBF feature count")
    p.add_argument("--gamma", type=float, help="RBF kernel width (default 1/n_dims)")
    p.add_argument("--rbf-map", metavar="FILE", help="reuse a saved RBF map instead of fitting")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("generate", help="write a synthetic cluster CSV")
    p.add_argument("--kind", required=True, choices=("gaussian", "anisotropic") + SHAPE_KINDS)
    p.add_argument("--dims", help="dimensionality (gaussian only; shapes are 2-D)")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--mean", type=float, default=0.0)
    p.add_argument("--std", type=float, default=1.0)
    p.add_argument("--stds", help="comma list, one std per axis (anisotropic)")
    p.add_argument("--noise", type=float, default=0.0, help="additive Gaussian noise (shapes)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cluster", help="k-means a CSV and append a label column")
    p.add_argument("--input", required=True)
    p.add_argument("--kmeans", type=int, required=True, metavar="K", help="cluster count (typical: 5 or 10)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.add_argument("--centroids", help="centroid JSON sidecar (default: OUTPUT.centroids.json)")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("project", help="PCA-project a CSV to 2 or 3 dims for plotting")
    p.add_argument("--input", required=True)
    p.add_argument("--dims", type=int, choices=(2, 3), default=2)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_project)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except DataError as exc:
        print(f"isoclust: data error: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"isoclust: numeric error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"isoclust: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
