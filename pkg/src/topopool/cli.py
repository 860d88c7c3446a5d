"""Command-line entry points.

Five subcommands: ``stats`` summarizes a dataset, ``ph`` computes one
persistence diagram, ``train`` fits the classifier, ``ablate`` reruns it
with single branches disabled, and ``bench`` compares witness against
Vietoris-Rips timing. Every run that writes results also writes a
``manifest.json`` recording the command, the config snapshot, the seeds,
SHA-256 hashes of the inputs, the output files, and wall-clock timings.

Exit codes: 0 on success, 2 for configuration problems, 3 for missing or
malformed data.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from .complexes import LANDMARK_STRATEGIES, select_landmarks, vr_filtration, witness_filtration
from .datasets import (
    DatasetBundle,
    DatasetError,
    degree_onehot_features,
    load_tudataset,
    synthetic_cycles_vs_cliques,
)
from .graphs import AttributedGraph, GraphError, shortest_paths
from .model import (
    ConfigError,
    ModelConfig,
    PRESETS,
    StratificationError,
    ablation_results,
    benchmark,
    evaluate_seeds,
    load_config,
    preset,
    save_model,
    train,
)
from .persistence import reduce_boundary

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _hash_inputs(paths) -> dict:
    out = {}
    for p in paths:
        p = Path(p)
        if p.is_file():
            out[str(p)] = _sha256(p)
    return out


def _write_manifest(out_dir: Path, command: str, config: dict | None, seeds,
                    input_paths, outputs, wall_seconds: float, extra_timings=None) -> Path:
    manifest = {
        "command": command,
        "argv": sys.argv[1:],
        "config": config,
        "seeds": list(seeds),
        "input_hashes": _hash_inputs(input_paths),
        "outputs": sorted(outputs),
        "timings": {"wall_seconds": wall_seconds, **(extra_timings or {})},
        "created_unix": time.time(),
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


def _dataset_input_paths(data_dir, name) -> list:
    if not data_dir:
        return []
    base = Path(data_dir)
    for candidate in (base, base / name, base / name / name, base / name / "raw"):
        if (candidate / f"{name}_A.txt").is_file():
            base = candidate
            break
    suffixes = ("_A.txt", "_graph_indicator.txt", "_graph_labels.txt",
                "_node_labels.txt", "_node_attributes.txt")
    return [base / f"{name}{s}" for s in suffixes]


def _resolve_bundle(name: str, data_dir) -> DatasetBundle:
    if name == "synthetic":
        return synthetic_cycles_vs_cliques()
    if not data_dir:
        raise DatasetError(f"dataset {name!r} needs --data-dir")
    return load_tudataset(data_dir, name)


def _resolve_config(args) -> ModelConfig:
    if getattr(args, "config", None):
        cfg = load_config(args.config)
    else:
        cfg = preset(args.dataset or "synthetic")
    if getattr(args, "dataset", None):
        cfg = cfg.replace(dataset=args.dataset)
    if getattr(args, "seed", None) is not None:
        cfg = cfg.replace(seed=args.seed)
    return cfg


def _parse_seeds(text: str) -> list[int]:
    try:
        return [int(p) for p in text.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"cannot parse seed list {text!r}") from None


_BUILDERS = {
    "cycle": lambda n: [(v, (v + 1) % n) for v in range(n)],
    "path": lambda n: [(v, v + 1) for v in range(n - 1)],
    "complete": lambda n: [(u, v) for u in range(n) for v in range(u + 1, n)],
    "star": lambda n: [(0, v) for v in range(1, n)],
}


def _builtin_graph(selector: str) -> AttributedGraph:
    try:
        kind, raw = selector.split(":")
        n = int(raw)
    except ValueError:
        raise ConfigError(f"graph selector must look like cycle:8, got {selector!r}") from None
    if kind not in _BUILDERS:
        raise ConfigError(f"unknown graph kind {kind!r}; choose from {sorted(_BUILDERS)}")
    if n < 1 or (kind == "cycle" and n < 3):
        raise ConfigError(f"{kind} graphs need at least {3 if kind == 'cycle' else 1} nodes")
    edges = _BUILDERS[kind](n)
    features = degree_onehot_features([edges], [n])[0]
    return AttributedGraph(n, edges, features)


# ---------------- subcommands ----------------


def cmd_stats(args) -> int:
    started = time.perf_counter()
    bundle = _resolve_bundle(args.dataset, args.data_dir)
    stats = bundle.compute_stats()
    print(f"dataset: {bundle.name}")
    print(f"graphs: {stats.graph_count}")
    print(f"avg nodes: {stats.avg_nodes:.4f}")
    print(f"avg edges: {stats.avg_edges:.4f}")
    print(f"classes: {stats.num_classes}")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        payload = {
            "dataset": bundle.name,
            "graph_count": stats.graph_count,
            "avg_nodes": stats.avg_nodes,
            "avg_edges": stats.avg_edges,
            "num_classes": stats.num_classes,
        }
        (out_dir / "stats.json").write_text(json.dumps(payload, indent=2) + "\n")
        _write_manifest(
            out_dir, "stats", None, [],
            _dataset_input_paths(args.data_dir, args.dataset),
            ["stats.json"], time.perf_counter() - started,
        )
    return EXIT_OK


def cmd_ph(args) -> int:
    started = time.perf_counter()
    if args.graph:
        graph = _builtin_graph(args.graph)
        source = args.graph
    else:
        if not args.dataset:
            raise ConfigError("ph needs --graph or --dataset/--index")
        bundle = _resolve_bundle(args.dataset, args.data_dir)
        if not 0 <= args.index < len(bundle):
            raise DatasetError(f"graph index {args.index} outside 0..{len(bundle) - 1}")
        graph = bundle[args.index]
        source = f"{args.dataset}[{args.index}]"

    if args.mode == "vr":
        filtration = vr_filtration(shortest_paths(graph))
        landmark_note = ""
    else:
        landmarks = select_landmarks(graph, args.landmarks, args.psi, seed=args.seed)
        filtration = witness_filtration(graph, landmarks)
        landmark_note = f" landmarks={list(landmarks.indices)}"
    diagram = reduce_boundary(filtration)

    print(f"graph: {source} ({graph.node_count} nodes, {graph.edge_count} edges)")
    print(f"mode: {args.mode}{landmark_note}")
    for dim in (0, 1):
        print(f"H{dim}: {diagram.count(dim)} points")
    sys.stdout.write(diagram.to_csv())
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "diagram.csv").write_text(diagram.to_csv())
        _write_manifest(
            out_dir, "ph", {"mode": args.mode, "psi": args.psi, "landmarks": args.landmarks},
            [args.seed], _dataset_input_paths(args.data_dir, args.dataset or ""),
            ["diagram.csv"], time.perf_counter() - started,
        )
    return EXIT_OK


def cmd_train(args) -> int:
    started = time.perf_counter()
    cfg = _resolve_config(args)
    bundle = _resolve_bundle(cfg.dataset, args.data_dir)
    seeds = _parse_seeds(args.seeds) if args.seeds else [cfg.seed]
    if not seeds:
        raise ConfigError("seed list is empty")

    timing: dict = {}
    if len(seeds) == 1:
        cfg = cfg.replace(seed=seeds[0])
        model, metrics = train(bundle, cfg, timing=timing)
        for epoch, (loss, acc) in enumerate(
            zip(metrics["train_loss"], metrics["test_accuracy_per_epoch"]), start=1
        ):
            print(f"epoch {epoch:3d}  loss {loss:.6f}  test_acc {acc:.4f}")
        print(f"final test accuracy: {metrics['test_accuracy']:.4f}")
        per_seed = [metrics]
    else:
        model = None
        summary = evaluate_seeds(bundle, cfg, seeds)
        per_seed = summary["runs"]
        metrics = summary
        for seed, run in zip(seeds, per_seed):
            print(f"seed {seed:4d}  test_acc {run['test_accuracy']:.4f}")
        print(f"mean test accuracy: {summary['mean_accuracy']:.4f} "
              f"+/- {summary['std_accuracy']:.4f}")

    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "metrics.json").write_text(json.dumps(metrics, indent=2) + "\n")
        outputs = ["metrics.json", "summary.csv"]
        if model is not None:
            save_model(model, out_dir / "checkpoint.json")
            outputs.append("checkpoint.json")
        rows = ["dataset,seed,epochs,train_size,test_size,test_accuracy\n"]
        for run in per_seed:
            rows.append(
                f"{cfg.dataset},{run['seed']},{cfg.epochs},{run['train_size']},"
                f"{run['test_size']},{run['test_accuracy']!r}\n"
            )
        (out_dir / "summary.csv").write_text("".join(rows))
        inputs = _dataset_input_paths(args.data_dir, cfg.dataset)
        if args.config:
            inputs.append(Path(args.config))
        extra = {}
        if timing:
            extra = {"precompute_seconds": timing["precompute_seconds"],
                     "epoch_seconds_mean": timing["epoch_seconds_mean"]}
        _write_manifest(
            out_dir, "train", cfg.to_dict(), seeds, inputs, outputs,
            time.perf_counter() - started, extra,
        )
    return EXIT_OK


def cmd_ablate(args) -> int:
    started = time.perf_counter()
    cfg = _resolve_config(args)
    seeds = _parse_seeds(args.seeds)
    bundle = _resolve_bundle(cfg.dataset, args.data_dir)
    rows = ablation_results(bundle, cfg, seeds)
    print(f"{'variant':14s} {'mean_acc':>9s} {'std':>7s}")
    for row in rows:
        print(f"{row['variant']:14s} {row['mean_accuracy']:9.4f} {row['std_accuracy']:7.4f}")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "ablation.json").write_text(json.dumps(rows, indent=2) + "\n")
        inputs = _dataset_input_paths(args.data_dir, cfg.dataset)
        if args.config:
            inputs.append(Path(args.config))
        _write_manifest(
            out_dir, "ablate", cfg.to_dict(), seeds, inputs,
            ["ablation.json"], time.perf_counter() - started,
        )
    return EXIT_OK


def cmd_bench(args) -> int:
    started = time.perf_counter()
    cfg = _resolve_config(args)
    bundle = _resolve_bundle(cfg.dataset, args.data_dir)
    report = benchmark(bundle, cfg, epochs=args.epochs)
    for mode in ("witness", "vr"):
        r = report[mode]
        print(
            f"{mode:8s} ph_total {r['ph_seconds_total']:.4f}s"
            f"  ph_mean {r['ph_seconds_mean']:.6f}s"
            f"  epoch {r['train_seconds_per_epoch']:.4f}s"
        )
    faster = "witness" if report["witness"]["ph_seconds_total"] < report["vr"]["ph_seconds_total"] else "vr"
    print(f"faster diagram mode: {faster}")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "bench.json").write_text(json.dumps(report, indent=2) + "\n")
        inputs = _dataset_input_paths(args.data_dir, cfg.dataset)
        if args.config:
            inputs.append(Path(args.config))
        _write_manifest(
            out_dir, "bench", cfg.to_dict(), [cfg.seed], inputs,
            ["bench.json"], time.perf_counter() - started,
        )
    return EXIT_OK


# ---------------- parser ----------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topopool",
        description="Topological graph pooling: diagrams, training, ablations, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_config=True):
        p.add_argument("--data-dir", default="", help="directory holding benchmark text files")
        p.add_argument("--dataset", default="", help=f"dataset name or {sorted(PRESETS)}")
        p.add_argument("--out", default="", help="directory for result files")
        if with_config:
            p.add_argument("--config", default="", help="JSON config file")
            p.add_argument("--seed", type=int, default=None, help="override the config seed")

    p_stats = sub.add_parser("stats", help="dataset summary statistics")
    add_common(p_stats, with_config=False)
    p_stats.set_defaults(handler=cmd_stats)

    p_ph = sub.add_parser("ph", help="persistence diagram of one graph")
    add_common(p_ph, with_config=False)
    p_ph.add_argument("--graph", default="", help="built-in graph, e.g. cycle:8 or complete:6")
    p_ph.add_argument("--index", type=int, default=0, help="graph index within the dataset")
    p_ph.add_argument("--mode", choices=("vr", "witness"), default="vr")
    p_ph.add_argument("--psi", type=float, default=0.3, help="landmark fraction")
    p_ph.add_argument("--landmarks", choices=LANDMARK_STRATEGIES, default="degree")
    p_ph.add_argument("--seed", type=int, default=0)
    p_ph.set_defaults(handler=cmd_ph)

    p_train = sub.add_parser("train", help="train the classifier")
    add_common(p_train)
    p_train.add_argument("--seeds", default="", help="comma-separated seed list; overrides --seed")
    p_train.set_defaults(handler=cmd_train)

    p_ablate = sub.add_parser("ablate", help="branch and attention ablations")
    add_common(p_ablate)
    p_ablate.add_argument("--seeds", default="0,1,2", help="comma-separated seed list")
    p_ablate.set_defaults(handler=cmd_ablate)

    p_bench = sub.add_parser("bench", help="witness vs Vietoris-Rips timing")
    add_common(p_bench)
    p_bench.add_argument("--epochs", type=int, default=2, help="epochs for the timing run")
    p_bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StratificationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DatasetError, GraphError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
