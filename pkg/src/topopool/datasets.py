"""Graph-classification dataset bundles.

Covers three sources: the plain-text benchmark format (``<name>_A.txt`` and
friends), a seeded synthetic corpus for tests and demos, and round-trip
serialization back to the same text format.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graphs import AttributedGraph, GraphError


class DatasetError(ValueError):
    """Missing, malformed, or inconsistent dataset files."""


@dataclass(frozen=True)
class DatasetStats:
    graph_count: int
    avg_nodes: float
    avg_edges: float
    num_classes: int


class DatasetBundle:
    """An ordered list of graphs with a name and summary statistics."""

    __slots__ = ("name", "graphs", "stats")

    def __init__(self, name: str, graphs):
        self.name = str(name)
        self.graphs = tuple(graphs)
        if not self.graphs:
            raise DatasetError("dataset has no graphs")
        self.stats = self.compute_stats()

    def compute_stats(self) -> DatasetStats:
        """Recompute summary statistics from the stored graphs."""
        return DatasetStats(
            graph_count=len(self.graphs),
            avg_nodes=sum(g.node_count for g in self.graphs) / len(self.graphs),
            avg_edges=sum(g.edge_count for g in self.graphs) / len(self.graphs),
            num_classes=len({g.label for g in self.graphs}),
        )

    def labels(self) -> np.ndarray:
        return np.array([g.label for g in self.graphs], dtype=int)

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __getitem__(self, i):
        return self.graphs[i]


def _read_rows(path: Path):
    """Lines of a text file, stripped, with 1-based line numbers.

    Trailing blank lines are dropped; interior blanks are kept so that
    errors point at the right row.
    """
    try:
        raw = path.read_text()
    except OSError as exc:
        raise DatasetError(f"cannot read {path}: {exc}") from exc
    rows = [(i + 1, line.strip()) for i, line in enumerate(raw.splitlines())]
    while rows and not rows[-1][1]:
        rows.pop()
    return rows


def _parse_ints(path: Path, expect_pairs: bool):
    out = []
    for lineno, text in _read_rows(path):
        parts = [p for p in text.replace(",", " ").split() if p]
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise DatasetError(f"{path.name} line {lineno}: expected integers, got {text!r}") from None
        if expect_pairs and len(values) != 2:
            raise DatasetError(f"{path.name} line {lineno}: expected a node pair, got {text!r}")
        if not expect_pairs and len(values) != 1:
            raise DatasetError(f"{path.name} line {lineno}: expected one integer, got {text!r}")
        out.append(values if expect_pairs else values[0])
    return out


def _parse_float_rows(path: Path):
    out = []
    for lineno, text in _read_rows(path):
        parts = [p for p in text.split(",") if p.strip()]
        try:
            out.append([float(p) for p in parts])
        except ValueError:
            raise DatasetError(f"{path.name} line {lineno}: expected floats, got {text!r}") from None
    return out


def degree_onehot_features(edge_lists, node_counts):
    """One-hot degree features shared across a corpus.

    The feature dimension is the maximum degree over all graphs plus one,
    so equal degrees map to the same column everywhere.
    """
    degrees = []
    for n, edges in zip(node_counts, edge_lists):
        d = [0] * n
        for u, v in edges:
            d[u] += 1
            d[v] += 1
        degrees.append(d)
    width = max((max(d) for d in degrees if d), default=0) + 1
    mats = []
    for d in degrees:
        m = np.zeros((len(d), width))
        m[np.arange(len(d)), d] = 1.0
        mats.append(m)
    return mats


def load_tudataset(data_dir, name: str) -> DatasetBundle:
    """Load a benchmark in the plain-text adjacency format.

    Expects ``<name>_A.txt``, ``<name>_graph_indicator.txt`` and
    ``<name>_graph_labels.txt`` under ``data_dir`` (or under a ``<name>/``
    subdirectory of it); ``<name>_node_labels.txt`` and
    ``<name>_node_attributes.txt`` are optional. Node features come from
    attributes when present, else one-hot node labels, else one-hot degrees.
    """
    base = Path(data_dir)
    for candidate in (base, base / name, base / name / name, base / name / "raw"):
        if (candidate / f"{name}_A.txt").is_file():
            base = candidate
            break
    else:
        raise DatasetError(f"{name}_A.txt not found under {data_dir}")

    pairs = _parse_ints(base / f"{name}_A.txt", expect_pairs=True)
    indicator = _parse_ints(base / f"{name}_graph_indicator.txt", expect_pairs=False)
    graph_labels = _parse_ints(base / f"{name}_graph_labels.txt", expect_pairs=False)

    num_nodes = len(indicator)
    num_graphs = len(graph_labels)
    if num_nodes == 0 or num_graphs == 0:
        raise DatasetError(f"{name}: empty indicator or label file")
    for i, gid in enumerate(indicator):
        if not 1 <= gid <= num_graphs:
            raise DatasetError(
                f"{name}_graph_indicator.txt line {i + 1}: graph id {gid} outside 1..{num_graphs}"
            )

    # node ids are 1-based and global; group them per graph in file order
    members = [[] for _ in range(num_graphs)]
    for node, gid in enumerate(indicator):
        members[gid - 1].append(node)
    for gid, nodes in enumerate(members):
        if not nodes:
            raise DatasetError(f"{name}: graph {gid + 1} has no nodes")

    local = {}
    for nodes in members:
        for i, node in enumerate(nodes):
            local[node] = i

    edge_lists = [[] for _ in range(num_graphs)]
    seen = [set() for _ in range(num_graphs)]
    for row, (a, b) in enumerate(pairs):
        if not (1 <= a <= num_nodes and 1 <= b <= num_nodes):
            raise DatasetError(f"{name}_A.txt line {row + 1}: node index outside 1..{num_nodes}")
        if a == b:
            continue
        ga, gb = indicator[a - 1], indicator[b - 1]
        if ga != gb:
            raise DatasetError(
                f"{name}_A.txt line {row + 1}: edge joins graph {ga} and graph {gb}"
            )
        key = (min(a, b), max(a, b))
        if key in seen[ga - 1]:
            continue
        seen[ga - 1].add(key)
        edge_lists[ga - 1].append((local[a - 1], local[b - 1]))

    node_counts = [len(nodes) for nodes in members]

    attr_path = base / f"{name}_node_attributes.txt"
    label_path = base / f"{name}_node_labels.txt"
    if attr_path.is_file():
        rows = _parse_float_rows(attr_path)
        if len(rows) != num_nodes:
            raise DatasetError(f"{attr_path.name}: {len(rows)} rows for {num_nodes} nodes")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DatasetError(f"{attr_path.name}: ragged attribute rows")
        table = np.array(rows)
        feature_mats = [table[nodes] for nodes in members]
    elif label_path.is_file():
        values = _parse_ints(label_path, expect_pairs=False)
        if len(values) != num_nodes:
            raise DatasetError(f"{label_path.name}: {len(values)} rows for {num_nodes} nodes")
        symbols = sorted(set(values))
        column = {s: j for j, s in enumerate(symbols)}
        table = np.zeros((num_nodes, len(symbols)))
        for node, s in enumerate(values):
            table[node, column[s]] = 1.0
        feature_mats = [table[nodes] for nodes in members]
    else:
        feature_mats = degree_onehot_features(edge_lists, node_counts)

    classes = sorted(set(graph_labels))
    class_index = {c: j for j, c in enumerate(classes)}
    graphs = [
        AttributedGraph(node_counts[i], edge_lists[i], feature_mats[i], class_index[graph_labels[i]])
        for i in range(num_graphs)
    ]
    return DatasetBundle(name, graphs)


def save_tudataset(bundle: DatasetBundle, data_dir, name: str | None = None) -> Path:
    """Write a bundle back out in the plain-text adjacency format.

    Only unit-weight graphs can be represented; edges are emitted in both
    directions as is conventional for the format.
    """
    name = name or bundle.name
    base = Path(data_dir)
    base.mkdir(parents=True, exist_ok=True)

    offsets = []
    total = 0
    for g in bundle:
        offsets.append(total)
        total += g.node_count

    a_rows = []
    indicator_rows = []
    label_rows = []
    for gid, g in enumerate(bundle):
        if not g.is_unit_weighted():
            raise DatasetError("text format cannot carry edge weights")
        off = offsets[gid]
        for u, v in sorted(g.edges):
            a_rows.append(f"{off + u + 1}, {off + v + 1}")
            a_rows.append(f"{off + v + 1}, {off + u + 1}")
        indicator_rows.extend([str(gid + 1)] * g.node_count)
        label_rows.append(str(g.label))

    (base / f"{name}_A.txt").write_text("\n".join(a_rows) + "\n")
    (base / f"{name}_graph_indicator.txt").write_text("\n".join(indicator_rows) + "\n")
    (base / f"{name}_graph_labels.txt").write_text("\n".join(label_rows) + "\n")

    widths = {g.feature_dim for g in bundle}
    if widths != {0}:
        if len(widths) != 1:
            raise DatasetError("graphs disagree on feature dimension")
        attr_rows = []
        for g in bundle:
            for row in g.features:
                attr_rows.append(", ".join(repr(float(x)) for x in row))
        (base / f"{name}_node_attributes.txt").write_text("\n".join(attr_rows) + "\n")
    return base


def synthetic_cycles_vs_cliques(count: int = 40, seed: int = 0, size_range=(6, 10)) -> DatasetBundle:
    """Balanced two-class corpus: cycle graphs versus complete graphs.

    Cycles carry a persistent loop and cliques do not, so the classes are
    topologically separable. Sizes are drawn uniformly from ``size_range``
    (inclusive) with the given seed; features are shared-width one-hot
    degrees and labels are 0 for cycles, 1 for cliques.
    """
    if count < 2:
        raise DatasetError("count must be at least 2")
    lo, hi = size_range
    if not 3 <= lo <= hi:
        raise DatasetError("size_range must satisfy 3 <= lo <= hi")
    rng = np.random.default_rng(seed)
    sizes = rng.integers(lo, hi + 1, size=count)

    node_counts = []
    edge_lists = []
    labels = []
    for i, n in enumerate(sizes):
        n = int(n)
        if i < count // 2:
            edges = [(v, (v + 1) % n) for v in range(n)]
            labels.append(0)
        else:
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
            labels.append(1)
        node_counts.append(n)
        edge_lists.append(edges)

    feature_mats = degree_onehot_features(edge_lists, node_counts)
    graphs = [
        AttributedGraph(node_counts[i], edge_lists[i], feature_mats[i], labels[i])
        for i in range(count)
    ]
    return DatasetBundle("synthetic-cycles-vs-cliques", graphs)
