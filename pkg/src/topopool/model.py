"""End-to-end topological graph classifier.

Two branches summarize each graph. The local branch scores every node by
the persistence of its similarity neighborhood, keeps the top fraction,
and mixes the survivors' features through a pooled convolution with
second-order attention. The global branch builds a similarity graph over
the whole embedding, takes its witness (or Vietoris-Rips) diagram, and
feeds the persistence image through a small MLP. A shared head classifies
the concatenated branch outputs.

Gradients stop at the topology: node scores, pooling indices, landmark
choices, and diagrams depend only on the frozen embedding stack, so they
are computed once per graph and reused across every training epoch.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from .complexes import LANDMARK_STRATEGIES, select_landmarks, vr_filtration, witness_filtration
from .datasets import DatasetBundle
from .features import ScoreConfig, SCORE_VARIANTS, persistence_image, topological_score
from .graphs import AttributedGraph, shortest_paths
from .nn import (
    MLP,
    SIMILARITY_KINDS,
    Adam,
    Tensor,
    concat_columns,
    glorot_uniform,
    matmul,
    mean_rows,
    normalized_adjacency_power,
    relu,
    scale,
    second_order_attention,
    similarity_matrix,
    softmax_cross_entropy,
)
from .nn.checkpoint import load_arrays, save_arrays
from .persistence import reduce_boundary


class ConfigError(ValueError):
    """Rejected model or run configuration."""


class StratificationError(ValueError):
    """Label distribution cannot support a stratified split."""


@dataclass(frozen=True)
class ModelConfig:
    """Complete hyperparameter set for one run.

    ``landmark_fraction`` is the landmark share of the similarity graph,
    ``pool_ratio`` the kept share of nodes in the local branch. The four
    ablation switches remove or replace whole branches; disabling both
    branches at once is rejected.
    """

    dataset: str = "synthetic"
    gnn_layers: int = 2
    hidden_dim: int = 16
    power: int = 1
    similarity: str = "cosine"
    gamma: float = 1.0
    phi: float = 0.4
    score_variant: str = "unweighted"
    score_c: float = 0.3
    score_eta: float = 2.0
    essential_cap: float | None = None
    pool_ratio: float = 0.8
    pool_dim: int = 16
    landmark_strategy: str = "degree"
    landmark_fraction: float = 0.3
    zeta: float = 0.4
    image_resolution: int = 5
    image_bandwidth: float | None = None
    witness_hidden: int = 16
    head_hidden: int | None = None
    dropout: float = 0.0
    lr: float = 0.01
    batch_size: int = 8
    epochs: int = 30
    seed: int = 0
    test_fraction: float = 0.1
    no_tpgcl: bool = False
    no_wit_tl: bool = False
    no_attention: bool = False
    vr_global: bool = False
    literal_gcn_norm: bool = False
    literal_zeta: bool = False

    def __post_init__(self):
        checks = [
            (self.gnn_layers >= 1, "gnn_layers must be at least 1"),
            (self.hidden_dim >= 1, "hidden_dim must be at least 1"),
            (self.power >= 1, "power must be at least 1"),
            (self.similarity in SIMILARITY_KINDS, f"similarity must be one of {SIMILARITY_KINDS}"),
            (self.gamma > 0, "gamma must be positive"),
            (math.isfinite(self.phi), "phi must be finite"),
            (self.score_variant in SCORE_VARIANTS, f"score_variant must be one of {SCORE_VARIANTS}"),
            (self.score_c >= 0, "score_c must be non-negative"),
            (self.score_eta >= 1, "score_eta must be at least 1"),
            (self.essential_cap is None or self.essential_cap > 0, "essential_cap must be positive"),
            (0 < self.pool_ratio <= 1, "pool_ratio must be in (0, 1]"),
            (self.pool_dim >= 1, "pool_dim must be at least 1"),
            (self.landmark_strategy in LANDMARK_STRATEGIES,
             f"landmark_strategy must be one of {LANDMARK_STRATEGIES}"),
            (0 < self.landmark_fraction <= 1, "landmark_fraction must be in (0, 1]"),
            (math.isfinite(self.zeta), "zeta must be finite"),
            (self.image_resolution >= 1, "image_resolution must be at least 1"),
            (self.image_bandwidth is None or self.image_bandwidth > 0,
             "image_bandwidth must be positive"),
            (self.witness_hidden >= 1, "witness_hidden must be at least 1"),
            (self.head_hidden is None or self.head_hidden >= 1, "head_hidden must be at least 1"),
            (0 <= self.dropout <= 0.5, "dropout must be in [0, 0.5]"),
            (self.lr > 0, "lr must be positive"),
            (self.batch_size >= 1, "batch_size must be at least 1"),
            (self.epochs >= 0, "epochs must be non-negative"),
            (0 < self.test_fraction < 1, "test_fraction must be in (0, 1)"),
            (not (self.no_tpgcl and self.no_wit_tl), "cannot disable both branches"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)

    @classmethod
    def from_dict(cls, data: dict) -> "ModelConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def to_dict(self) -> dict:
        return asdict(self)

    def replace(self, **changes) -> "ModelConfig":
        return replace(self, **changes)

    def score_config(self) -> ScoreConfig:
        return ScoreConfig(self.score_variant, self.score_c, self.score_eta, self.essential_cap)


def _tu_preset(name, layers, hidden, batch, **extra):
    base = {
        "dataset": name,
        "gnn_layers": layers,
        "hidden_dim": hidden,
        "batch_size": batch,
        "epochs": 60,
        "lr": 0.01,
        "landmark_fraction": 0.3,
        "image_resolution": 5,
        "witness_hidden": 32,
        "pool_dim": 16,
        "dropout": 0.1,
        "score_c": 0.3,
        "score_eta": 2.0,
    }
    base.update(extra)
    return base


# per-dataset layer/hidden/batch values with the remaining knobs drawn from
# the shared tuning grids; unstated quantities keep their module defaults
# and are written out explicitly so config files are self-describing
PRESETS = {
    "synthetic": {
        "dataset": "synthetic",
        "gnn_layers": 2,
        "hidden_dim": 16,
        "batch_size": 8,
        "epochs": 30,
        "lr": 0.01,
        "landmark_fraction": 0.3,
        "image_resolution": 5,
        "pool_dim": 16,
        "witness_hidden": 16,
    },
    "MUTAG": _tu_preset("MUTAG", 3, 64, 8, pool_dim=32),
    "BZR": _tu_preset("BZR", 5, 16, 64),
    "COX2": _tu_preset("COX2", 3, 8, 16),
    "IMDB-MULTI": _tu_preset("IMDB-MULTI", 3, 8, 8),
    "PROTEINS": _tu_preset("PROTEINS", 5, 8, 8),
    "PTC_MR": _tu_preset("PTC_MR", 5, 8, 8),
    "PTC_MM": _tu_preset("PTC_MM", 5, 32, 8),
    "PTC_FM": _tu_preset("PTC_FM", 5, 32, 8),
    "PTC_FR": _tu_preset("PTC_FR", 5, 32, 8),
    "IMDB-BINARY": _tu_preset("IMDB-BINARY", 5, 32, 8),
    "REDDIT-BINARY": _tu_preset("REDDIT-BINARY", 5, 32, 8),
}


def preset(name: str) -> ModelConfig:
    if name not in PRESETS:
        raise ConfigError(f"no preset for dataset {name!r}; available: {sorted(PRESETS)}")
    return ModelConfig.from_dict(PRESETS[name])


def load_config(path) -> ModelConfig:
    """Read a JSON config file into a validated ModelConfig."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return ModelConfig.from_dict(data)


def phi_neighborhood(node: int, similarity: np.ndarray, phi: float):
    """Similarity neighborhood of one node with internal dissimilarities.

    Returns the sorted node list (always containing ``node``) of every node
    at least ``phi``-similar to it, and their pairwise dissimilarity matrix:
    ``1 - s`` where the pair itself clears the threshold, +inf otherwise.
    """
    s = np.asarray(similarity, dtype=float)
    n = s.shape[0]
    members = sorted({node} | {v for v in range(n) if s[node, v] >= phi})
    block = s[np.ix_(members, members)]
    diss = np.where(block >= phi, 1.0 - block, math.inf)
    np.fill_diagonal(diss, 0.0)
    return members, np.maximum(diss, 0.0)


@dataclass(frozen=True)
class PoolResult:
    """Outcome of score-based node pooling, in score order."""

    index: tuple[int, ...]
    adjacency: np.ndarray
    features: np.ndarray
    scores: np.ndarray


def node_scores(similarity: np.ndarray, phi: float, score_config: ScoreConfig) -> np.ndarray:
    """Per-node persistence scores of each node's similarity neighborhood."""
    n = similarity.shape[0]
    out = np.zeros(n)
    for u in range(n):
        _, diss = phi_neighborhood(u, similarity, phi)
        diagram = reduce_boundary(vr_filtration(diss))
        out[u] = topological_score(diagram, score_config)
    return out


def select_top_scoring(scores, ratio: float) -> tuple[int, ...]:
    """Indices of the ``ceil(ratio * N)`` best scores (clamped to 1..N), in
    descending score order with ties broken by ascending index."""
    scores = np.asarray(scores, dtype=float)
    n = scores.shape[0]
    keep = min(max(math.ceil(ratio * n), 1), n)
    return tuple(sorted(range(n), key=lambda v: (-scores[v], v))[:keep])


def topo_pool(graph: AttributedGraph, embedding: np.ndarray, config: ModelConfig) -> PoolResult:
    """Keep the top ``ceil(pool_ratio * N)`` nodes by topological score.

    Scores come from each node's similarity neighborhood of the embedding;
    ties break toward the smaller node index. The kept index list stays in
    descending score order and selects rows/columns of the adjacency and
    rows of the raw feature matrix.
    """
    sim = similarity_matrix(embedding, config.similarity, config.gamma)
    scores = node_scores(sim, config.phi, config.score_config())
    order = select_top_scoring(scores, config.pool_ratio)
    adjacency = graph.adjacency_matrix()[np.ix_(order, order)]
    return PoolResult(tuple(order), adjacency, graph.features[list(order)], scores)


def similarity_graph(embedding: np.ndarray, config: ModelConfig) -> AttributedGraph:
    """Graph over embedding rows bonded where similarity clears ``zeta``.

    Edge length is the dissimilarity ``1 - s``; exact-duplicate rows get a
    tiny positive length so the graph type's positive-weight rule holds.
    The literal flag inverts the comparison (kept for contrast with the
    recommended reading; it bonds the most dissimilar pairs).
    """
    sim = similarity_matrix(embedding, config.similarity, config.gamma)
    n = sim.shape[0]
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            bonded = sim[u, v] <= config.zeta if config.literal_zeta else sim[u, v] >= config.zeta
            if bonded:
                edges.append((u, v, max(1.0 - sim[u, v], 1e-12)))
    return AttributedGraph(n, edges, features=np.zeros((n, 0)))


@dataclass(frozen=True)
class GraphContext:
    """Everything the trainable layers need for one graph, precomputed.

    All topology happens on the frozen embedding stack, so these arrays are
    constants during training.
    """

    label: int
    embedding: np.ndarray
    node_scores: np.ndarray | None
    pooled_index: tuple[int, ...] | None
    pooled_propagation: np.ndarray | None
    pooled_features: np.ndarray | None
    similarity_edge_count: int | None
    landmark_indices: tuple[int, ...] | None
    diagram_counts: dict | None
    image_row: np.ndarray | None


@dataclass(frozen=True)
class ForwardTrace:
    """Per-graph record of one evaluation pass through both branches."""

    embedding: np.ndarray
    node_scores: np.ndarray | None
    pooled_index: tuple[int, ...] | None
    pooled_output: np.ndarray | None
    similarity_edge_count: int | None
    landmark_indices: tuple[int, ...] | None
    diagram_counts: dict | None
    witness_output: np.ndarray | None
    logits: np.ndarray


class TopoPoolNet:
    """Both branches plus the shared classification head.

    The embedding stack is initialized once and never trained (no gradient
    path reaches it: every consumer of the embedding goes through a
    non-differentiable topology step), so it lives as plain arrays.
    """

    def __init__(self, config: ModelConfig, feature_dim: int, num_classes: int):
        if feature_dim < 1:
            raise ConfigError("feature_dim must be at least 1")
        if num_classes < 2:
            raise ConfigError("num_classes must be at least 2")
        self.config = config
        self.feature_dim = int(feature_dim)
        self.num_classes = int(num_classes)

        init_rng = np.random.default_rng(np.random.SeedSequence([config.seed, 0]))
        dims = [feature_dim] + [config.hidden_dim] * config.gnn_layers
        self.embed_weights = [
            glorot_uniform(init_rng, dims[i], dims[i + 1]) for i in range(config.gnn_layers)
        ]

        head_in = 0
        if not config.no_tpgcl:
            self.pool_weight = Tensor(
                glorot_uniform(init_rng, feature_dim, config.pool_dim), requires_grad=True
            )
            self.attention_weight = None
            if not config.no_attention:
                self.attention_weight = Tensor(
                    glorot_uniform(init_rng, config.pool_dim, 1), requires_grad=True
                )
            head_in += config.pool_dim
        if not config.no_wit_tl:
            width = config.image_resolution**2
            self.witness_mlp = MLP(init_rng, width, config.witness_hidden,
                                   config.witness_hidden, config.dropout)
            head_in += config.witness_hidden
        hidden = config.head_hidden if config.head_hidden is not None else config.hidden_dim
        self.head = MLP(init_rng, head_in, hidden, num_classes, config.dropout)
        self._dropout_rng = np.random.default_rng(np.random.SeedSequence([config.seed, 3]))

    # ---------------- frozen per-graph topology ----------------

    def embed(self, graph: AttributedGraph) -> np.ndarray:
        """Run the frozen convolution stack on one graph."""
        if graph.feature_dim != self.feature_dim:
            raise ConfigError(
                f"graph has {graph.feature_dim} features, model expects {self.feature_dim}"
            )
        prop = normalized_adjacency_power(
            graph.adjacency_matrix(), self.config.power, self.config.literal_gcn_norm
        )
        h = graph.features
        for w in self.embed_weights:
            h = np.maximum(prop @ h @ w, 0.0)
        return h

    def _landmark_seed(self, graph_index: int) -> int:
        return int(np.random.SeedSequence([self.config.seed, 4, graph_index]).generate_state(1)[0])

    def graph_context(self, graph: AttributedGraph, graph_index: int = 0) -> GraphContext:
        """Precompute every topology-dependent constant for one graph."""
        cfg = self.config
        embedding = self.embed(graph)

        scores = pooled_index = pooled_prop = pooled_feats = None
        if not cfg.no_tpgcl:
            pool = topo_pool(graph, embedding, cfg)
            scores = pool.scores
            pooled_index = pool.index
            pooled_prop = normalized_adjacency_power(pool.adjacency, 1, cfg.literal_gcn_norm)
            pooled_feats = pool.features

        edge_count = landmarks = counts = image_row = None
        if not cfg.no_wit_tl:
            backbone = similarity_graph(embedding, cfg)
            edge_count = backbone.edge_count
            if cfg.vr_global:
                diagram = reduce_boundary(vr_filtration(shortest_paths(backbone)))
            else:
                chosen = select_landmarks(
                    backbone, cfg.landmark_strategy, cfg.landmark_fraction,
                    seed=self._landmark_seed(graph_index),
                )
                landmarks = chosen.indices
                diagram = reduce_boundary(witness_filtration(backbone, chosen))
            image = persistence_image(
                diagram, cfg.image_resolution, cfg.image_bandwidth, cfg.essential_cap
            )
            counts = {dim: diagram.count(dim) for dim in (0, 1)}
            image_row = image.flatten()

        return GraphContext(
            label=graph.label,
            embedding=embedding,
            node_scores=scores,
            pooled_index=pooled_index,
            pooled_propagation=pooled_prop,
            pooled_features=pooled_feats,
            similarity_edge_count=edge_count,
            landmark_indices=landmarks,
            diagram_counts=counts,
            image_row=image_row,
        )

    def contexts(self, graphs) -> list[GraphContext]:
        return [self.graph_context(g, i) for i, g in enumerate(graphs)]

    # ---------------- trainable forward ----------------

    def tpgcl_forward(self, context: GraphContext, train: bool = False) -> Tensor:
        """Local branch: pooled convolution collapsed to one row."""
        pooled = relu(
            matmul(
                Tensor(context.pooled_propagation @ context.pooled_features),
                self.pool_weight,
            )
        )
        if self.config.no_attention:
            return mean_rows(pooled)
        return second_order_attention(pooled, self.attention_weight)

    def wit_tl_forward(self, context: GraphContext, train: bool = False) -> Tensor:
        """Global branch: persistence image through its MLP."""
        return self.witness_mlp(Tensor(context.image_row), train, self._dropout_rng)

    def forward(self, context: GraphContext, train: bool = False) -> Tensor:
        """Class logits (one row) for a precomputed graph context."""
        cfg = self.config
        parts = []
        if not cfg.no_tpgcl:
            parts.append(self.tpgcl_forward(context, train))
        if not cfg.no_wit_tl:
            parts.append(self.wit_tl_forward(context, train))
        merged = parts[0] if len(parts) == 1 else concat_columns(parts[0], parts[1])
        return self.head(merged, train, self._dropout_rng)

    def predict(self, context: GraphContext) -> int:
        return int(np.argmax(self.forward(context, train=False).data[0]))

    def trace(self, graph: AttributedGraph, graph_index: int = 0) -> ForwardTrace:
        """Evaluation pass that records every intermediate of interest."""
        context = self.graph_context(graph, graph_index)
        cfg = self.config
        pooled_out = witness_out = None
        if not cfg.no_tpgcl:
            pooled_out = self.tpgcl_forward(context).data.copy()
        if not cfg.no_wit_tl:
            witness_out = self.wit_tl_forward(context).data.copy()
        logits = self.forward(context).data.copy()
        return ForwardTrace(
            embedding=context.embedding,
            node_scores=context.node_scores,
            pooled_index=context.pooled_index,
            pooled_output=pooled_out,
            similarity_edge_count=context.similarity_edge_count,
            landmark_indices=context.landmark_indices,
            diagram_counts=context.diagram_counts,
            witness_output=witness_out,
            logits=logits,
        )

    def parameters(self) -> dict[str, Tensor]:
        out = {}
        if not self.config.no_tpgcl:
            out["pool.weight"] = self.pool_weight
            if self.attention_weight is not None:
                out["attention.weight"] = self.attention_weight
        if not self.config.no_wit_tl:
            for name, t in self.witness_mlp.parameters().items():
                out[f"witness.{name}"] = t
        for name, t in self.head.parameters().items():
            out[f"head.{name}"] = t
        return out

    # ---------------- persistence ----------------

    def export_arrays(self) -> dict[str, np.ndarray]:
        out = {f"embed.{i}": w for i, w in enumerate(self.embed_weights)}
        out.update({name: t.data for name, t in self.parameters().items()})
        if not self.config.no_wit_tl:
            for name, value in self.witness_mlp.state_arrays().items():
                out[f"witness.{name}"] = value
        for name, value in self.head.state_arrays().items():
            out[f"head.{name}"] = value
        return out

    def load_state(self, arrays) -> None:
        for i in range(len(self.embed_weights)):
            value = np.asarray(arrays[f"embed.{i}"], dtype=float)
            if value.shape != self.embed_weights[i].shape:
                raise ConfigError(f"shape mismatch for embed.{i}")
            self.embed_weights[i] = value.copy()
        for name, tensor in self.parameters().items():
            value = np.asarray(arrays[name], dtype=float)
            if value.shape != tensor.data.shape:
                raise ConfigError(f"shape mismatch for {name}")
            tensor.data = value.copy()
        if not self.config.no_wit_tl:
            self.witness_mlp.load_state_arrays(arrays, "witness.")
        self.head.load_state_arrays(arrays, "head.")


def save_model(model: TopoPoolNet, path) -> None:
    save_arrays(path, model.export_arrays())


def load_model(path, config: ModelConfig, feature_dim: int, num_classes: int) -> TopoPoolNet:
    model = TopoPoolNet(config, feature_dim, num_classes)
    model.load_state(load_arrays(path))
    return model


# ---------------- training protocol ----------------


def stratified_split(labels, test_fraction: float, rng: np.random.Generator):
    """Seeded per-class 90/10-style split.

    Every class keeps at least one training example; every class with two
    or more members sends at least one to the test side.
    """
    labels = [int(l) for l in labels]
    classes = sorted(set(labels))
    if len(classes) < 2:
        raise StratificationError("need at least two classes")
    train_idx, test_idx = [], []
    for c in classes:
        members = [i for i, l in enumerate(labels) if l == c]
        perm = rng.permutation(len(members))
        members = [members[int(j)] for j in perm]
        n_test = round(len(members) * test_fraction)
        if len(members) >= 2:
            n_test = min(max(n_test, 1), len(members) - 1)
        else:
            n_test = 0
        test_idx.extend(members[:n_test])
        train_idx.extend(members[n_test:])
    if not test_idx:
        raise StratificationError("test split is empty; every class has a single example")
    return sorted(train_idx), sorted(test_idx)


def _accuracy(model: TopoPoolNet, contexts, indices) -> float:
    if not indices:
        return 0.0
    hits = sum(model.predict(contexts[i]) == contexts[i].label for i in indices)
    return hits / len(indices)


def train(graphs, config: ModelConfig, timing: dict | None = None):
    """Train on a stratified split and report per-epoch metrics.

    ``graphs`` is a DatasetBundle or a sequence of graphs. The returned
    metrics contain no timing or environment values, so two runs with the
    same inputs and seed serialize to identical JSON. Wall-clock numbers go
    into ``timing`` when a dict is supplied.

    Returns ``(model, metrics)``.
    """
    graph_list = list(graphs.graphs if isinstance(graphs, DatasetBundle) else graphs)
    if not graph_list:
        raise ConfigError("no graphs to train on")
    labels = [g.label for g in graph_list]
    num_classes = max(labels) + 1
    feature_dims = {g.feature_dim for g in graph_list}
    if len(feature_dims) != 1:
        raise ConfigError("graphs disagree on feature dimension")

    split_rng = np.random.default_rng(np.random.SeedSequence([config.seed, 1]))
    train_idx, test_idx = stratified_split(labels, config.test_fraction, split_rng)

    model = TopoPoolNet(config, feature_dims.pop(), num_classes)

    started = time.perf_counter()
    contexts = model.contexts(graph_list)
    precompute_seconds = time.perf_counter() - started

    optimizer = Adam(model.parameters(), lr=config.lr)
    epoch_rng = np.random.default_rng(np.random.SeedSequence([config.seed, 2]))

    initial_loss = sum(
        softmax_cross_entropy(model.forward(contexts[i]), contexts[i].label).item()
        for i in train_idx
    ) / len(train_idx)

    train_losses = []
    test_accuracies = []
    epoch_seconds = []
    for _ in range(config.epochs):
        tick = time.perf_counter()
        order = [train_idx[int(j)] for j in epoch_rng.permutation(len(train_idx))]
        epoch_loss = 0.0
        for start in range(0, len(order), config.batch_size):
            batch = order[start : start + config.batch_size]
            optimizer.zero_grad()
            for i in batch:
                logits = model.forward(contexts[i], train=True)
                loss = softmax_cross_entropy(logits, contexts[i].label)
                scale(loss, 1.0 / len(batch)).backward()
                epoch_loss += loss.item()
            optimizer.step()
        train_losses.append(epoch_loss / max(len(order), 1))
        test_accuracies.append(_accuracy(model, contexts, test_idx))
        epoch_seconds.append(time.perf_counter() - tick)

    if timing is not None:
        timing["precompute_seconds"] = precompute_seconds
        timing["epoch_seconds"] = epoch_seconds
        timing["epoch_seconds_mean"] = (
            sum(epoch_seconds) / len(epoch_seconds) if epoch_seconds else 0.0
        )

    final_accuracy = _accuracy(model, contexts, test_idx)
    metrics = {
        "seed": config.seed,
        "epochs": config.epochs,
        "num_graphs": len(graph_list),
        "num_classes": num_classes,
        "train_size": len(train_idx),
        "test_size": len(test_idx),
        "train_indices": train_idx,
        "test_indices": test_idx,
        "initial_train_loss": float(initial_loss),
        "train_loss": [float(v) for v in train_losses],
        "test_accuracy_per_epoch": [float(v) for v in test_accuracies],
        "test_accuracy": float(final_accuracy),
        "best_test_accuracy": float(max(test_accuracies, default=final_accuracy)),
        "train_accuracy": float(_accuracy(model, contexts, train_idx)),
    }
    return model, metrics


def evaluate_seeds(graphs, config: ModelConfig, seeds) -> dict:
    """Rerun training across seeds and summarize final test accuracy."""
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ConfigError("need at least one seed")
    runs = []
    for s in seeds:
        _, metrics = train(graphs, config.replace(seed=s))
        runs.append(metrics)
    accuracies = [m["test_accuracy"] for m in runs]
    return {
        "seeds": seeds,
        "accuracies": accuracies,
        "mean_accuracy": float(np.mean(accuracies)),
        "std_accuracy": float(np.std(accuracies)),
        "runs": runs,
    }


ABLATION_VARIANTS = ("full", "no_tpgcl", "no_wit_tl", "no_attention")


def ablation_results(graphs, config: ModelConfig, seeds) -> list[dict]:
    """Mean/std accuracy for the full model and each single-switch ablation.

    Every row's configuration differs from the full model only in its one
    named switch.
    """
    base = config.replace(no_tpgcl=False, no_wit_tl=False, no_attention=False)
    rows = []
    for variant in ABLATION_VARIANTS:
        variant_cfg = base if variant == "full" else base.replace(**{variant: True})
        summary = evaluate_seeds(graphs, variant_cfg, seeds)
        rows.append(
            {
                "variant": variant,
                "mean_accuracy": summary["mean_accuracy"],
                "std_accuracy": summary["std_accuracy"],
                "accuracies": summary["accuracies"],
            }
        )
    return rows


def benchmark(graphs, config: ModelConfig, epochs: int = 2) -> dict:
    """Wall-clock comparison of the witness and Vietoris-Rips global branch.

    Times the diagram computation (filtration plus reduction) per graph for
    both complex types on the same similarity graphs, then times a short
    training run for each mode.
    """
    graph_list = list(graphs.graphs if isinstance(graphs, DatasetBundle) else graphs)
    out = {}
    for mode in ("witness", "vr"):
        mode_cfg = config.replace(vr_global=(mode == "vr"), no_wit_tl=False)
        model = TopoPoolNet(
            mode_cfg, graph_list[0].feature_dim, max(g.label for g in graph_list) + 1
        )
        ph_seconds = 0.0
        diagram_points = 0
        for i, g in enumerate(graph_list):
            backbone = similarity_graph(model.embed(g), mode_cfg)
            if mode == "witness":
                chosen = select_landmarks(
                    backbone, mode_cfg.landmark_strategy, mode_cfg.landmark_fraction,
                    seed=model._landmark_seed(i),
                )
                tick = time.perf_counter()
                diagram = reduce_boundary(witness_filtration(backbone, chosen))
                ph_seconds += time.perf_counter() - tick
            else:
                distances = shortest_paths(backbone)
                tick = time.perf_counter()
                diagram = reduce_boundary(vr_filtration(distances))
                ph_seconds += time.perf_counter() - tick
            diagram_points += diagram.total_points()
        timing: dict = {}
        _, metrics = train(graph_list, mode_cfg.replace(epochs=epochs), timing=timing)
        out[mode] = {
            "ph_seconds_total": ph_seconds,
            "ph_seconds_mean": ph_seconds / len(graph_list),
            "diagram_points": diagram_points,
            "train_seconds_per_epoch": timing["epoch_seconds_mean"],
            "test_accuracy": metrics["test_accuracy"],
        }
    return out
