"""Topological graph pooling and witness-complex persistence toolkit.

The package is organized bottom-up: ``graphs`` holds the attributed-graph
type and path/centrality primitives, ``datasets`` loads and generates
corpora, ``complexes`` builds filtered simplicial complexes, ``persistence``
computes diagrams, ``features`` turns diagrams into scores and images,
``nn`` is a minimal autodiff stack, ``model`` composes everything into a
trainable classifier, and ``cli`` exposes the command-line workflows.
"""
from .graphs import (
    AttributedGraph,
    GraphError,
    betweenness_centrality,
    degree_centrality,
    induced_subgraph,
    k_hop_neighborhood,
    shortest_paths,
    single_source_distances,
)
from .datasets import (
    DatasetBundle,
    DatasetError,
    DatasetStats,
    degree_onehot_features,
    load_tudataset,
    save_tudataset,
    synthetic_cycles_vs_cliques,
)
from .complexes import (
    Filtration,
    FiltrationError,
    LANDMARK_STRATEGIES,
    LandmarkSet,
    select_landmarks,
    vr_filtration,
    weak_witnesses,
    witness_filtration,
)
from .persistence import PersistenceDiagram, h0_union_find, reduce_boundary
from .features import (
    PersistenceImage,
    SCORE_VARIANTS,
    ScoreConfig,
    effective_cap,
    persistence_image,
    topological_score,
)
from .model import (
    ABLATION_VARIANTS,
    ConfigError,
    ForwardTrace,
    GraphContext,
    ModelConfig,
    PRESETS,
    PoolResult,
    StratificationError,
    TopoPoolNet,
    ablation_results,
    benchmark,
    evaluate_seeds,
    load_config,
    load_model,
    node_scores,
    phi_neighborhood,
    preset,
    save_model,
    select_top_scoring,
    similarity_graph,
    stratified_split,
    topo_pool,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "ABLATION_VARIANTS",
    "AttributedGraph",
    "ConfigError",
    "DatasetBundle",
    "DatasetError",
    "DatasetStats",
    "degree_onehot_features",
    "Filtration",
    "FiltrationError",
    "ForwardTrace",
    "GraphContext",
    "GraphError",
    "LANDMARK_STRATEGIES",
    "LandmarkSet",
    "ModelConfig",
    "PRESETS",
    "PersistenceDiagram",
    "PersistenceImage",
    "PoolResult",
    "SCORE_VARIANTS",
    "ScoreConfig",
    "StratificationError",
    "TopoPoolNet",
    "ablation_results",
    "benchmark",
    "betweenness_centrality",
    "degree_centrality",
    "effective_cap",
    "evaluate_seeds",
    "h0_union_find",
    "induced_subgraph",
    "k_hop_neighborhood",
    "load_config",
    "load_model",
    "load_tudataset",
    "node_scores",
    "persistence_image",
    "phi_neighborhood",
    "preset",
    "reduce_boundary",
    "save_model",
    "select_top_scoring",
    "save_tudataset",
    "select_landmarks",
    "shortest_paths",
    "similarity_graph",
    "single_source_distances",
    "stratified_split",
    "synthetic_cycles_vs_cliques",
    "topo_pool",
    "topological_score",
    "train",
    "vr_filtration",
    "weak_witnesses",
    "witness_filtration",
]
