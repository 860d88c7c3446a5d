"""Minimal neural-network stack: tape autodiff, layers, Adam, checkpoints."""
from .tensor import (
    Tensor,
    add,
    as_tensor,
    concat_columns,
    matmul,
    mean_rows,
    mul,
    relu,
    scale,
    softmax_cross_entropy,
    transpose,
)
from .layers import (
    MLP,
    SIMILARITY_KINDS,
    BatchNorm,
    Linear,
    dropout,
    gcn_layer,
    glorot_uniform,
    normalized_adjacency_power,
    second_order_attention,
    similarity_matrix,
)
from .optim import Adam
from .checkpoint import load_arrays, save_arrays

__all__ = [
    "Adam",
    "BatchNorm",
    "Linear",
    "MLP",
    "SIMILARITY_KINDS",
    "Tensor",
    "add",
    "as_tensor",
    "concat_columns",
    "dropout",
    "gcn_layer",
    "glorot_uniform",
    "load_arrays",
    "matmul",
    "mean_rows",
    "mul",
    "normalized_adjacency_power",
    "relu",
    "save_arrays",
    "scale",
    "second_order_attention",
    "similarity_matrix",
    "softmax_cross_entropy",
    "transpose",
]
