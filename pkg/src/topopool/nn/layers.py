"""Trainable layers and graph propagation operators.

The graph-convolution pieces operate on plain arrays (their weights are
frozen after initialization in this architecture); Linear, BatchNorm, and
the two-layer MLP operate on tape tensors and expose their parameters for
an optimizer.
"""
from __future__ import annotations

import math

import numpy as np

from .tensor import Tensor, add, as_tensor, matmul, mul, relu, transpose

SIMILARITY_KINDS = ("cosine", "gaussian")


def glorot_uniform(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    """Uniform init on ``[-limit, limit]`` with ``limit = sqrt(6/(fan_in+fan_out))``."""
    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def normalized_adjacency_power(adjacency, k: int = 1, literal_normalization: bool = False) -> np.ndarray:
    """k-th power of the self-looped, degree-normalized propagation matrix.

    With row sums ``d`` of ``A + I``, the default is the symmetric form
    ``D^(-1/2) (A + I) D^(-1/2)``. The literal flag right-multiplies by
    ``D^(+1/2)`` instead, matching a non-symmetric variant kept for
    comparison; it is not recommended.
    """
    a = np.asarray(adjacency, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adjacency must be square")
    if k < 1:
        raise ValueError("power k must be at least 1")
    looped = a + np.eye(a.shape[0])
    d = looped.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(d)
    if literal_normalization:
        p = (looped * inv_sqrt[:, None]) * np.sqrt(d)[None, :]
    else:
        p = (looped * inv_sqrt[:, None]) * inv_sqrt[None, :]
    return np.linalg.matrix_power(p, k)


def gcn_layer(adjacency, features, weight, k: int = 1, literal_normalization: bool = False) -> Tensor:
    """One graph-convolution layer: ``relu(P^k @ features @ weight)``."""
    p = Tensor(normalized_adjacency_power(adjacency, k, literal_normalization))
    return relu(matmul(matmul(p, as_tensor(features)), as_tensor(weight)))


def similarity_matrix(embedding, kind: str = "cosine", gamma: float = 1.0) -> np.ndarray:
    """Pairwise node similarity of embedding rows, exactly symmetric.

    ``cosine`` maps zero rows to zero similarity (including to themselves);
    ``gaussian`` is ``exp(-gamma * squared distance)``.
    """
    h = np.asarray(embedding, dtype=float)
    if h.ndim != 2:
        raise ValueError("embedding must be 2-D")
    if kind == "cosine":
        norms = np.sqrt((h * h).sum(axis=1))
        safe = np.where(norms > 0, norms, 1.0)
        unit = h / safe[:, None]
        s = unit @ unit.T
        s = np.clip(s, -1.0, 1.0)
        np.fill_diagonal(s, np.where(norms > 0, 1.0, 0.0))
    elif kind == "gaussian":
        if gamma <= 0:
            raise ValueError("gamma must be positive")
        sq = (h * h).sum(axis=1)
        d2 = sq[:, None] + sq[None, :] - 2.0 * (h @ h.T)
        s = np.exp(-gamma * np.maximum(d2, 0.0))
        np.fill_diagonal(s, 1.0)
    else:
        raise ValueError(f"unknown similarity kind {kind!r}")
    return (s + s.T) / 2.0


def second_order_attention(pooled: Tensor, weight: Tensor) -> Tensor:
    """Collapse pooled node embeddings to one row by self-weighted mixing:
    ``(pooled^T @ (pooled @ weight))^T`` for a single attention column."""
    return transpose(matmul(transpose(pooled), matmul(pooled, weight)))


class Linear:
    """Affine map with Glorot-initialized weight and zero bias."""

    def __init__(self, rng: np.random.Generator, fan_in: int, fan_out: int):
        self.weight = Tensor(glorot_uniform(rng, fan_in, fan_out), requires_grad=True)
        self.bias = Tensor(np.zeros((1, fan_out)), requires_grad=True)

    def __call__(self, x: Tensor) -> Tensor:
        return add(matmul(x, self.weight), self.bias)

    def parameters(self):
        return {"weight": self.weight, "bias": self.bias}


class BatchNorm:
    """Per-feature normalization with running statistics.

    Training updates the running mean and variance with momentum 0.9 and
    normalizes with the batch statistics treated as constants; a batch
    variance below 1e-8 in every column (always the case for a single row)
    falls back to the identity. Evaluation normalizes with the running
    statistics, skipping columns whose running variance is below 1e-8.
    """

    EPSILON = 1e-8

    def __init__(self, width: int, momentum: float = 0.9):
        self.gamma = Tensor(np.ones((1, width)), requires_grad=True)
        self.beta = Tensor(np.zeros((1, width)), requires_grad=True)
        self.running_mean = np.zeros(width)
        self.running_var = np.ones(width)
        self.momentum = float(momentum)

    def __call__(self, x: Tensor, train: bool) -> Tensor:
        if train:
            batch_mean = x.data.mean(axis=0)
            batch_var = x.data.var(axis=0)
            m = self.momentum
            self.running_mean = m * self.running_mean + (1 - m) * batch_mean
            self.running_var = m * self.running_var + (1 - m) * batch_var
            mean, var = batch_mean, batch_var
        else:
            mean, var = self.running_mean, self.running_var
        usable = var >= self.EPSILON
        shift = np.where(usable, mean, 0.0)
        gain = np.where(usable, 1.0 / np.sqrt(np.where(usable, var, 1.0)), 1.0)
        centered = add(x, Tensor(-shift.reshape(1, -1)))
        normalized = mul(centered, Tensor(gain.reshape(1, -1)))
        return add(mul(normalized, self.gamma), self.beta)

    def parameters(self):
        return {"gamma": self.gamma, "beta": self.beta}


def dropout(x: Tensor, p: float, train: bool, rng: np.random.Generator | None) -> Tensor:
    """Inverted dropout: active only in training, identity otherwise."""
    if not 0 <= p <= 0.5:
        raise ValueError("dropout probability must be in [0, 0.5]")
    if not train or p == 0.0:
        return x
    if rng is None:
        raise ValueError("training-mode dropout needs a random generator")
    mask = (rng.random(x.shape) >= p) / (1.0 - p)
    return mul(x, Tensor(mask))


class MLP:
    """Two affine layers with ReLU, batch-norm, and dropout in between."""

    def __init__(self, rng, in_dim: int, hidden_dim: int, out_dim: int, dropout_p: float = 0.0):
        if min(in_dim, hidden_dim, out_dim) < 1:
            raise ValueError("layer widths must be positive")
        if not 0 <= dropout_p <= 0.5:
            raise ValueError("dropout probability must be in [0, 0.5]")
        self.first = Linear(rng, in_dim, hidden_dim)
        self.norm = BatchNorm(hidden_dim)
        self.second = Linear(rng, hidden_dim, out_dim)
        self.dropout_p = float(dropout_p)

    def __call__(self, x: Tensor, train: bool = False, rng=None) -> Tensor:
        h = relu(self.first(x))
        h = self.norm(h, train)
        h = dropout(h, self.dropout_p, train, rng)
        return self.second(h)

    def parameters(self):
        out = {}
        for prefix, layer in (("first", self.first), ("norm", self.norm), ("second", self.second)):
            for name, tensor in layer.parameters().items():
                out[f"{prefix}.{name}"] = tensor
        return out

    def state_arrays(self):
        """Every array that defines the module, including running stats."""
        out = {name: t.data for name, t in self.parameters().items()}
        out["norm.running_mean"] = self.norm.running_mean.reshape(1, -1)
        out["norm.running_var"] = self.norm.running_var.reshape(1, -1)
        return out

    def load_state_arrays(self, arrays, prefix: str = ""):
        for name, tensor in self.parameters().items():
            value = np.asarray(arrays[prefix + name], dtype=float)
            if value.shape != tensor.data.shape:
                raise ValueError(f"shape mismatch for {prefix + name}")
            tensor.data = value.copy()
        self.norm.running_mean = np.asarray(arrays[prefix + "norm.running_mean"], dtype=float).reshape(-1).copy()
        self.norm.running_var = np.asarray(arrays[prefix + "norm.running_var"], dtype=float).reshape(-1).copy()
