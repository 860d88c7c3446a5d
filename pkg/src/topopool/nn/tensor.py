"""Reverse-mode automatic differentiation on dense 2-D float64 arrays.

Every operation records its inputs and a closure that routes the output
gradient back to them; ``Tensor.backward`` replays those closures in
reverse topological order. Graphs are rebuilt on every forward pass, so
leaf gradients accumulate across calls until explicitly cleared.
"""
from __future__ import annotations

import math

import numpy as np


class Tensor:
    """A 2-D float64 array with optional gradient bookkeeping."""

    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

    def __init__(self, data, requires_grad: bool = False):
        arr = np.asarray(data, dtype=float)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        elif arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError(f"tensors are 2-D, got shape {arr.shape}")
        self.data = arr
        self.grad = None
        self.requires_grad = bool(requires_grad)
        self._parents = ()
        self._backward = None

    @property
    def shape(self):
        return self.data.shape

    def zero_grad(self):
        self.grad = None

    def _receive(self, g: np.ndarray):
        if self.grad is None:
            self.grad = np.zeros_like(self.data)
        self.grad = self.grad + g

    def item(self) -> float:
        if self.data.size != 1:
            raise ValueError("item() requires a single-element tensor")
        return float(self.data.reshape(-1)[0])

    def backward(self, seed=None):
        """Accumulate d(self)/d(leaf) into every reachable leaf's ``grad``.

        ``seed`` defaults to all ones (for a 1x1 loss this is the usual
        scalar backward).
        """
        if not self.requires_grad:
            raise ValueError("backward() on a tensor that requires no grad")
        order = []
        visited = set()
        stack = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if parent.requires_grad and id(parent) not in visited:
                    stack.append((parent, False))
        seed = np.ones_like(self.data) if seed is None else np.asarray(seed, dtype=float)
        if seed.shape != self.data.shape:
            raise ValueError("seed gradient shape mismatch")
        self._receive(seed)
        for node in reversed(order):
            if node._backward is not None:
                node._backward(node.grad)

    def __repr__(self):
        flag = ", requires_grad=True" if self.requires_grad else ""
        return f"Tensor(shape={self.data.shape}{flag})"


def as_tensor(value) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def _track(data: np.ndarray, parents, backward) -> Tensor:
    out = Tensor(data)
    if any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = tuple(parents)
        out._backward = backward
    return out


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"matmul shapes {a.shape} and {b.shape} do not align")

    def backward(g):
        if a.requires_grad:
            a._receive(g @ b.data.T)
        if b.requires_grad:
            b._receive(a.data.T @ g)

    return _track(a.data @ b.data, (a, b), backward)


def add(a: Tensor, b: Tensor) -> Tensor:
    """Elementwise sum; ``b`` may be a single row broadcast over ``a``'s rows."""
    broadcast = b.shape != a.shape
    if broadcast and not (b.shape == (1, a.shape[1])):
        raise ValueError(f"cannot add shapes {a.shape} and {b.shape}")

    def backward(g):
        if a.requires_grad:
            a._receive(g)
        if b.requires_grad:
            b._receive(g.sum(axis=0, keepdims=True) if broadcast else g)

    return _track(a.data + b.data, (a, b), backward)


def mul(a: Tensor, b: Tensor) -> Tensor:
    """Elementwise product of same-shape tensors (or a 1-row broadcast)."""
    broadcast = b.shape != a.shape
    if broadcast and not (b.shape == (1, a.shape[1])):
        raise ValueError(f"cannot multiply shapes {a.shape} and {b.shape}")

    def backward(g):
        if a.requires_grad:
            a._receive(g * b.data)
        if b.requires_grad:
            gb = g * a.data
            b._receive(gb.sum(axis=0, keepdims=True) if broadcast else gb)

    return _track(a.data * b.data, (a, b), backward)


def scale(a: Tensor, factor: float) -> Tensor:
    factor = float(factor)

    def backward(g):
        if a.requires_grad:
            a._receive(g * factor)

    return _track(a.data * factor, (a,), backward)


def relu(a: Tensor) -> Tensor:
    mask = a.data > 0

    def backward(g):
        if a.requires_grad:
            a._receive(g * mask)

    return _track(np.where(mask, a.data, 0.0), (a,), backward)


def transpose(a: Tensor) -> Tensor:
    def backward(g):
        if a.requires_grad:
            a._receive(g.T)

    return _track(a.data.T.copy(), (a,), backward)


def concat_columns(a: Tensor, b: Tensor) -> Tensor:
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"cannot concatenate rows {a.shape} and {b.shape}")
    split = a.shape[1]

    def backward(g):
        if a.requires_grad:
            a._receive(g[:, :split])
        if b.requires_grad:
            b._receive(g[:, split:])

    return _track(np.hstack([a.data, b.data]), (a, b), backward)


def mean_rows(a: Tensor) -> Tensor:
    """Column means as a single row."""
    n = a.shape[0]

    def backward(g):
        if a.requires_grad:
            a._receive(np.repeat(g, n, axis=0) / n)

    return _track(a.data.mean(axis=0, keepdims=True), (a,), backward)


def softmax_cross_entropy(logits: Tensor, label: int) -> Tensor:
    """Fused log-softmax and negative log-likelihood for one row of logits.

    Numerically stable (max-shifted) and exactly consistent with its own
    gradient ``softmax - onehot``.
    """
    if logits.shape[0] != 1:
        raise ValueError("logits must be a single row")
    classes = logits.shape[1]
    label = int(label)
    if not 0 <= label < classes:
        raise ValueError(f"label {label} outside 0..{classes - 1}")
    z = logits.data[0]
    shift = z - z.max()
    log_norm = math.log(np.exp(shift).sum())
    probs = np.exp(shift - log_norm)
    loss = log_norm - shift[label]

    def backward(g):
        if logits.requires_grad:
            grad = probs.copy()
            grad[label] -= 1.0
            logits._receive(g[0, 0] * grad.reshape(1, -1))

    return _track(np.array([[loss]]), (logits,), backward)
