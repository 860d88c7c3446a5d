"""Filtered simplicial complexes of dimension at most two.

Simplices are strictly increasing tuples of vertex ids. A filtration stores
each simplex with the value at which it enters; values are finite,
non-negative, and never smaller than the value of any face.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graphs import AttributedGraph, betweenness_centrality, degree_centrality, shortest_paths

Simplex = tuple[int, ...]


class FiltrationError(ValueError):
    """Invalid simplex, missing face, or non-monotone filtration value."""


class Filtration:
    """An ordered filtered complex with vertices, edges, and triangles.

    Simplices are sorted by (value, dimension, vertex tuple), which is a
    valid filtration order: every face appears before its cofaces.
    """

    __slots__ = ("simplices", "_values")

    def __init__(self, simplices: Iterable[tuple[Simplex, float]]):
        items = []
        for simplex, value in simplices:
            s = tuple(int(v) for v in simplex)
            if not 1 <= len(s) <= 3:
                raise FiltrationError(f"simplex {s} has unsupported dimension")
            if any(b <= a for a, b in zip(s, s[1:])):
                raise FiltrationError(f"simplex {s} is not strictly increasing")
            value = float(value)
            if not math.isfinite(value) or value < 0:
                raise FiltrationError(f"simplex {s} has invalid value {value}")
            items.append((s, value))
        items.sort(key=lambda sv: (sv[1], len(sv[0]), sv[0]))

        values = {}
        for s, value in items:
            if s in values:
                raise FiltrationError(f"duplicate simplex {s}")
            values[s] = value
        for s, value in items:
            if len(s) > 1:
                for face in combinations(s, len(s) - 1):
                    fv = values.get(face)
                    if fv is None:
                        raise FiltrationError(f"simplex {s} is missing face {face}")
                    if fv > value:
                        raise FiltrationError(
                            f"face {face} enters at {fv}, after its coface {s} at {value}"
                        )
        self.simplices = tuple(items)
        self._values = values

    def value_of(self, simplex: Simplex) -> float:
        return self._values[tuple(simplex)]

    def __contains__(self, simplex):
        return tuple(simplex) in self._values

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.simplices == other.simplices

    __hash__ = None

    @property
    def max_value(self) -> float:
        return max((v for _, v in self.simplices), default=0.0)

    @property
    def max_positive_value(self):
        """Largest strictly positive entry value, or None if all are zero."""
        positive = [v for _, v in self.simplices if v > 0]
        return max(positive) if positive else None

    def to_text(self) -> str:
        lines = [" ".join(map(str, s)) + f" {value!r}" for s, value in self.simplices]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Filtration":
        items = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            *verts, value = line.split()
            items.append((tuple(int(v) for v in verts), float(value)))
        return cls(items)


def vr_filtration(dissimilarity, max_dim: int = 2, vertices: Sequence[int] | None = None) -> Filtration:
    """Vietoris-Rips filtration of a dissimilarity matrix.

    Vertices enter at 0, an edge enters at its dissimilarity, and a triangle
    enters at the largest of its three edge values. Entries of +inf mean "no
    bond"; the matrix must be symmetric with a zero diagonal and no negative
    entries.
    """
    d = np.asarray(dissimilarity, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise FiltrationError("dissimilarity matrix must be square")
    n = d.shape[0]
    if not np.array_equal(d, d.T):
        raise FiltrationError("dissimilarity matrix must be symmetric")
    if n and (np.diag(d) != 0).any():
        raise FiltrationError("dissimilarity diagonal must be zero")
    finite = d[np.isfinite(d)]
    if (finite < 0).any():
        raise FiltrationError("dissimilarity entries must be non-negative")
    if not 0 <= max_dim <= 2:
        raise FiltrationError("max_dim must be 0, 1, or 2")

    if vertices is None:
        labels = list(range(n))
    else:
        labels = [int(v) for v in vertices]
        if len(labels) != n or len(set(labels)) != n:
            raise FiltrationError("vertex labels must be distinct and match the matrix size")
        if any(b <= a for a, b in zip(labels, labels[1:])):
            raise FiltrationError("vertex labels must be strictly increasing")

    items = [((labels[i],), 0.0) for i in range(n)]
    if max_dim >= 1:
        for i in range(n):
            for j in range(i + 1, n):
                if math.isfinite(d[i, j]):
                    items.append(((labels[i], labels[j]), float(d[i, j])))
    if max_dim >= 2:
        for i in range(n):
            for j in range(i + 1, n):
                if not math.isfinite(d[i, j]):
                    continue
                for k in range(j + 1, n):
                    if math.isfinite(d[i, k]) and math.isfinite(d[j, k]):
                        value = max(d[i, j], d[i, k], d[j, k])
                        items.append(((labels[i], labels[j], labels[k]), float(value)))
    return Filtration(items)


@dataclass(frozen=True)
class LandmarkSet:
    """A chosen landmark subset of a graph's nodes."""

    strategy: str
    fraction: float
    indices: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("landmark indices must be distinct")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("landmark indices must be sorted")

    def __len__(self):
        return len(self.indices)


LANDMARK_STRATEGIES = ("random", "degree", "betweenness")


def select_landmarks(g: AttributedGraph, strategy: str, fraction: float, seed: int = 0) -> LandmarkSet:
    """Pick ``ceil(fraction * N)`` landmark nodes, clamped to ``1..N``.

    ``random`` samples without replacement with the given seed; ``degree``
    and ``betweenness`` take the top-scoring nodes, breaking score ties by
    ascending node index.
    """
    if strategy not in LANDMARK_STRATEGIES:
        raise ValueError(f"unknown landmark strategy {strategy!r}")
    if not 0 < fraction <= 1:
        raise ValueError("landmark fraction must be in (0, 1]")
    n = g.node_count
    size = min(max(math.ceil(fraction * n), 1), n)
    if strategy == "random":
        rng = np.random.default_rng(seed)
        chosen = rng.choice(n, size=size, replace=False)
    else:
        score = degree_centrality(g) if strategy == "degree" else betweenness_centrality(g)
        chosen = sorted(range(n), key=lambda v: (-score[v], v))[:size]
    return LandmarkSet(strategy, float(fraction), tuple(sorted(int(v) for v in chosen)))


def _landmark_indices(landmarks) -> tuple[int, ...]:
    if isinstance(landmarks, LandmarkSet):
        return landmarks.indices
    return tuple(sorted(int(v) for v in landmarks))


def weak_witnesses(simplex: Simplex, distances, landmarks) -> tuple[int, ...]:
    """Nodes that witness ``simplex`` with respect to a landmark set.

    A node ``w`` is a weak witness when no landmark outside the simplex is
    closer to ``w`` than the farthest simplex member, i.e. when
    ``max(d[w, v] for v in simplex) <= min(d[w, u] for u in rest)``. An
    unreachable simplex member disqualifies ``w``; an empty remainder makes
    the condition vacuously true (reachability still required).
    """
    d = np.asarray(distances, dtype=float)
    members = tuple(int(v) for v in simplex)
    lm = _landmark_indices(landmarks)
    if not set(members) <= set(lm):
        raise ValueError(f"simplex {members} is not a subset of the landmark set")
    rest = [u for u in lm if u not in members]
    out = []
    for w in range(d.shape[0]):
        reach = max(d[w, v] for v in members)
        if not math.isfinite(reach):
            continue
        guard = min((d[w, u] for u in rest), default=math.inf)
        if reach <= guard:
            out.append(w)
    return tuple(out)


def witness_filtration(g: AttributedGraph, landmarks, max_dim: int = 2) -> Filtration:
    """Weak-witness filtration of a graph under shortest-path distances.

    Every graph node may act as a witness. A simplex on landmark nodes
    enters at the smallest over its witnesses of the farthest member
    distance; landmark vertices themselves enter at 0. Simplices whose
    faces are never witnessed are dropped, and each kept value is raised
    to the largest value among its faces so the result is a filtration.
    """
    lm = _landmark_indices(landmarks)
    if not lm:
        raise ValueError("landmark set is empty")
    if any(not 0 <= v < g.node_count for v in lm):
        raise ValueError("landmark outside the graph's node range")
    if not 0 <= max_dim <= 2:
        raise ValueError("max_dim must be 0, 1, or 2")

    dist = shortest_paths(g)
    dl = dist[:, lm]  # witness rows over landmark columns
    n, m = dl.shape

    # per witness, the (up to) four nearest landmark columns; a simplex has
    # at most three members, so the nearest non-member is always among them
    nearest = np.argsort(dl, axis=1, kind="stable")[:, : min(4, m)]

    raw = {}
    for size in range(1, min(max_dim + 1, m) + 1):
        for cols in combinations(range(m), size):
            in_simplex = set(cols)
            best = math.inf
            for w in range(n):
                row = dl[w]
                reach = max(row[c] for c in cols)
                if not math.isfinite(reach):
                    continue
                guard = math.inf
                for c in nearest[w]:
                    if c not in in_simplex:
                        guard = row[c]
                        break
                if reach <= guard:
                    best = min(best, reach)
            if math.isfinite(best):
                raw[tuple(lm[c] for c in cols)] = best

    items = []
    kept = {}
    for size in range(1, 4):
        for simplex, value in raw.items():
            if len(simplex) != size:
                continue
            if size == 1:
                kept[simplex] = 0.0  # landmarks are present from the start
                items.append((simplex, 0.0))
                continue
            faces = list(combinations(simplex, size - 1))
            if any(face not in kept for face in faces):
                continue
            value = max(value, max(kept[face] for face in faces))
            kept[simplex] = value
            items.append((simplex, value))
    return Filtration(items)
