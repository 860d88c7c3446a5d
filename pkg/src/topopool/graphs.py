"""Attributed graphs and the structural primitives built on them.

Graphs are undirected and weighted, carry a dense node-feature matrix and a
class label, and are immutable after construction, so instances are safe to
share across threads and to map over in parallel.
"""
from __future__ import annotations

import heapq
import math
from collections import deque
from typing import Iterable, Sequence

import numpy as np

INFINITY = math.inf


class GraphError(ValueError):
    """Malformed graph structure or invalid node reference."""


class AttributedGraph:
    """Undirected attributed graph on nodes ``0..node_count-1``.

    Parameters
    ----------
    node_count : int
        Number of nodes N.
    edges : iterable
        Items are ``(u, v)`` or ``(u, v, weight)``. Pairs are unordered,
        weights must be positive (default 1), self-loops are rejected.
    features : array-like of shape (N, F), optional
        Dense node-feature matrix. Defaults to an (N, 0) matrix.
    label : int
        Class index of the graph.
    """

    __slots__ = ("node_count", "edges", "features", "label", "_adjacency")

    def __init__(self, node_count, edges=(), features=None, label=0):
        node_count = int(node_count)
        if node_count <= 0:
            raise GraphError("node_count must be positive")
        self.node_count = node_count

        edge_map = {}
        for item in edges:
            if len(item) == 2:
                u, v = item
                w = 1.0
            else:
                u, v, w = item
                w = float(w)
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop on node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphError(f"edge ({u}, {v}) references a node outside 0..{node_count - 1}")
            if not w > 0:
                raise GraphError(f"edge ({u}, {v}) has non-positive weight {w}")
            edge_map[(u, v) if u < v else (v, u)] = w
        self.edges = edge_map

        if features is None:
            features = np.zeros((node_count, 0))
        feats = np.array(features, dtype=float)
        if feats.ndim != 2 or feats.shape[0] != node_count:
            raise GraphError(f"feature matrix must have {node_count} rows")
        feats.flags.writeable = False
        self.features = feats
        self.label = int(label)

        adjacency = [[] for _ in range(node_count)]
        for (u, v), w in edge_map.items():
            adjacency[u].append((v, w))
            adjacency[v].append((u, w))
        self._adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def feature_dim(self) -> int:
        return self.features.shape[1]

    def neighbors(self, u: int):
        """Sorted ``(neighbor, weight)`` pairs of node ``u``."""
        return self._adjacency[u]

    def is_unit_weighted(self) -> bool:
        return all(w == 1.0 for w in self.edges.values())

    def adjacency_matrix(self) -> np.ndarray:
        """Dense symmetric weighted adjacency, no self-loops."""
        a = np.zeros((self.node_count, self.node_count))
        for (u, v), w in self.edges.items():
            a[u, v] = w
            a[v, u] = w
        return a

    def __eq__(self, other):
        if not isinstance(other, AttributedGraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.edges == other.edges
            and self.label == other.label
            and self.features.shape == other.features.shape
            and np.array_equal(self.features, other.features)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"AttributedGraph(nodes={self.node_count}, edges={self.edge_count}, "
            f"feature_dim={self.feature_dim}, label={self.label})"
        )


def single_source_distances(g: AttributedGraph, source: int) -> np.ndarray:
    """Shortest-path distances from ``source``; unreachable nodes get +inf.

    Breadth-first search for unit weights, Dijkstra otherwise.
    """
    if not 0 <= source < g.node_count:
        raise GraphError(f"source {source} outside 0..{g.node_count - 1}")
    dist = np.full(g.node_count, INFINITY)
    dist[source] = 0.0
    if g.is_unit_weighted():
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v, _ in g.neighbors(u):
                if math.isinf(dist[v]):
                    dist[v] = dist[u] + 1.0
                    queue.append(v)
    else:
        heap = [(0.0, source)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w in g.neighbors(u):
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
    return dist


def shortest_paths(g: AttributedGraph) -> np.ndarray:
    """All-pairs shortest-path distance matrix with +inf for unreachable pairs."""
    return np.stack([single_source_distances(g, s) for s in range(g.node_count)])


def k_hop_neighborhood(g: AttributedGraph, u: int, k: int):
    """Induced subgraph on every node within distance ``k`` of ``u``.

    Returns
    -------
    (AttributedGraph, tuple of int)
        The induced subgraph and the original node index of each of its
        nodes (position ``i`` holds the original id of subgraph node ``i``).
    """
    if k < 1:
        raise GraphError("k must be >= 1")
    dist = single_source_distances(g, u)
    nodes = tuple(int(v) for v in range(g.node_count) if dist[v] <= k)
    return induced_subgraph(g, nodes), nodes


def induced_subgraph(g: AttributedGraph, nodes: Sequence[int]) -> AttributedGraph:
    """Subgraph on ``nodes`` (kept in the given order) with remapped indices."""
    local = {int(v): i for i, v in enumerate(nodes)}
    if len(local) != len(nodes):
        raise GraphError("duplicate node in induced subgraph selection")
    edges = [
        (local[a], local[b], w)
        for (a, b), w in g.edges.items()
        if a in local and b in local
    ]
    return AttributedGraph(
        len(nodes), edges, g.features[list(nodes)], label=g.label
    )


def degree_centrality(g: AttributedGraph) -> np.ndarray:
    """Weighted degrees: row sums of the adjacency matrix."""
    deg = np.zeros(g.node_count)
    for (u, v), w in g.edges.items():
        deg[u] += w
        deg[v] += w
    return deg


def betweenness_centrality(g: AttributedGraph) -> np.ndarray:
    """Unnormalized shortest-path betweenness (Brandes accumulation).

    Each unordered node pair contributes once; contributions are computed
    per connected component. Weighted graphs use Dijkstra orderings.
    """
    n = g.node_count
    scores = np.zeros(n)
    unit = g.is_unit_weighted()
    for s in range(n):
        sigma = [0.0] * n
        preds = [[] for _ in range(n)]
        dist = [INFINITY] * n
        sigma[s] = 1.0
        dist[s] = 0.0
        stack = []
        if unit:
            queue = deque([s])
            while queue:
                u = queue.popleft()
                stack.append(u)
                for v, _ in g.neighbors(u):
                    if math.isinf(dist[v]):
                        dist[v] = dist[u] + 1.0
                        queue.append(v)
                    if dist[v] == dist[u] + 1.0:
                        sigma[v] += sigma[u]
                        preds[v].append(u)
        else:
            seen = [False] * n
            heap = [(0.0, s)]
            while heap:
                d, u = heapq.heappop(heap)
                if seen[u]:
                    continue
                seen[u] = True
                stack.append(u)
                for v, w in g.neighbors(u):
                    nd = d + w
                    if nd < dist[v]:
                        dist[v] = nd
                        sigma[v] = sigma[u]
                        preds[v] = [u]
                        heapq.heappush(heap, (nd, v))
                    elif nd == dist[v] and not seen[v]:
                        sigma[v] += sigma[u]
                        preds[v].append(u)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
            if w != s:
                scores[w] += delta[w]
    # undirected: every pair was counted from both endpoints
    return scores / 2.0
