"""Persistent homology of filtered complexes in dimensions 0 and 1.

Two routes are provided: boundary-matrix column reduction over GF(2) for
both dimensions, and a union-find sweep that recovers the dimension-0
diagram alone. They must agree; tests rely on that.
"""
from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Mapping

from .complexes import Filtration

INFINITY = math.inf


class PersistenceDiagram:
    """Birth/death multisets per homology dimension.

    Points are ``(birth, death)`` with ``death > birth`` (death may be
    +inf); zero-persistence pairs are never stored. ``scale`` records the
    largest positive value of the source filtration, or None when every
    simplex entered at 0.
    """

    __slots__ = ("_points", "scale")

    def __init__(self, points: Mapping[int, Iterable[tuple]], scale=None):
        store = {}
        for dim, pts in points.items():
            dim = int(dim)
            if dim not in (0, 1):
                raise ValueError(f"unsupported homology dimension {dim}")
            clean = []
            for birth, death in pts:
                birth, death = float(birth), float(death)
                if not (math.isfinite(birth) and birth >= 0):
                    raise ValueError(f"invalid birth {birth}")
                if not death > birth:
                    raise ValueError(f"death {death} must exceed birth {birth}")
                clean.append((birth, death))
            store[dim] = tuple(sorted(clean))
        self._points = store
        self.scale = None if scale is None else float(scale)

    def points(self, dim: int) -> tuple:
        return self._points.get(dim, ())

    @property
    def dimensions(self) -> tuple:
        return tuple(sorted(self._points))

    def count(self, dim: int) -> int:
        return len(self.points(dim))

    def total_points(self) -> int:
        return sum(len(v) for v in self._points.values())

    def __eq__(self, other):
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        dims = set(self._points) | set(other._points)
        return all(self.points(d) == other.points(d) for d in dims)

    __hash__ = None

    def __repr__(self):
        counts = {d: len(p) for d, p in self._points.items()}
        return f"PersistenceDiagram(counts={counts}, scale={self.scale})"

    def to_csv(self) -> str:
        lines = ["dim,birth,death"]
        for dim in self.dimensions:
            for birth, death in self.points(dim):
                d = "inf" if math.isinf(death) else repr(death)
                lines.append(f"{dim},{birth!r},{d}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, scale=None) -> "PersistenceDiagram":
        pts = {0: [], 1: []}
        rows = [r.strip() for r in text.splitlines() if r.strip()]
        for row in rows:
            if row.lower().startswith("dim"):
                continue
            dim, birth, death = row.split(",")
            pts[int(dim)].append((float(birth), float(death)))
        return cls(pts, scale=scale)


def _as_filtration(filtration) -> Filtration:
    if isinstance(filtration, Filtration):
        return filtration
    return Filtration(filtration)


def reduce_boundary(filtration) -> PersistenceDiagram:
    """Diagram via GF(2) boundary-matrix column reduction.

    Columns are processed in filtration order; each is XOR-reduced against
    earlier columns sharing its lowest row until empty or its low is fresh.
    A fresh low pairs the two simplices; surviving creators in dimensions
    0 and 1 become essential points dying at +inf.
    """
    filtration = _as_filtration(filtration)
    order = {s: i for i, (s, _) in enumerate(filtration.simplices)}

    columns = []
    pivot_of_row = {}
    for j, (simplex, _) in enumerate(filtration.simplices):
        if len(simplex) == 1:
            col = set()
        else:
            col = {order[f] for f in combinations(simplex, len(simplex) - 1)}
        while col:
            low = max(col)
            owner = pivot_of_row.get(low)
            if owner is None:
                pivot_of_row[low] = j
                break
            col ^= columns[owner]
        columns.append(col)

    points = {0: [], 1: []}
    for low, j in pivot_of_row.items():
        born, birth = filtration.simplices[low]
        _, death = filtration.simplices[j]
        dim = len(born) - 1
        if dim <= 1 and death > birth:
            points[dim].append((birth, death))
    for j, (simplex, value) in enumerate(filtration.simplices):
        dim = len(simplex) - 1
        if dim <= 1 and not columns[j] and j not in pivot_of_row:
            points[dim].append((value, INFINITY))
    return PersistenceDiagram(points, scale=filtration.max_positive_value)


def h0_union_find(filtration) -> PersistenceDiagram:
    """Dimension-0 diagram via union-find with the elder rule.

    Edges are swept in filtration order; merging two components kills the
    younger one, where age is the filtration position of the component's
    creating vertex. That matches the canonical pairing of column reduction.
    """
    filtration = _as_filtration(filtration)
    parent = {}
    birth = {}
    arrival = {}

    def find(v):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    points = []
    for position, (simplex, value) in enumerate(filtration.simplices):
        if len(simplex) == 1:
            v = simplex[0]
            parent[v] = v
            birth[v] = value
            arrival[v] = position
        elif len(simplex) == 2:
            ru, rv = find(simplex[0]), find(simplex[1])
            if ru == rv:
                continue
            # elder rule: the component born earlier survives
            if (birth[ru], arrival[ru]) <= (birth[rv], arrival[rv]):
                elder, younger = ru, rv
            else:
                elder, younger = rv, ru
            if value > birth[younger]:
                points.append((birth[younger], value))
            parent[younger] = elder
    for v in parent:
        if parent[v] == v:
            points.append((birth[v], INFINITY))
    return PersistenceDiagram({0: points, 1: []}, scale=filtration.max_positive_value)
