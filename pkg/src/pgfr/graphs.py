"""Graphs under study (paths, double stars) and their integer Laplacians.

Vertices are 1-based everywhere in the public API.

Double star S(m, n) labels: the n pendants of the second center come first,
then the second center, the first center, and the m pendants of the first
center. For S(m, 2) this puts the pendant pair at 1, 2 and the degree-3
center at 3, which is the layout of the Laplacian displayed for S(m, 2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import InvalidParameter


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[frozenset[int]]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidParameter("a graph needs at least one vertex")
        for e in self.edges:
            if len(e) != 2:
                raise InvalidParameter(f"self-loop or malformed edge {sorted(e)}")
            if not all(1 <= v <= self.vertex_count for v in e):
                raise InvalidParameter(f"edge {sorted(e)} out of range 1..{self.vertex_count}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        seen = set()
        for u, v in edges:
            if u == v:
                raise InvalidParameter(f"self-loop at vertex {u}")
            e = frozenset((u, v))
            if e in seen:
                raise InvalidParameter(f"duplicate edge {sorted(e)}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def n(self) -> int:
        return self.vertex_count

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbours(self, v: int) -> list[int]:
        return sorted(u for e in self.edges if v in e for u in e if u != v)

    def is_connected(self) -> bool:
        seen = {1}
        frontier = [1]
        adj = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.sorted_edges():
            adj[u].append(v)
            adj[v].append(u)
        while frontier:
            v = frontier.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        return len(seen) == self.n

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.sorted_edges()]})

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        obj = json.loads(text)
        try:
            return cls.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidParameter):
                raise
            raise InvalidParameter(f"malformed graph JSON: {exc}") from exc


@dataclass(frozen=True)
class LaplacianMatrix:
    order: int
    entries: tuple[tuple[int, ...], ...]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=float).reshape(self.order, self.order)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def make_path(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def double_star_labels(m: int, n: int) -> dict:
    """Vertex labels of S(m, n): centers and pendant lists."""
    second_pendants = list(range(1, n + 1))
    second, first = n + 1, n + 2
    first_pendants = list(range(n + 3, n + m + 3))
    return {
        "first_center": first,
        "second_center": second,
        "first_pendants": first_pendants,
        "second_pendants": second_pendants,
    }


def make_double_star(m: int, n: int) -> Graph:
    """S(m, n): adjacent centers carrying m and n pendants respectively."""
    if m < 1 or n < 1:
        raise InvalidParameter(f"double star needs m, n >= 1, got ({m}, {n})")
    lab = double_star_labels(m, n)
    edges = [(lab["second_center"], lab["first_center"])]
    edges += [(p, lab["second_center"]) for p in lab["second_pendants"]]
    edges += [(lab["first_center"], p) for p in lab["first_pendants"]]
    return Graph.from_edges(m + n + 2, edges)


def laplacian(g: Graph) -> LaplacianMatrix:
    rows = [[0] * g.n for _ in range(g.n)]
    for u, v in g.sorted_edges():
        rows[u - 1][v - 1] -= 1
        rows[v - 1][u - 1] -= 1
        rows[u - 1][u - 1] += 1
        rows[v - 1][v - 1] += 1
    return LaplacianMatrix(g.n, tuple(tuple(r) for r in rows))


def random_connected_graph(n: int, rng: np.random.Generator, p: float = 0.3) -> Graph:
    """Random spanning tree plus independent extra edges with probability p."""
    order = rng.permutation(n) + 1
    edges = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        edges.add(frozenset((int(order[i]), int(order[j]))))
    for u, v in combinations(range(1, n + 1), 2):
        if frozenset((u, v)) not in edges and rng.random() < p:
            edges.add(frozenset((u, v)))
    return Graph(n, frozenset(edges))
