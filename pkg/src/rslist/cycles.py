"""Cycle space of the complete graph K_t over GF(2).

Vertices are labelled 1..t.  Edges are ordered by their larger endpoint and
then by their smaller one, so for t = 4 the order is
12 < 13 < 23 < 14 < 24 < 34.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .galois.gf2 import bits_to_int, gf2_in_span, gf2_rank

Edge = Tuple[int, int]


@dataclass(frozen=True)
class EdgeOrder:
    t: int
    edges: Tuple[Edge, ...]

    def index(self, edge: Sequence[int]) -> int:
        return _edge_index(self.t)[normalize_edge(edge)]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


def normalize_edge(edge: Sequence[int]) -> Edge:
    a, b = edge
    if a == b:
        raise ValueError("an edge needs two distinct vertices")
    return (a, b) if a < b else (b, a)


def edge_key(edge: Edge) -> Tuple[int, int]:
    return (max(edge), min(edge))


@lru_cache(maxsize=None)
def _edges(t: int) -> Tuple[Edge, ...]:
    return tuple(sorted(combinations(range(1, t + 1), 2), key=edge_key))


@lru_cache(maxsize=None)
def _edge_index(t: int) -> Dict[Edge, int]:
    return {e: i for i, e in enumerate(_edges(t))}


def edge_order(t: int) -> EdgeOrder:
    if t < 2:
        raise ValueError("K_t needs t >= 2")
    return EdgeOrder(t, _edges(t))


def triangle_vector(t: int, tri: Sequence[int]) -> Tuple[int, ...]:
    i, j, l = sorted(tri)
    idx = _edge_index(t)
    v = [0] * len(idx)
    for e in ((i, j), (i, l), (j, l)):
        v[idx[e]] = 1
    return tuple(v)


def basis_row_pairs(t: int) -> List[Edge]:
    """Row order of B_t: pairs {i, j} of [t-1], in the same edge order."""
    return list(_edges(t - 1)) if t >= 3 else []


@lru_cache(maxsize=None)
def _basis(t: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(triangle_vector(t, (i, j, t)) for i, j in basis_row_pairs(t))


def cycle_basis_matrix(t: int) -> List[List[int]]:
    """B_t: row {i, j} is the triangle on i, j, t."""
    if t < 3:
        raise ValueError("the triangle basis needs t >= 3")
    return [list(r) for r in _basis(t)]


def is_eulerian(g: Sequence[int], t: int) -> bool:
    edges = _edges(t)
    if len(g) != len(edges):
        raise ValueError("vector length does not match C(t, 2)")
    deg = [0] * (t + 1)
    for bit, (a, b) in zip(g, edges):
        if bit & 1:
            deg[a] += 1
            deg[b] += 1
    return all(d % 2 == 0 for d in deg)


def is_in_cycle_space(g: Sequence[int], t: int) -> bool:
    """Membership in the GF(2) row space of B_t."""
    n = t * (t - 1) // 2
    if len(g) != n:
        raise ValueError("vector length does not match C(t, 2)")
    if any(x not in (0, 1) for x in g):
        raise ValueError("graph vectors are binary")
    if t < 3:
        return not any(g)
    return gf2_in_span(bits_to_int(g), [bits_to_int(r) for r in _basis(t)])


def has_common_vertex(edges: Sequence[Edge]) -> bool:
    common = set(edges[0])
    for e in edges[1:]:
        common &= set(e)
    return bool(common)


def b4_columns_independent(labels: Sequence[Sequence[int]]) -> bool:
    """GF(2)-independence of the B_4 columns labelled by three distinct edges."""
    edges = [normalize_edge(e) for e in labels]
    if len(edges) != 3 or len(set(edges)) != 3:
        raise ValueError("need three distinct edges")
    idx = _edge_index(4)
    B = _basis(4)
    cols = [bits_to_int([row[idx[e]] for row in B]) for e in edges]
    return gf2_rank(cols) == 3


def render_binary(M: Sequence[Sequence[int]]) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in M)
