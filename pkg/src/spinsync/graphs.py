"""Weighted simple graphs and the spinning construction that unrolls them into unweighted ones.

The k-spinning of a weighted graph replaces every vertex by a clique on k
"spin" copies (a fiber) and every weight-w edge by w cyclically shifted
perfect matchings between the two fibers.  Contracting the fibers recovers
the base graph, with weights equal to cross-edge counts divided by k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateOrderError,
    DuplicateEdgeError,
    LoopEdgeError,
    NonUniformFiberError,
    SpinTooSmallError,
    VertexOutOfRangeError,
    ZeroWeightError,
)

__all__ = [
    "WeightedGraph",
    "SpinGraph",
    "DensityReport",
    "spin",
    "quotient_check",
    "density_report",
]


class WeightedGraph:
    """Simple undirected graph on vertices 0..n-1 with positive integer weights.

    Edges are stored canonically as (u, v, w) tuples with u < v, sorted.
    Instances are immutable by convention and hashable, so they can be shared
    across concurrent workers without locking.
    """

    __slots__ = ("n", "edges", "_arrays")

    def __init__(self, n, edges):
        n = int(n)
        if n < 0:
            raise VertexOutOfRangeError("vertex count must be nonnegative")
        seen = set()
        canon = []
        for u, v, w in edges:
            u, v, w = int(u), int(v), int(w)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRangeError(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise LoopEdgeError(f"loop edge at vertex {u}")
            if w < 1:
                raise ZeroWeightError(f"edge ({u},{v}) has weight {w}; weights must be >= 1")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            canon.append((key[0], key[1], w))
        canon.sort()
        self.n = n
        self.edges = tuple(canon)
        self._arrays = None

    @classmethod
    def drop_zero_edges(cls, n, edges):
        """Normalizing constructor: silently omit weight-0 entries instead of rejecting."""
        return cls(n, [e for e in edges if int(e[2]) != 0])

    # -- basic metrics -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    @property
    def max_weight(self) -> int:
        return max((w for _, _, w in self.edges), default=0)

    def edge_arrays(self):
        """Endpoint and weight arrays (u, v, w) with u < v, in canonical order."""
        if self._arrays is None:
            if self.edges:
                arr = np.asarray(self.edges, dtype=np.int64)
                u, v, w = arr[:, 0], arr[:, 1], arr[:, 2]
            else:
                u = v = w = np.zeros(0, dtype=np.int64)
            for a in (u, v, w):
                a.setflags(write=False)
            self._arrays = (u, v, w)
        return self._arrays

    def degrees(self) -> np.ndarray:
        """Unweighted degree of every vertex (number of incident edges)."""
        u, v, _ = self.edge_arrays()
        return np.bincount(u, minlength=self.n) + np.bincount(v, minlength=self.n)

    def weighted_degrees(self) -> np.ndarray:
        u, v, w = self.edge_arrays()
        return np.bincount(u, weights=w, minlength=self.n).astype(np.int64) + np.bincount(
            v, weights=w, minlength=self.n
        ).astype(np.int64)

    def degree(self, v: int) -> int:
        return int(self.degrees()[v])

    def weighted_degree(self, v: int) -> int:
        return int(self.weighted_degrees()[v])

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, WeightedGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m}, w={self.total_weight})"


class SpinGraph:
    """Unweighted graph obtained by spinning a weighted base graph k ways.

    Vertex (u, i) of fiber u and spin i is packed as id = u*k + i, so the
    fiber map is O(1) both ways and file output is stable.
    """

    __slots__ = ("base", "k", "n", "_u", "_v")

    def __init__(self, base: WeightedGraph, k: int, edge_u, edge_v):
        self.base = base
        self.k = int(k)
        self.n = self.k * base.n
        u = np.asarray(edge_u, dtype=np.int64)
        v = np.asarray(edge_v, dtype=np.int64)
        if u.shape != v.shape:
            raise VertexOutOfRangeError("endpoint arrays differ in length")
        if u.size and (u.min() < 0 or v.max() >= self.n):
            raise VertexOutOfRangeError("spin edge endpoint out of range")
        if np.any(u >= v):
            raise LoopEdgeError("spin edges must be canonical (u < v, no loops)")
        order = np.lexsort((v, u))
        self._u = u[order]
        self._v = v[order]
        self._u.setflags(write=False)
        self._v.setflags(write=False)

    # -- structure -----------------------------------------------------------

    @property
    def m(self) -> int:
        return int(self._u.size)

    @property
    def total_weight(self) -> int:
        """Unweighted graph: total weight is the edge count."""
        return self.m

    @property
    def max_weight(self) -> int:
        return 1 if self.m else 0

    def fiber(self, vid: int) -> tuple[int, int]:
        """Map a spin-vertex id back to (base vertex, spin index)."""
        return vid // self.k, vid % self.k

    def vertex_id(self, u: int, i: int) -> int:
        return u * self.k + i

    def edge_arrays(self):
        return self._u, self._v, np.ones(self.m, dtype=np.int64)

    def edge_list(self) -> list[tuple[int, int]]:
        return list(zip(self._u.tolist(), self._v.tolist()))

    def degrees(self) -> np.ndarray:
        return np.bincount(self._u, minlength=self.n) + np.bincount(self._v, minlength=self.n)

    def degree(self, v: int) -> int:
        return int(self.degrees()[v])

    def as_weighted(self) -> WeightedGraph:
        """The same graph as a WeightedGraph with unit weights."""
        return WeightedGraph(self.n, [(int(p), int(q), 1) for p, q in self.edge_list()])

    def __eq__(self, other):
        return (
            isinstance(other, SpinGraph)
            and self.k == other.k
            and self.base == other.base
            and np.array_equal(self._u, other._u)
            and np.array_equal(self._v, other._v)
        )

    def __repr__(self):
        return f"SpinGraph(base_n={self.base.n}, k={self.k}, n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DensityReport:
    """Minimum degree and its two density normalizations.

    strong_density divides by order-1; order_ratio divides by the order
    itself, the convention under which the spun certificates are tabulated.
    """

    min_degree: int
    order: int
    strong_density: Fraction
    order_ratio: Fraction


def spin(g: WeightedGraph, k: int) -> SpinGraph:
    """Build the k-spinning of g.

    Every vertex becomes a k-clique fiber; every edge (u, v, w) with u < v
    becomes, for each spin i of u, the w cross edges (u,i)(v, i+t mod k)
    for t = 0..w-1.  Requires k at least the maximum edge weight, which
    also guarantees the cross matchings never collide.
    """
    k = int(k)
    if k < 1 or k < g.max_weight:
        raise SpinTooSmallError(f"k={k} below max edge weight {g.max_weight}")
    chunks_u, chunks_v = [], []
    if k > 1 and g.n:
        ii, jj = np.triu_indices(k, 1)
        offs = np.arange(g.n, dtype=np.int64) * k
        chunks_u.append((offs[:, None] + ii[None, :]).ravel())
        chunks_v.append((offs[:, None] + jj[None, :]).ravel())
    i = np.arange(k, dtype=np.int64)
    for u, v, w in g.edges:
        t = np.arange(w, dtype=np.int64)
        p = u * k + np.repeat(i, w)
        q = v * k + (np.repeat(i, w) + np.tile(t, k)) % k
        chunks_u.append(p)
        chunks_v.append(q)
    if chunks_u:
        eu = np.concatenate(chunks_u)
        ev = np.concatenate(chunks_v)
    else:
        eu = ev = np.zeros(0, dtype=np.int64)
    return SpinGraph(g, k, eu, ev)


def quotient_check(s: SpinGraph) -> WeightedGraph:
    """Reconstruct the base graph from fiber contraction and verify it.

    Counts cross edges between every fiber pair, divides by k, and rebuilds
    a weighted graph that must equal s.base exactly.  Any count not divisible
    by k, an incomplete fiber clique, or a weight mismatch signals corruption.
    """
    k, nb = s.k, s.base.n
    bu = s._u // k
    bv = s._v // k
    cross = bu != bv
    pair_ids = bu[cross] * nb + bv[cross]
    counts = np.bincount(pair_ids, minlength=nb * nb)
    fiber_counts = np.bincount(bu[~cross], minlength=nb)
    expected_clique = k * (k - 1) // 2
    if np.any(fiber_counts != expected_clique):
        bad = int(np.argmax(fiber_counts != expected_clique))
        raise NonUniformFiberError(f"fiber {bad} is not a complete {k}-clique")
    edges = []
    for pid in np.nonzero(counts)[0]:
        c = int(counts[pid])
        u, v = divmod(int(pid), nb)
        if c % k:
            raise NonUniformFiberError(f"fiber pair ({u},{v}) has {c} cross edges, not a multiple of k={k}")
        edges.append((u, v, c // k))
    rebuilt = WeightedGraph(nb, edges)
    if rebuilt != s.base:
        raise NonUniformFiberError("fiber contraction does not reproduce the base graph")
    return rebuilt


def density_report(g) -> DensityReport:
    """Both density conventions of a graph, computed exactly as rationals.

    For weighted graphs the degree counts incident edges, not weight.
    """
    if g.n < 2:
        raise DegenerateOrderError(f"density undefined for order {g.n}")
    delta = int(g.degrees().min())
    return DensityReport(
        min_degree=delta,
        order=g.n,
        strong_density=Fraction(delta, g.n - 1),
        order_ratio=Fraction(delta, g.n),
    )
