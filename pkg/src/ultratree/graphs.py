"""Diametrical and level graphs, multipartite structure, Hamilton cycles.

The Hamilton searches are exhaustive backtracking over vertex orders and are
only meant for desk-scale certification (default cap: 9 vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import UltraSpace, as_rational, spectrum
from .errors import (
    NotCompleteMultipartite,
    NotInSpectrum,
    TooFewParts,
    TooLarge,
    TooSmall,
    ZeroLevel,
)

BRUTE_FORCE_LIMIT = 9


def _pair(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        vs = set(self.vertices)
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if u not in vs or v not in vs:
                raise ValueError(f"edge {(u, v)} leaves the vertex set")

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return cls(tuple(sorted(set(vertices))), frozenset(_pair(u, v) for u, v in edges))

    def has_edge(self, u, v) -> bool:
        return _pair(u, v) in self.edges

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)

    def components(self) -> list[frozenset[int]]:
        """Connected components, ordered by smallest member."""
        adj = self.adjacency()
        seen, out = set(), []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = {s}, [s]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def induced(self, subset: Iterable[int]) -> "SimpleGraph":
        keep = set(subset)
        return SimpleGraph(tuple(v for v in self.vertices if v in keep),
                           frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def complement(self) -> "SimpleGraph":
        vs = self.vertices
        return SimpleGraph(vs, frozenset((u, v) for i, u in enumerate(vs) for v in vs[i + 1:]
                                         if (u, v) not in self.edges))


@dataclass(frozen=True)
class MultipartiteDecomposition:
    parts: tuple[frozenset[int], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class WeightedClique:
    vertices: tuple[int, ...]
    weight: dict

    def w(self, u, v) -> Fraction:
        return self.weight[_pair(u, v)]

    @property
    def max_weight(self) -> Fraction:
        return max(self.weight.values())


def _points(space: UltraSpace, subset):
    return tuple(range(space.n)) if subset is None else tuple(sorted(set(subset)))


def diametrical_graph(space: UltraSpace, subset: Iterable[int] | None = None) -> SimpleGraph:
    """Pairs at distance exactly the diameter (of ``subset`` when given).

    Vertex ids are those of ``space`` so the result can be used on a subset
    without renumbering.
    """
    pts = _points(space, subset)
    if len(pts) < 2:
        raise TooSmall("the diametrical graph needs at least two points")
    D = space.dist
    diam = max(D[a][b] for a in pts for b in pts)
    return SimpleGraph(pts, frozenset((a, b) for i, a in enumerate(pts) for b in pts[i + 1:]
                                      if D[a][b] == diam))


def level_graph(space: UltraSpace, t) -> SimpleGraph:
    t = as_rational(t)
    if t == 0:
        raise ZeroLevel("level 0 does not define a graph")
    if t not in spectrum(space):
        raise NotInSpectrum(f"{t} is not a distance of the space")
    n, D = space.n, space.dist
    return SimpleGraph(tuple(range(n)), frozenset((a, b) for a in range(n) for b in range(a + 1, n)
                                                  if D[a][b] == t))


def prune_isolated(graph: SimpleGraph) -> SimpleGraph:
    touched = {v for e in graph.edges for v in e}
    return graph.induced(touched)


def multipartite_parts(graph: SimpleGraph) -> MultipartiteDecomposition:
    """The unique partition making ``graph`` complete multipartite.

    Parts are the connected components of the complement.  A graph with no
    edges comes back as a single part; callers wanting "complete multipartite"
    in the strict sense should also require ``k >= 2``.
    """
    if not graph.vertices:
        raise NotCompleteMultipartite("empty graph")
    adj = graph.adjacency()
    vs = graph.vertices
    # components of the complement, without materialising it
    unvisited = set(vs)
    parts = []
    while unvisited:
        s = min(unvisited)
        unvisited.discard(s)
        comp, stack = {s}, [s]
        while stack:
            u = stack.pop()
            nxt = [w for w in unvisited if w not in adj[u]]
            for w in nxt:
                unvisited.discard(w)
                comp.add(w)
                stack.append(w)
        parts.append(frozenset(comp))
    parts.sort(key=min)
    where = {v: i for i, p in enumerate(parts) for v in p}
    for u, v in graph.edges:
        if where[u] == where[v]:
            raise NotCompleteMultipartite(f"edge {(u, v)} lies inside a part")
    expected = (len(vs) * (len(vs) - 1) - sum(len(p) * (len(p) - 1) for p in parts)) // 2
    if len(graph.edges) != expected:
        raise NotCompleteMultipartite("some cross-part pair is not an edge")
    return MultipartiteDecomposition(tuple(parts))


def is_complete_multipartite(graph: SimpleGraph, k: int | None = None) -> bool:
    """Complete k'-partite for some k' >= 2 (or exactly ``k`` when given)."""
    try:
        parts = multipartite_parts(graph)
    except NotCompleteMultipartite:
        return False
    return parts.k >= 2 and (k is None or parts.k == k)


def weighted_clique(space: UltraSpace, subset: Iterable[int] | None = None) -> WeightedClique:
    pts = _points(space, subset)
    if len(pts) < 2:
        raise TooSmall("a weighted clique needs at least two vertices")
    D = space.dist
    return WeightedClique(pts, {(a, b): D[a][b] for i, a in enumerate(pts) for b in pts[i + 1:]})


def _check_size(n, limit):
    if n < 3:
        raise TooSmall("a Hamilton cycle needs at least three vertices")
    if limit is not None and n > limit:
        raise TooLarge(f"{n} vertices exceeds the brute-force limit {limit}")


def _search(vertices, edge_ok, score=None, budget=None):
    """Lexicographically first Hamilton cycle ``(v0, ...)`` with v0 fixed.

    Orientation is canonicalised by requiring the second vertex to be smaller
    than the last one.  ``score(u, v)`` adds to a running total that must end
    exactly at ``budget`` and never exceed it.
    """
    n = len(vertices)
    first = vertices[0]
    rest = vertices[1:]
    order = [first]
    used = {first}

    def close(total):
        if order[1] > order[-1]:
            return False
        if not edge_ok(order[-1], first):
            return False
        if score is None:
            return True
        return total + score(order[-1], first) == budget

    def rec(total):
        if len(order) == n:
            return close(total)
        last = order[-1]
        for v in rest:
            if v in used or not edge_ok(last, v):
                continue
            step = total
            if score is not None:
                step += score(last, v)
                if step > budget:
                    continue
            order.append(v)
            used.add(v)
            if rec(step):
                return True
            order.pop()
            used.discard(v)
        return False

    return tuple(order) if rec(0) else None


def hamilton_cycle_with_k_max_edges(clique: WeightedClique, k: int,
                                    limit: int | None = BRUTE_FORCE_LIMIT):
    """A Hamilton cycle with exactly ``k`` edges of maximal weight, or None."""
    _check_size(len(clique.vertices), limit)
    top = clique.max_weight
    return _search(clique.vertices, lambda u, v: True,
                   score=lambda u, v: 1 if clique.w(u, v) == top else 0, budget=k)


def constant_weight_hamilton_cycle(clique: WeightedClique, limit: int | None = BRUTE_FORCE_LIMIT):
    """A Hamilton cycle all of whose edges share one weight, or None.

    Tries every weight that occurs, not just the maximal one.
    """
    _check_size(len(clique.vertices), limit)
    for t in sorted(set(clique.weight.values())):
        cyc = _search(clique.vertices, lambda u, v, t=t: clique.w(u, v) == t)
        if cyc is not None:
            return cyc
    return None


def is_hamiltonian(graph: SimpleGraph, limit: int | None = BRUTE_FORCE_LIMIT):
    """``(True, cycle)`` or ``(False, None)``."""
    _check_size(len(graph.vertices), limit)
    adj = graph.adjacency()
    cyc = _search(graph.vertices, lambda u, v: v in adj[u])
    return cyc is not None, cyc


def diametrical_hamiltonicity_by_parts(parts: MultipartiteDecomposition) -> bool:
    """Every part holds at most half of all vertices."""
    sizes = parts.sizes
    total = sum(sizes)
    if len(sizes) < 2 or total < 3:
        raise TooFewParts("need at least two parts and three vertices")
    return all(2 * s <= total for s in sizes)


def satisfies_dirac(graph: SimpleGraph) -> bool:
    n = len(graph.vertices)
    adj = graph.adjacency()
    return n >= 3 and all(2 * len(adj[v]) >= n for v in graph.vertices)
