"""Canonical codes for rooted trees and the three equivalence tests.

A code is a tuple of string tokens built bottom-up: ``(`` [label] sorted
child codes ``)``.  Sorting the children makes it independent of child order,
so two trees share a code exactly when they are isomorphic in the chosen sense.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import UltraSpace, all_balls, spectrum
from .errors import DanglingReference, EquivalenceViolation
from .tree import LabeledRootedTree, RootedTree, build_representing_tree

CanonicalCode = tuple[str, ...]

ROOTED, LABELED, WEAK = "rooted-iso", "labeled-iso", "weak-iso"


def _tokens(tree: RootedTree, kind: str) -> Callable[[int], tuple[str, ...]]:
    if kind == ROOTED:
        return lambda v: ()
    if kind == LABELED:
        return lambda v: (str(tree.labels[v]),)
    ranks = {x: i for i, x in enumerate(sorted(set(tree.labels)))}
    return lambda v: (str(ranks[tree.labels[v]]),)


def node_codes(tree: RootedTree, kind: str = ROOTED) -> list[CanonicalCode]:
    """Canonical code of the subtree below every node."""
    token = _tokens(tree, kind)
    codes: list = [None] * len(tree)
    for v in reversed(tree.preorder):
        kids = sorted(codes[c] for c in tree.children[v])
        codes[v] = ("(",) + token(v) + tuple(t for k in kids for t in k) + (")",)
    return codes


def shape_code(tree: RootedTree) -> CanonicalCode:
    return node_codes(tree, ROOTED)[tree.root]


def labeled_code(tree: LabeledRootedTree) -> CanonicalCode:
    return node_codes(tree, LABELED)[tree.root]


def rank_code(tree: LabeledRootedTree) -> CanonicalCode:
    """Labels replaced by their rank among the tree's distinct labels."""
    return node_codes(tree, WEAK)[tree.root]


def code_str(code: CanonicalCode) -> str:
    return " ".join(code).replace("( ", "(").replace(" )", ")")


def tree_isomorphism(t1: RootedTree, t2: RootedTree, kind: str = ROOTED) -> dict | None:
    """A node bijection t1 -> t2 respecting ``kind``, or None."""
    c1, c2 = node_codes(t1, kind), node_codes(t2, kind)
    if c1[t1.root] != c2[t2.root]:
        return None
    out = {}
    stack = [(t1.root, t2.root)]
    while stack:
        u, v = stack.pop()
        out[u] = v
        k1 = sorted(t1.children[u], key=lambda c: c1[c])
        k2 = sorted(t2.children[v], key=lambda c: c2[c])
        stack.extend(zip(k1, k2))
    return out


@dataclass(frozen=True)
class MorphismWitness:
    """A claimed morphism between the representing trees of two spaces.

    ``node_map`` sends nodes of T_A to nodes of T_B; ``point_map`` is its
    restriction to leaves read as points.  For weak isomorphisms
    ``spectrum_map`` pairs Sp(A) with Sp(B) so that
    d_B(f(x), f(y)) = spectrum_map[d_A(x, y)].
    """

    kind: str
    node_map: dict
    point_map: dict
    spectrum_map: dict | None = field(default=None)


def _witness(kind, A, B, spectrum_map=None):
    ta, tb = build_representing_tree(A), build_representing_tree(B)
    nodes = tree_isomorphism(ta, tb, kind)
    if nodes is None:
        return None
    points = {ta.point_of_leaf(u): tb.point_of_leaf(nodes[u]) for u in ta.leaves}
    return MorphismWitness(kind, nodes, points, spectrum_map)


def exists_ball_preserving_bijection(A: UltraSpace, B: UltraSpace) -> MorphismWitness | None:
    """Ball-preserving bijections exist exactly when the tree shapes agree."""
    return _witness(ROOTED, A, B)


def is_isometric(A: UltraSpace, B: UltraSpace) -> MorphismWitness | None:
    w = _witness(LABELED, A, B)
    if w is not None:
        f = w.point_map
        for x in range(A.n):
            for y in range(A.n):
                if A.d(x, y) != B.d(f[x], f[y]):
                    raise EquivalenceViolation("isometry from labeled tree isomorphism",
                                               {"pair": (x, y)})
    return w


def is_weakly_similar(A: UltraSpace, B: UltraSpace) -> MorphismWitness | None:
    """Weak similarity via rank-normalised labels.

    A strictly increasing bijection between finite chains is unique, so the
    spectrum map is the elementwise pairing of the sorted spectra.
    """
    sa, sb = spectrum(A), spectrum(B)
    if len(sa) != len(sb):
        return None
    psi = dict(zip(sa, sb))
    w = _witness(WEAK, A, B, psi)
    if w is not None:
        f = w.point_map
        for x in range(A.n):
            for y in range(A.n):
                if psi[A.d(x, y)] != B.d(f[x], f[y]):
                    raise EquivalenceViolation("weak similarity from rank codes", {"pair": (x, y)})
    return w


def _is_bijection(mapping: dict, size_from: int, size_to: int) -> bool:
    for k, v in mapping.items():
        if not (isinstance(k, int) and 0 <= k < size_from and isinstance(v, int) and 0 <= v < size_to):
            raise DanglingReference(f"{k} -> {v} refers outside the spaces")
    return (size_from == size_to and len(mapping) == size_from
            and len(set(mapping.values())) == size_to)


def _balls_preserved(A: UltraSpace, B: UltraSpace, f: dict) -> bool:
    balls_a = {b.members for b in all_balls(A)}
    balls_b = {b.members for b in all_balls(B)}
    inv = {v: k for k, v in f.items()}
    return (all(frozenset(f[x] for x in m) in balls_b for m in balls_a)
            and all(frozenset(inv[y] for y in m) in balls_a for m in balls_b))


def verify_witness(witness: MorphismWitness, A: UltraSpace, B: UltraSpace) -> bool:
    """Re-check every defining condition of the claimed morphism pointwise."""
    ta, tb = build_representing_tree(A), build_representing_tree(B)
    f, phi = witness.node_map, witness.point_map
    if not _is_bijection(f, len(ta), len(tb)) or not _is_bijection(phi, A.n, B.n):
        return False
    if f[ta.root] != tb.root:
        return False
    for u in range(len(ta)):
        if u != ta.root and tb.parent[f[u]] != f[ta.parent[u]]:
            return False
    for u in ta.leaves:
        if not tb.is_leaf(f[u]) or tb.point_of_leaf(f[u]) != phi[ta.point_of_leaf(u)]:
            return False
    pairs = [(x, y) for x in range(A.n) for y in range(A.n)]
    if witness.kind == ROOTED:
        return _balls_preserved(A, B, phi)
    if witness.kind == LABELED:
        return (all(ta.labels[u] == tb.labels[f[u]] for u in range(len(ta)))
                and all(A.d(x, y) == B.d(phi[x], phi[y]) for x, y in pairs))
    if witness.kind == WEAK:
        psi = witness.spectrum_map
        sa, sb = spectrum(A), spectrum(B)
        if psi is None or sorted(psi) != list(sa) or sorted(psi.values()) != list(sb):
            return False
        if any(psi[a] >= psi[b] for a, b in zip(sa, sa[1:])):
            return False
        return (all(psi[ta.labels[u]] == tb.labels[f[u]] for u in range(len(ta)))
                and all(psi[A.d(x, y)] == B.d(phi[x], phi[y]) for x, y in pairs))
    raise ValueError(f"unknown morphism kind {witness.kind!r}")

