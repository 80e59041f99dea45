"""Representing trees of finite ultrametric spaces, and the way back.

Nodes are integers ``0..m-1``.  Trees built from a space are numbered in
preorder with the root at 0 and children ordered by their smallest point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .core import ZERO, Ball, UltraSpace, default_names, spectrum, validate
from .errors import (
    InvalidTree,
    NonDecreasingLabels,
    NonzeroLeaf,
    NotALeaf,
    SizeCapExceeded,
    UnaryNode,
    ZeroInternal,
)
from .graphs import diametrical_graph, multipartite_parts


@dataclass(frozen=True)
class RootedTree:
    """An unlabeled rooted tree given by child lists."""

    children: tuple[tuple[int, ...], ...]
    root: int = 0

    def __post_init__(self):
        m = len(self.children)
        if not 0 <= self.root < m:
            raise InvalidTree("root is not a node")
        seen_as_child = [0] * m
        for kids in self.children:
            for c in kids:
                if not 0 <= c < m:
                    raise InvalidTree(f"child {c} is not a node")
                seen_as_child[c] += 1
        if seen_as_child[self.root]:
            raise InvalidTree("the root cannot be a child")
        for v in range(m):
            if v != self.root and seen_as_child[v] != 1:
                raise InvalidTree(f"node {v} must have exactly one parent")
        if len(self.preorder) != m:
            raise InvalidTree("tree is not connected")

    @classmethod
    def single(cls) -> "RootedTree":
        return cls(((),))

    def __len__(self):
        return len(self.children)

    @cached_property
    def preorder(self) -> tuple[int, ...]:
        out, stack, seen = [], [self.root], set()
        while stack:
            v = stack.pop()
            if v in seen:
                raise InvalidTree("cycle")
            seen.add(v)
            out.append(v)
            stack.extend(reversed(self.children[v]))
        return tuple(out)

    @cached_property
    def parent(self) -> tuple[int | None, ...]:
        par: list[int | None] = [None] * len(self.children)
        for v, kids in enumerate(self.children):
            for c in kids:
                par[c] = v
        return tuple(par)

    @cached_property
    def level(self) -> tuple[int, ...]:
        lev = [0] * len(self.children)
        for v in self.preorder:
            for c in self.children[v]:
                lev[c] = lev[v] + 1
        return tuple(lev)

    @property
    def height(self) -> int:
        return max(self.level)

    def out_degree(self, v) -> int:
        return len(self.children[v])

    def is_leaf(self, v) -> bool:
        return not self.children[v]

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in self.preorder if not self.children[v])

    @cached_property
    def internal(self) -> tuple[int, ...]:
        return tuple(v for v in self.preorder if self.children[v])

    @cached_property
    def leaf_descendants(self) -> tuple[tuple[int, ...], ...]:
        """Leaves below each node, in preorder."""
        out: list = [None] * len(self.children)
        for v in reversed(self.preorder):
            kids = self.children[v]
            out[v] = (v,) if not kids else tuple(x for c in kids for x in out[c])
        return tuple(out)

    def subtree_nodes(self, v) -> list[int]:
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    def path(self, u, v) -> list[int]:
        """Nodes on the path from ``u`` to ``v``, both included."""
        up_u, x = [u], u
        while x != self.root:
            x = self.parent[x]
            up_u.append(x)
        pos = {x: i for i, x in enumerate(up_u)}
        up_v, x = [v], v
        while x not in pos:
            x = self.parent[x]
            up_v.append(x)
        return up_u[:pos[x] + 1] + up_v[-2::-1]

    def lca(self, u, v) -> int:
        lev, par = self.level, self.parent
        while lev[u] > lev[v]:
            u = par[u]
        while lev[v] > lev[u]:
            v = par[v]
        while u != v:
            u, v = par[u], par[v]
        return u

    def relabel(self, labels: Sequence) -> "LabeledRootedTree":
        return LabeledRootedTree(self.children, self.root, tuple(Fraction(x) for x in labels))


@dataclass(frozen=True)
class LabeledRootedTree(RootedTree):
    """Rooted tree with a nonnegative rational label on every node.

    ``members`` (the leaf-point set of every node) and ``names`` are carried
    along when the tree was built from a space.
    """

    labels: tuple[Fraction, ...] = ()
    members: tuple[frozenset[int], ...] | None = None
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        super().__post_init__()
        if len(self.labels) != len(self.children):
            raise InvalidTree("one label per node is required")
        if any(x < 0 for x in self.labels):
            raise InvalidTree("labels must be nonnegative")

    @classmethod
    def single(cls) -> "LabeledRootedTree":
        return cls(((),), 0, (ZERO,))

    def shape(self) -> RootedTree:
        return RootedTree(self.children, self.root)

    def point_of_leaf(self, v) -> int:
        if self.children[v]:
            raise NotALeaf(f"node {v} is internal")
        if self.members is not None:
            (p,) = self.members[v]
            return p
        return self.leaves.index(v)


@dataclass(frozen=True)
class TreeStats:
    height: int
    level: tuple[int, ...]
    out_degree: tuple[int, ...]
    max_out_degree: int


@dataclass(frozen=True)
class Ballean:
    balls: tuple[Ball, ...]
    node_of: dict

    def __len__(self):
        return len(self.balls)


def build_representing_tree(space: UltraSpace) -> LabeledRootedTree:
    """Split recursively along the parts of each diametrical graph."""
    memo = space._memo
    if "tree" in memo:
        return memo["tree"]
    children: list[list[int]] = []
    labels: list[Fraction] = []
    members: list[frozenset[int]] = []
    D = space.dist

    def grow(points: frozenset[int]) -> int:
        v = len(children)
        children.append([])
        members.append(points)
        if len(points) == 1:
            labels.append(ZERO)
            return v
        labels.append(max(D[a][b] for a in points for b in points))
        for part in multipartite_parts(diametrical_graph(space, points)).parts:
            children[v].append(grow(part))
        return v

    grow(frozenset(range(space.n)))
    tree = LabeledRootedTree(tuple(map(tuple, children)), 0, tuple(labels),
                             tuple(members), space.points)
    memo["tree"] = tree
    return tree


def reconstruct_distance(tree: LabeledRootedTree, leaf_u: int, leaf_v: int) -> Fraction:
    """Distance between the points of two leaves: the label of their lowest common ancestor."""
    for x in (leaf_u, leaf_v):
        if tree.children[x]:
            raise NotALeaf(f"node {x} is internal")
    if leaf_u == leaf_v:
        return ZERO
    return tree.labels[tree.lca(leaf_u, leaf_v)]


def node_ultrametric(tree: LabeledRootedTree, u: int, v: int) -> Fraction:
    """Largest label on the path joining two nodes (0 when they coincide)."""
    if u == v:
        return ZERO
    return max(tree.labels[x] for x in tree.path(u, v))


def ballean(space: UltraSpace) -> Ballean:
    tree = build_representing_tree(space)
    balls = tuple(Ball(tree.members[v], tree.labels[v]) for v in range(len(tree)))
    return Ballean(balls, {b.members: v for v, b in enumerate(balls)})


def check_realizable_labels(tree: LabeledRootedTree) -> None:
    """Raise unless no node is unary, exactly the leaves carry 0, and labels
    strictly decrease from parent to child."""
    for v in tree.preorder:
        kids = tree.children[v]
        if len(kids) == 1:
            raise UnaryNode(v)
        if not kids and tree.labels[v] != 0:
            raise NonzeroLeaf(f"leaf {v} has label {tree.labels[v]}")
        if kids and tree.labels[v] == 0:
            raise ZeroInternal(f"internal node {v} has label 0")
        for c in kids:
            if not tree.labels[c] < tree.labels[v]:
                raise NonDecreasingLabels(v, c)


def space_from_tree(tree: LabeledRootedTree) -> UltraSpace:
    """The space on the leaves with d(x, y) = least label among common ancestors.

    Leaves map to point indices through ``members`` when the tree carries
    them, otherwise in preorder.
    """
    check_realizable_labels(tree)
    leaves = tree.leaves
    index = {v: tree.point_of_leaf(v) for v in leaves}
    n = len(leaves)
    if sorted(index.values()) != list(range(n)):
        raise InvalidTree("leaf members do not cover 0..n-1")
    D = [[ZERO] * n for _ in range(n)]
    below = tree.leaf_descendants
    for v in tree.internal:
        t = tree.labels[v]
        groups = [[index[x] for x in below[c]] for c in tree.children[v]]
        for i, ga in enumerate(groups):
            for gb in groups[i + 1:]:
                for a in ga:
                    for b in gb:
                        D[a][b] = D[b][a] = t
    names = tree.names if tree.names is not None and len(tree.names) == n else default_names(n)
    return validate(D, names)


def internal_subtree(tree: RootedTree):
    """The subtree induced by internal nodes, or None for a single-node tree.

    Nodes are renumbered in preorder; labels are kept for labeled input.
    """
    if not tree.internal:
        return None
    keep = [v for v in tree.preorder if tree.children[v]]
    new = {v: i for i, v in enumerate(keep)}
    kids = tuple(tuple(new[c] for c in tree.children[v] if tree.children[c]) for v in keep)
    if isinstance(tree, LabeledRootedTree):
        members = None if tree.members is None else tuple(tree.members[v] for v in keep)
        return LabeledRootedTree(kids, 0, tuple(tree.labels[v] for v in keep), members, tree.names)
    return RootedTree(kids, 0)


def tree_stats(tree: RootedTree) -> TreeStats:
    deg = tuple(len(k) for k in tree.children)
    return TreeStats(tree.height, tree.level, deg, max(deg))


def _ball_name(space: UltraSpace, members) -> str:
    return "{" + ",".join(space.points[i] for i in sorted(members)) + "}"


def hausdorff_ballean_space(space: UltraSpace) -> UltraSpace:
    """The ballean as a space under the path-max node ultrametric.

    Balls are listed in tree preorder and named by their sorted members.
    """
    tree = build_representing_tree(space)
    m = len(tree)
    D = [[node_ultrametric(tree, u, v) for v in range(m)] for u in range(m)]
    return validate(D, [_ball_name(space, tree.members[v]) for v in range(m)])


def iterate_ballean(space: UltraSpace, k: int, size_cap: int = 200) -> list[UltraSpace]:
    """``[X, B_X, B_{B_X}, ...]`` with ``k`` iterations after X."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = [space]
    for _ in range(k):
        if len(build_representing_tree(out[-1])) > size_cap:
            raise SizeCapExceeded(
                f"next iterate would have {len(build_representing_tree(out[-1]))} points "
                f"(cap {size_cap})", out)
        out.append(hausdorff_ballean_space(out[-1]))
    return out


def label_set(tree: LabeledRootedTree) -> tuple[Fraction, ...]:
    return tuple(sorted(set(tree.labels)))


def spectrum_matches_labels(space: UltraSpace) -> bool:
    return label_set(build_representing_tree(space)) == spectrum(space)
