"""Spaces realizing a prescribed tree of nonsingular balls, plus generators.

Every realization augments the input tree with fresh leaves, labels the result
with strictly decreasing labels and reads off the space.  The augmented tree
is returned as a witness together with a shape check against the input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import UltraSpace, equilateral, permuted
from .errors import Infeasible, NoChildren, TooLarge, UnaryNode
from .morphisms import shape_code
from .tree import (
    LabeledRootedTree,
    RootedTree,
    build_representing_tree,
    check_realizable_labels,
    internal_subtree,
    space_from_tree,
)

PlainRootedTree = RootedTree

MAX_ENUMERATED_NODES = 10


@dataclass(frozen=True)
class RealizationResult:
    space: UltraSpace
    tree_witness: LabeledRootedTree
    target_iso_check: bool


def positive_part(x: int) -> int:
    return x if x > 0 else 0


def min_cardinality(tree: RootedTree) -> int:
    """Least number of points whose tree of nonsingular balls is ``tree``."""
    return sum(positive_part(2 - len(k)) for k in tree.children)


def subtree(tree: RootedTree, v: int) -> RootedTree:
    """The subtree hanging from ``v``, renumbered in preorder."""
    nodes = tree.subtree_nodes(v)
    new = {u: i for i, u in enumerate(nodes)}
    return RootedTree(tuple(tuple(new[c] for c in tree.children[u]) for u in nodes), 0)


def realizable_as_representing_tree(tree: RootedTree) -> bool:
    return all(len(k) != 1 for k in tree.children)


def is_path(tree: RootedTree) -> bool:
    return all(len(k) <= 1 for k in tree.children)


def label_tree(tree: RootedTree, scheme="depth") -> LabeledRootedTree:
    """Strictly decreasing labels with 0 on the leaves.

    ``"depth"`` gives an internal node ``height - level``; ``"injective"``
    numbers internal nodes 1, 2, ... in postorder.  A sequence is taken as
    the labels themselves and a callable is applied to the tree.
    """
    for v, kids in enumerate(tree.children):
        if len(kids) == 1:
            raise UnaryNode(v)
    if scheme == "depth":
        h = tree.height
        labels = [0 if tree.is_leaf(v) else h - tree.level[v] for v in range(len(tree))]
    elif scheme == "injective":
        labels = [0] * len(tree)
        rank = 0
        # reversed preorder lists every child before its parent
        for v in reversed(tree.preorder):
            if tree.children[v]:
                rank += 1
                labels[v] = rank
    elif callable(scheme):
        labels = list(scheme(tree))
    elif isinstance(scheme, str):
        raise ValueError(f"unknown labeling scheme {scheme!r}")
    else:
        labels = list(scheme)
    out = tree.relabel(labels)
    check_realizable_labels(out)
    return out


def _augment(tree: RootedTree, extra: Sequence[int]) -> RootedTree:
    """Attach ``extra[v]`` new leaves below every node ``v``."""
    children = [list(k) for k in tree.children]
    for v, count in enumerate(extra):
        for _ in range(count):
            children[v].append(len(children))
            children.append([])
    return RootedTree(tuple(map(tuple, children)), tree.root)


def _realize(target: RootedTree, augmented: RootedTree, scheme) -> RealizationResult:
    labeled = label_tree(augmented, scheme)
    space = space_from_tree(labeled)
    inner = internal_subtree(build_representing_tree(space))
    ok = inner is not None and shape_code(inner) == shape_code(target)
    return RealizationResult(space, labeled, ok)


def realize_min(tree: RootedTree, label_gen="depth") -> RealizationResult:
    """Two fresh leaves under every leaf and one under every unary node."""
    extra = [positive_part(2 - len(k)) for k in tree.children]
    return _realize(tree, _augment(tree, extra), label_gen)


def realize_sphere(tree: RootedTree, label_gen="depth") -> RealizationResult:
    """One fresh leaf under every node and a second one under every leaf, so
    each nonsingular ball is a sphere around a point plus that point."""
    extra = [2 if not k else 1 for k in tree.children]
    return _realize(tree, _augment(tree, extra), label_gen)


def hamiltonian_cardinality(tree: RootedTree) -> int:
    """Least size of a space with this tree of nonsingular balls and a
    hamiltonian diametrical graph."""
    kids = tree.children[tree.root]
    if not kids:
        raise NoChildren("the root needs at least one child")
    sums = [min_cardinality(subtree(tree, c)) for c in kids]
    if len(kids) == 1:
        return 2 * sums[0]
    total = min_cardinality(tree)
    return total + positive_part(2 * max(sums) - total)


def realize_hamiltonian(tree: RootedTree, label_gen="depth") -> RealizationResult:
    """Realize ``tree`` so that the diametrical graph has a Hamilton cycle.

    With one root child the minimal realization of that child's subtree is
    joined by as many far-away singletons as it has points.  With several
    root children the minimal realization is padded at the root with
    singletons until no part exceeds half the points.
    """
    kids = tree.children[tree.root]
    if not kids:
        raise NoChildren("the root needs at least one child")
    extra = [positive_part(2 - len(k)) for k in tree.children]
    if len(kids) == 1:
        extra[tree.root] = min_cardinality(subtree(tree, kids[0]))
    else:
        sums = [min_cardinality(subtree(tree, c)) for c in kids]
        extra[tree.root] = positive_part(2 * max(sums) - min_cardinality(tree))
    return _realize(tree, _augment(tree, extra), label_gen)


# -- random spaces ----------------------------------------------------------------

def _random_shape(rng: random.Random, n: int, budget: int, p_binary: float) -> RootedTree:
    children: list[list[int]] = []

    def grow(size, budget):
        v = len(children)
        children.append([])
        if size == 1:
            return v
        if budget <= 1:
            parts = [1] * size
        else:
            k = 2 if rng.random() < p_binary else rng.randint(2, min(size, 5))
            cuts = sorted(rng.sample(range(1, size), k - 1))
            parts = [b - a for a, b in zip([0] + cuts, cuts + [size])]
        for p in parts:
            children[v].append(grow(p, budget - 1))
        return v

    grow(n, budget)
    return RootedTree(tuple(map(tuple, children)))


def _caterpillar(n: int, s: int) -> RootedTree:
    """A spine of ``s - 2`` binary nodes ending in a star; ``s - 1`` internal nodes."""
    children: list[list[int]] = [[]]
    v, left = 0, n
    for _ in range(s - 2):
        leaf, nxt = len(children), len(children) + 1
        children[v] = [leaf, nxt]
        children += [[], []]
        v, left = nxt, left - 1
    children[v] = list(range(len(children), len(children) + left))
    children += [[] for _ in range(left)]
    return RootedTree(tuple(map(tuple, children)))


def _internal_heights(tree: RootedTree) -> list[int]:
    hts = [0] * len(tree)
    for v in reversed(tree.preorder):
        if tree.children[v]:
            hts[v] = 1 + max(hts[c] for c in tree.children[v])
    return hts


def _random_ranks(rng, tree, m) -> list[int] | None:
    """Top-down random ranks in 1..m, strictly decreasing, or None if some
    rank was left unused."""
    hts = _internal_heights(tree)
    ranks = [0] * len(tree)
    for v in tree.preorder:
        if not tree.children[v]:
            continue
        top = m if v == tree.root else ranks[tree.parent[v]] - 1
        ranks[v] = rng.randint(hts[v], top)
    used = {ranks[v] for v in tree.internal}
    return ranks if len(used) == m else None


def _level_split_ranks(rng, tree, m) -> list[int]:
    """Ranks from level groups (antichains) cut further until there are ``m``."""
    levels: dict[int, list[int]] = {}
    for v in tree.internal:
        levels.setdefault(tree.level[v], []).append(v)
    groups = []
    for lev in sorted(levels):
        nodes = levels[lev][:]
        rng.shuffle(nodes)
        groups.append(nodes)
    while len(groups) < m:
        splittable = [i for i, g in enumerate(groups) if len(g) > 1]
        i = rng.choice(splittable)
        g = groups[i]
        cut = rng.randint(1, len(g) - 1)
        groups[i:i + 1] = [g[:cut], g[cut:]]
    ranks = [0] * len(tree)
    for i, g in enumerate(groups):
        for v in g:
            ranks[v] = m - i
    return ranks


def random_space(n: int, spectrum_size: int, seed=None) -> UltraSpace:
    """A random ``n``-point space whose spectrum (0 included) has the given size."""
    s = spectrum_size
    if n < 1 or s < 1 or (n == 1 and s != 1) or (n >= 2 and not 2 <= s <= n):
        raise Infeasible(f"no {n}-point space has {s} distinct distances")
    if n == 1:
        return equilateral(1)
    rng = random.Random(seed)
    m = s - 1
    shape = None
    for attempt in range(40):
        cand = _random_shape(rng, n, m, min(1.0, 0.45 + 0.05 * attempt))
        if len(cand.internal) >= m:
            shape = cand
            break
    if shape is None:
        shape = _caterpillar(n, s)
    ranks = None
    for _ in range(20):
        ranks = _random_ranks(rng, shape, m)
        if ranks is not None:
            break
    if ranks is None:
        ranks = _level_split_ranks(rng, shape, m)
    values = [Fraction(0)]
    for _ in range(m):
        values.append(values[-1] + Fraction(rng.randint(1, 9), rng.choice((1, 2, 3, 4))))
    space = space_from_tree(shape.relabel([values[r] for r in ranks]))
    order = list(range(n))
    rng.shuffle(order)
    return permuted(space, order)


# -- enumeration ---------------------------------------------------------------------

def tree_from_code(code) -> RootedTree:
    """Rebuild a tree (numbered in preorder) from its shape code."""
    children: list[list[int]] = []
    stack: list[int] = []
    for tok in code:
        if tok == "(":
            v = len(children)
            children.append([])
            if stack:
                children[stack[-1]].append(v)
            stack.append(v)
        elif tok == ")":
            stack.pop()
    return RootedTree(tuple(map(tuple, children)))


def enumerate_rooted_trees(max_nodes: int) -> Iterator[RootedTree]:
    """One tree per isomorphism class with at most ``max_nodes`` nodes,
    ordered by size and then by shape code."""
    if max_nodes > MAX_ENUMERATED_NODES:
        raise TooLarge(f"enumeration is capped at {MAX_ENUMERATED_NODES} nodes")
    if max_nodes < 1:
        return
    layer = {shape_code(RootedTree.single())}
    for size in range(1, max_nodes + 1):
        for code in sorted(layer):
            yield tree_from_code(code)
        if size == max_nodes:
            break
        nxt = set()
        for code in layer:
            t = tree_from_code(code)
            for v in range(len(t)):
                nxt.add(shape_code(_augment(t, [1 if u == v else 0 for u in range(len(t))])))
        layer = nxt


_REDUCED: dict[int, list] = {}


def _reduced_codes(leaves: int) -> list:
    if leaves in _REDUCED:
        return _REDUCED[leaves]
    out = [("(", ")")] if leaves == 1 else []

    def parts(remaining, max_part, acc):
        if remaining == 0:
            if len(acc) >= 2:
                yield list(acc)
            return
        for p in range(min(remaining, max_part), 0, -1):
            if p == leaves:
                continue
            acc.append(p)
            yield from parts(remaining - p, p, acc)
            acc.pop()

    found = set()
    if leaves > 1:
        for sizes in parts(leaves, leaves - 1, []):
            def combos(i, acc):
                if i == len(sizes):
                    yield acc
                    return
                for c in _reduced_codes(sizes[i]):
                    # keep children of equal size in nondecreasing code order
                    if i and sizes[i] == sizes[i - 1] and c < acc[-1]:
                        continue
                    yield from combos(i + 1, acc + [c])
            for kids in combos(0, []):
                found.add(("(",) + tuple(t for k in sorted(kids) for t in k) + (")",))
    out += sorted(found)
    _REDUCED[leaves] = out
    return out


def enumerate_representing_shapes(leaves: int) -> Iterator[RootedTree]:
    """Every tree shape without unary nodes having exactly ``leaves`` leaves."""
    if leaves > 12:
        raise TooLarge("shape enumeration is capped at 12 leaves")
    for code in _reduced_codes(leaves):
        yield tree_from_code(code)
