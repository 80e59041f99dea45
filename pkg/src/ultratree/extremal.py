"""Extremal characterizations of finite ultrametric spaces.

Each ``check_*`` function evaluates every condition of an equivalence on its
own terms (metric side from balls and distances, graph side from level
graphs, tree side from the representing tree), then insists they agree.  A
disagreement raises :class:`EquivalenceViolation`; it means a bug here, not
bad input.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import UltraSpace, all_balls, spectrum, subspace
from .errors import EquivalenceViolation, OracleTooLarge, TooSmall
from .graphs import (
    hamilton_cycle_with_k_max_edges,
    is_complete_multipartite,
    level_graph,
    prune_isolated,
    weighted_clique,
)
from .morphisms import is_isometric, labeled_code
from .tree import build_representing_tree, space_from_tree

TSI_ORACLE_MAX_INTERNAL = 8
TSI_ORACLE_MAX_SPECTRUM = 6


def _agree(name: str, **conditions) -> bool:
    values = set(conditions.values())
    if len(values) != 1:
        raise EquivalenceViolation(name, conditions)
    return values.pop()


def _nonsingular(space):
    return [b for b in all_balls(space) if len(b.members) > 1]


def _pruned_level_graphs(space):
    memo = space._memo
    if "pruned" not in memo:
        memo["pruned"] = {t: prune_isolated(level_graph(space, t)) for t in spectrum(space)[1:]}
    return memo["pruned"]


def _sub_ballean_size(space, members) -> int:
    memo = space._memo.setdefault("sub_ballean", {})
    if members not in memo:
        memo[members] = len(all_balls(subspace(space, members)))
    return memo[members]


def _require_two(space, what):
    if space.n < 2:
        raise TooSmall(f"{what} needs at least two points")


# -- distinct diameters of nonsingular balls ----------------------------------

def check_injective_internal_labels(space: UltraSpace) -> bool:
    """Different nonsingular balls have different diameters (four ways)."""
    if space.n == 1:
        return True
    diams = [b.diameter for b in _nonsingular(space)]
    tree = build_representing_tree(space)
    inner = [tree.labels[v] for v in tree.internal]
    sp = spectrum(space)
    return _agree(
        "injective internal labeling",
        distinct_ball_diameters=len(set(diams)) == len(diams),
        injective_tree_labels=len(set(inner)) == len(inner),
        level_graphs_multipartite=all(is_complete_multipartite(g)
                                      for g in _pruned_level_graphs(space).values()),
        ballean_count=len(all_balls(space)) == space.n + len(sp) - 1,
    )


# -- strictly n-ary trees -------------------------------------------------------

def _splits_into_equidistant_balls(space, members, n) -> bool:
    D = space.dist
    diam = max(D[a][b] for a in members for b in members)
    classes, left = [], set(members)
    while left:
        x = min(left)
        cls = frozenset(y for y in left if D[x][y] < diam)
        classes.append(cls)
        left -= cls
    if len(classes) != n:
        return False
    balls = {b.members for b in all_balls(space)}
    if not all(c in balls for c in classes):
        return False
    cross = {D[a][b] for i, ca in enumerate(classes) for cb in classes[i + 1:] for a in ca for b in cb}
    return len(cross) == 1


def check_strictly_n_ary(space: UltraSpace, n: int) -> bool:
    """Every internal node of T_X has exactly ``n`` children (four ways)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    tree = build_representing_tree(space)
    per_label = Counter(tree.labels[v] for v in tree.internal)

    def level_ok(t, g):
        comps = g.components()
        return len(comps) == per_label[t] and all(
            is_complete_multipartite(g.induced(c), k=n) for c in comps)

    return _agree(
        f"strictly {n}-ary",
        tree_out_degrees=all(len(tree.children[v]) == n for v in tree.internal),
        level_graphs=all(level_ok(t, g) for t, g in _pruned_level_graphs(space).items()),
        equidistant_split=all(_splits_into_equidistant_balls(space, b.members, n)
                              for b in _nonsingular(space)),
        ball_count_equation=all(
            (n - 1) * _sub_ballean_size(space, b.members) + 1 == n * len(b.members)
            for b in all_balls(space)),
    )


# -- the class with |Sp(X)| = |X| ------------------------------------------------

def check_class_U(space: UltraSpace) -> bool:
    _require_two(space, "the |Sp(X)| = |X| test")
    tree = build_representing_tree(space)
    inner = [tree.labels[v] for v in tree.internal]
    return _agree(
        "|Sp(X)| = |X|",
        spectrum_size=len(spectrum(space)) == space.n,
        level_graphs_bipartite=all(is_complete_multipartite(g, k=2)
                                   for g in _pruned_level_graphs(space).values()),
        binary_injective_tree=(all(len(tree.children[v]) == 2 for v in tree.internal)
                               and len(set(inner)) == len(inner)),
    )


# -- no equilateral triangles ----------------------------------------------------

def has_equilateral_triangle(space: UltraSpace) -> bool:
    D = space.dist
    return any(D[i][j] == D[j][k] == D[i][k] for i, j, k in combinations(range(space.n), 3))


def two_max_edge_cycles_everywhere(space: UltraSpace, max_size: int = 8) -> bool:
    """Every subset of 3..max_size points has a Hamilton cycle with exactly
    two edges of maximal weight.  Small subsets are tried first."""
    for size in range(3, min(space.n, max_size) + 1):
        for sub in combinations(range(space.n), size):
            if hamilton_cycle_with_k_max_edges(weighted_clique(space, sub), 2, limit=None) is None:
                return False
    return True


def check_no_equilateral(space: UltraSpace, hamilton_max: int | None = 8) -> bool:
    """No equilateral triangle, strictly binary tree, and (for subsets of up to
    ``hamilton_max`` points, skipped when None) two-max-edge Hamilton cycles."""
    tree = build_representing_tree(space)
    conds = dict(
        no_triangle=not has_equilateral_triangle(space),
        strictly_binary=all(len(tree.children[v]) == 2 for v in tree.internal),
    )
    if hamilton_max is not None:
        conds["hamilton_cycles"] = two_max_edge_cycles_everywhere(space, hamilton_max)
    return _agree("no equilateral triangle", **conds)


# -- inequalities -------------------------------------------------------------------

def _counts(space):
    tree = build_representing_tree(space)
    return dict(
        n=space.n,
        sp=len(spectrum(space)),
        balls=len(all_balls(space)),
        nodes=len(tree),
        internal=len(tree.internal),
        height=tree.height,
        delta=max(len(k) for k in tree.children),
    )


def _slacks(space, with_out_degree=True) -> dict[str, Fraction]:
    c = _counts(space)
    out = {
        "spectrum_vs_points": Fraction(c["n"] - c["sp"]),
        "spectrum_vs_ballean": Fraction(c["balls"] - c["n"] + 1 - c["sp"]),
        "height_vs_spectrum": Fraction(c["sp"] - 1 - c["height"]),
        "height_vs_ballean": Fraction(c["balls"] - c["n"] - c["height"]),
        "nodes_vs_out_degree": Fraction(c["delta"] * c["internal"] + 1 - c["nodes"]),
    }
    if with_out_degree:
        delta, n = c["delta"], c["n"]
        out["ballean_vs_out_degree"] = c["balls"] - Fraction(delta * n - 1, delta - 1)
        out["ballean_spectrum_out_degree"] = (
            2 * c["balls"] - c["sp"] - Fraction(2 * delta * n - delta - n, delta - 1))
    return out


def check_bounds(space: UltraSpace) -> dict[str, Fraction]:
    """Slack (right side minus left side, or vice versa) of every inequality.

    ==============================  =============================================
    ``spectrum_vs_points``          |Sp(X)| <= |X|
    ``spectrum_vs_ballean``         |Sp(X)| <= |B_X| - |X| + 1
    ``ballean_vs_out_degree``       |B_X| >= (D|X| - 1) / (D - 1),  D = max out-degree
    ``ballean_spectrum_out_degree`` 2|B_X| >= |Sp(X)| + (2D|X| - D - |X|) / (D - 1)
    ``height_vs_spectrum``          h(T_X) <= |Sp(X)| - 1
    ``height_vs_ballean``           h(T_X) <= |B_X| - |X|
    ``nodes_vs_out_degree``         |V(T_X)| <= D |I(T_X)| + 1
    ==============================  =============================================

    All slacks are nonnegative for every space.
    """
    _require_two(space, "the out-degree bounds")
    return _slacks(space)


# -- spheres --------------------------------------------------------------------------

def check_sphere_decomposable(space: UltraSpace) -> bool:
    """Each nonsingular ball is a sphere around one of its points plus that point."""
    D = space.dist

    def has_center(members):
        return any(len({D[c][x] for x in members if x != c}) == 1 for c in members)

    tree = build_representing_tree(space)
    return _agree(
        "sphere decomposition",
        metric=all(has_center(b.members) for b in _nonsingular(space)),
        leaf_child_everywhere=all(any(not tree.children[c] for c in tree.children[v])
                                  for v in tree.internal),
    )


# -- nested balls -----------------------------------------------------------------------

def _height_identity(space) -> bool:
    return build_representing_tree(space).height + space.n == len(all_balls(space))


def check_chain_balls(space: UltraSpace, exhaustive_max: int = 8, samples: int = 64,
                      seed: int = 0) -> bool:
    """Nonsingular balls form a chain under inclusion (four ways).

    The all-subsets condition is exhaustive up to ``exhaustive_max`` points and
    sampled beyond; the whole space is always tried first.
    """
    _require_two(space, "the nested-balls test")
    tree = build_representing_tree(space)
    per_level = Counter(tree.level[v] for v in tree.internal)
    nonsingular = [b.members for b in _nonsingular(space)]

    def subsets():
        yield tuple(range(space.n))
        if space.n <= exhaustive_max:
            for size in range(space.n - 1, 0, -1):
                yield from combinations(range(space.n), size)
        else:
            rng = random.Random(seed)
            for _ in range(samples):
                size = rng.randint(1, space.n - 1)
                yield tuple(sorted(rng.sample(range(space.n), size)))

    return _agree(
        "nested nonsingular balls",
        one_internal_node_per_level=all(per_level[k] == 1 for k in range(tree.height)),
        balls_nested=all(a <= b or b <= a for a, b in combinations(nonsingular, 2)),
        height_identity=_height_identity(space),
        height_identity_for_subsets=all(_height_identity(subspace(space, y)) for y in subsets()),
    )


# -- tree-spectrum isometry ----------------------------------------------------------------

def _same_level_condition(tree) -> bool:
    """Distinct internal nodes on a common level sit one above the bottom and
    have equal out-degree."""
    h = tree.height
    by_level: dict[int, list[int]] = {}
    for v in tree.internal:
        by_level.setdefault(tree.level[v], []).append(v)
    for lev, nodes in by_level.items():
        if len(nodes) > 1:
            if lev != h - 1 or len({len(tree.children[v]) for v in nodes}) != 1:
                return False
    return True


def _shape_forces_tsi(tree) -> bool:
    """One internal node on every level 1..h-2 and at most two, of equal
    out-degree, on level h-1."""
    h = tree.height
    per_level = Counter(tree.level[v] for v in tree.internal)
    if any(per_level[k] != 1 for k in range(1, h - 1)):
        return False
    bottom = [v for v in tree.internal if tree.level[v] == h - 1]
    return len(bottom) <= 2 and len({len(tree.children[v]) for v in bottom}) <= 1


def relabelings(tree, values):
    """All labelings of ``tree``'s shape onto ``values`` (0 excluded) that
    decrease strictly from parent to child, give 0 to leaves and use every
    value.  Yields label tuples."""
    values = sorted(values)
    inner = list(tree.internal)
    labels = [Fraction(0)] * len(tree)
    need = set(values)

    def rec(i):
        if i == len(inner):
            if need <= {labels[v] for v in inner}:
                yield tuple(labels)
            return
        v = inner[i]
        cap = labels[tree.parent[v]] if v != tree.root else None
        for x in values:
            if cap is not None and x >= cap:
                break
            labels[v] = x
            yield from rec(i + 1)

    if not inner:
        if not values:
            yield tuple(labels)
        return
    yield from rec(0)


def tsi_counterexample(space: UltraSpace):
    """A space with the same tree shape and spectrum that is not isometric to
    ``space``, or None if there is none."""
    tree = build_representing_tree(space)
    sp = spectrum(space)
    if len(tree.internal) > TSI_ORACLE_MAX_INTERNAL or len(sp) > TSI_ORACLE_MAX_SPECTRUM:
        raise OracleTooLarge(
            f"{len(tree.internal)} internal nodes / {len(sp)} distances exceed the oracle caps")
    own = labeled_code(tree)
    shape = tree.shape()
    seen = {own}
    for labels in relabelings(tree, sp[1:]):
        other = shape.relabel(labels)
        code = labeled_code(other)
        if code in seen:
            continue
        seen.add(code)
        candidate = space_from_tree(other)
        if is_isometric(space, candidate) is None:
            return candidate
    return None


def check_tsi(space: UltraSpace, mode: str = "fast") -> bool | None:
    """Is the space determined up to isometry by its tree shape and spectrum?

    ``fast`` uses only criteria known to be sound and may answer None;
    ``oracle`` enumerates every competing labeling.
    """
    if mode == "oracle":
        return tsi_counterexample(space) is None
    if mode != "fast":
        raise ValueError(f"unknown mode {mode!r}")
    tree = build_representing_tree(space)
    if len(spectrum(space)) <= 3 or _shape_forces_tsi(tree):
        return True
    if space.n >= 2 and check_chain_balls(space):
        return True
    inner = [tree.labels[v] for v in tree.internal]
    if len(set(inner)) == len(inner):
        return _same_level_condition(tree)
    return None


# -- aggregate --------------------------------------------------------------------------------

@dataclass
class PropsReport:
    n: int
    spectrum_size: int
    ballean_size: int
    height: int
    max_out_degree: int
    in_class_U: bool | None
    injective_internal_labels: bool
    strictly_n_ary: int | None
    no_equilateral_triangle: bool
    sphere_decomposable: bool
    chain_balls: bool
    tsi: bool | None
    bound_slacks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["bound_slacks"] = {k: str(v) for k, v in sorted(self.bound_slacks.items())}
        out["schema"] = 1
        return out


def props_report(space: UltraSpace, hamilton_max: int | None = 8) -> PropsReport:
    tree = build_representing_tree(space)
    delta = max(len(k) for k in tree.children)
    two = space.n >= 2
    return PropsReport(
        n=space.n,
        spectrum_size=len(spectrum(space)),
        ballean_size=len(all_balls(space)),
        height=tree.height,
        max_out_degree=delta,
        in_class_U=check_class_U(space) if two else None,
        injective_internal_labels=check_injective_internal_labels(space),
        strictly_n_ary=delta if two and check_strictly_n_ary(space, delta) else None,
        no_equilateral_triangle=check_no_equilateral(space, hamilton_max),
        sphere_decomposable=check_sphere_decomposable(space),
        chain_balls=check_chain_balls(space) if two else True,
        tsi=check_tsi(space),
        bound_slacks=_slacks(space, with_out_degree=two),
    )
