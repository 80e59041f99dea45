"""Brute-force reference implementations used to cross-check the library.

These work on plain lists of Fractions and never call into the package's
tree, graph or morphism code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations


def matrix(space):
    return [list(row) for row in space.dist]


def balls(D) -> set[frozenset]:
    """Every set {y : d(c, y) <= r} over all centers c and all radii r >= 0."""
    n = len(D)
    radii = sorted({v for row in D for v in row})
    return {frozenset(y for y in range(n) if D[c][y] <= r) for c in range(n) for r in radii}


def diameter(D, S) -> Fraction:
    return max((D[a][b] for a in S for b in S), default=Fraction(0))


def ball_hasse_tree(D):
    """The ballean ordered by inclusion, as {ball: (diameter, children)}.

    Each ball's parent is the smallest ball strictly containing it.
    """
    bs = balls(D)
    out = {b: (diameter(D, b), []) for b in bs}
    for b in bs:
        above = [c for c in bs if b < c]
        if above:
            out[min(above, key=len)][1].append(b)
    return out


def hasse_labeled_code(D) -> str:
    tree = ball_hasse_tree(D)
    root = max(tree, key=len)

    def code(b):
        diam, kids = tree[b]
        return "(" + str(diam) + "".join(sorted(code(c) for c in kids)) + ")"

    return code(root)


def isometric(A, B) -> bool:
    n = len(A)
    if n != len(B):
        return False
    return any(all(A[i][j] == B[p[i]][p[j]] for i in range(n) for j in range(n))
               for p in permutations(range(n)))


def weakly_similar(A, B) -> bool:
    """Some bijection f and some map psi with d_B(f x, f y) = psi(d_A(x, y)),
    psi strictly increasing."""
    n = len(A)
    if n != len(B):
        return False
    for p in permutations(range(n)):
        psi = {}
        ok = True
        for i in range(n):
            for j in range(n):
                a, b = A[i][j], B[p[i]][p[j]]
                if psi.setdefault(a, b) != b:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            keys = sorted(psi)
            if all(psi[x] < psi[y] for x, y in zip(keys, keys[1:])):
                return True
    return False


def ball_preserving(A, B) -> bool:
    n = len(A)
    if n != len(B):
        return False
    ba, bb = balls(A), balls(B)
    for p in permutations(range(n)):
        img = {frozenset(p[x] for x in s) for s in ba}
        if img == bb:
            return True
    return False


def hamiltonian(vertices, adjacent) -> bool:
    """Try every cyclic order with the first vertex fixed."""
    vs = list(vertices)
    if len(vs) < 3:
        return False
    first, rest = vs[0], vs[1:]
    for p in permutations(rest):
        cyc = (first,) + p
        if all(adjacent(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))):
            return True
    return False


def cycle_with_k_max_edges(D, S, k) -> bool:
    S = list(S)
    top = diameter(D, S)
    first, rest = S[0], S[1:]
    for p in permutations(rest):
        cyc = (first,) + p
        if sum(D[cyc[i]][cyc[(i + 1) % len(cyc)]] == top for i in range(len(cyc))) == k:
            return True
    return False


def is_complete_multipartite(vertices, edges) -> bool:
    """Non-adjacency (with equality) is an equivalence with at least two classes."""
    vs = list(vertices)
    E = {frozenset(e) for e in edges}

    def same(u, v):
        return u == v or frozenset((u, v)) not in E

    for u in vs:
        for v in vs:
            for w in vs:
                if same(u, v) and same(v, w) and not same(u, w):
                    return False
    classes = {frozenset(w for w in vs if same(v, w)) for v in vs}
    return len(classes) >= 2


def hausdorff(D, A, B) -> Fraction:
    return max(max(min(D[a][b] for b in B) for a in A),
               max(min(D[a][b] for a in A) for b in B))


def has_equilateral(D) -> bool:
    return any(D[i][j] == D[j][k] == D[i][k] for i, j, k in combinations(range(len(D)), 3))


def strong_triangle_ok(D) -> bool:
    n = len(D)
    return all(D[i][j] <= max(D[i][k], D[k][j]) for i in range(n) for j in range(n) for k in range(n))


ROOTED_TREE_COUNTS = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719]  # by node count 1..10
SERIES_REDUCED_COUNTS = [1, 1, 2, 5, 12, 33, 90, 261]  # by leaf count 1..8
