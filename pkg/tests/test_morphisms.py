from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import rationals, spaces, two_cherries
from ultratree import (
    build_representing_tree,
    exists_ball_preserving_bijection,
    is_isometric,
    is_weakly_similar,
    random_space,
    shape_code,
    space_from_tree,
    spectrum,
    validate,
    verify_witness,
)
from ultratree.core import permuted, scaled
from ultratree.errors import DanglingReference
from ultratree.formats import parse_tree
from ultratree.morphisms import code_str, rank_code, tree_isomorphism


def test_codes(X3):
    t = build_representing_tree(X3)
    assert code_str(shape_code(t)) == "((() ()) ())"
    assert code_str(rank_code(t)) == "(2 (0) (1 (0) (0)))"


def test_tree_isomorphism_respects_kind():
    a = parse_tree("(3 0 (1 0 0))")
    b = parse_tree("(2 (1 0 0) 0)")
    assert tree_isomorphism(a, b, "rooted-iso") is not None
    assert tree_isomorphism(a, b, "labeled-iso") is None
    assert tree_isomorphism(a, b, "weak-iso") is not None


def test_isometry_of_a_permuted_space(X3):
    Y = permuted(X3, [2, 0, 1])
    w = is_isometric(X3, Y)
    assert w is not None and verify_witness(w, X3, Y)
    assert all(X3.d(x, y) == Y.d(w.point_map[x], w.point_map[y]) for x in range(3) for y in range(3))


def test_tampered_witness_is_rejected(X3):
    w = is_isometric(X3, X3)
    ta = build_representing_tree(X3)
    a, b = [v for v in ta.leaves if ta.labels[ta.parent[v]] == 1]
    nodes = dict(w.node_map)
    nodes[a], nodes[b] = nodes[b], nodes[a]
    # swapping two sibling leaves without updating the point map breaks consistency
    assert not verify_witness(replace(w, node_map=nodes), X3, X3)
    points = dict(w.point_map)
    pa, pb = ta.point_of_leaf(a), ta.point_of_leaf(b)
    points[pa], points[pb] = points[pb], points[pa]
    assert verify_witness(replace(w, node_map=nodes, point_map=points), X3, X3)
    far = [v for v in ta.leaves if v not in (a, b)][0]
    nodes[a], nodes[far] = nodes[far], nodes[a]
    assert not verify_witness(replace(w, node_map=nodes), X3, X3)


def test_dangling_reference(X3):
    w = is_isometric(X3, X3)
    with pytest.raises(DanglingReference):
        verify_witness(replace(w, node_map={**w.node_map, 0: 99}), X3, X3)


def test_scaled_space_is_weakly_similar_not_isometric(X3):
    Y = scaled(X3, 3)
    assert is_isometric(X3, Y) is None
    w = is_weakly_similar(X3, Y)
    assert w is not None and verify_witness(w, X3, Y)


def test_equal_shapes_different_spaces():
    a = validate([[0, 2, 1], [2, 0, 2], [1, 2, 0]])
    b = validate([[0, 5, 5], [5, 0, 3], [5, 3, 0]])
    assert is_isometric(a, b) is None
    assert is_weakly_similar(a, b) is not None
    c = two_cherries()
    assert exists_ball_preserving_bijection(a, c) is None


@given(spaces(max_n=5), spaces(max_n=5))
def test_isometry_matches_permutation_oracle(A, B):
    w = is_isometric(A, B)
    assert (w is not None) == oracles.isometric(oracles.matrix(A), oracles.matrix(B))
    if w is not None:
        assert verify_witness(w, A, B)


@given(st.integers(1, 5), st.integers(0, 10**6), st.randoms())
def test_isometry_on_permuted_copies(n, seed, rnd):
    s = 1 if n == 1 else 2 + seed % (n - 1)
    A = random_space(n, s, seed)
    order = list(range(n))
    rnd.shuffle(order)
    B = permuted(A, order)
    w = is_isometric(A, B)
    assert w is not None and verify_witness(w, A, B)


@given(spaces(max_n=5), spaces(max_n=5))
def test_weak_similarity_matches_oracle(A, B):
    w = is_weakly_similar(A, B)
    assert (w is not None) == oracles.weakly_similar(oracles.matrix(A), oracles.matrix(B))
    if w is not None:
        assert verify_witness(w, A, B)


@given(spaces(max_n=5), spaces(max_n=5))
def test_ball_preserving_matches_oracle(A, B):
    w = exists_ball_preserving_bijection(A, B)
    assert (w is not None) == oracles.ball_preserving(oracles.matrix(A), oracles.matrix(B))
    if w is not None:
        assert verify_witness(w, A, B)


@given(spaces(max_n=8), rationals())
def test_scaling(X, c):
    Y = scaled(X, c)
    w = is_weakly_similar(X, Y)
    assert w is not None and verify_witness(w, X, Y)
    assert (is_isometric(X, Y) is not None) == (c == 1 or X.n == 1)


@given(spaces(max_n=8))
def test_ball_preservation_ignores_distance_values(X):
    t = build_representing_tree(X)
    relabeled = t.relabel([0 if not t.children[v] else 1 + len(t.leaf_descendants[v])
                           for v in range(len(t))])
    Y = space_from_tree(relabeled)
    assert exists_ball_preserving_bijection(X, Y) is not None


def _with_spectrum_of(B, A):
    """B with its distances replaced order-preservingly by those of A."""
    sa, sb = spectrum(A), spectrum(B)
    sub = dict(zip(sb, sa))
    return validate([[sub[v] for v in row] for row in B.dist])


@given(st.integers(2, 7), st.integers(0, 10**6), st.integers(0, 10**6))
def test_equal_spectra_make_weak_similarity_isometry(n, s1, s2):
    s = 2 + s1 % (n - 1)
    A = random_space(n, s, s1)
    B = _with_spectrum_of(random_space(n, s, s2), A)
    assert spectrum(A) == spectrum(B)
    assert (is_weakly_similar(A, B) is not None) == (is_isometric(A, B) is not None)


@given(spaces(max_n=8), spaces(max_n=8))
def test_isometry_implies_weak_similarity_implies_ball_preservation(A, B):
    iso = is_isometric(A, B) is not None
    weak = is_weakly_similar(A, B) is not None
    ball = exists_ball_preserving_bijection(A, B) is not None
    assert not iso or weak
    assert not weak or ball


@given(st.lists(spaces(min_n=3, max_n=4), min_size=3, max_size=6))
def test_weak_similarity_is_an_equivalence(items):
    rel = [[is_weakly_similar(a, b) is not None for b in items] for a in items]
    k = len(items)
    for i in range(k):
        assert rel[i][i]
        for j in range(k):
            assert rel[i][j] == rel[j][i]
            for m in range(k):
                assert not (rel[i][j] and rel[j][m]) or rel[i][m]
