"""Complex construction, boundary operators, Betti numbers, set operations."""

import random

import numpy as np
import pytest

from homaudit.complexes import (MalformedSimplexError, NotSubcomplexError, Simplex,
                                SimplicialComplex, betti_numbers, boundary_matrix,
                                close_under_faces, intersect, is_subcomplex,
                                relative_boundary_matrix, union)
from homaudit.fixtures import torus_triad
from homaudit.linalg import mat_mul

from naive import naive_betti
from randfix import random_complex


def test_simplex_validation():
    assert Simplex((0, 2, 5)).dim == 2
    with pytest.raises(MalformedSimplexError):
        Simplex((2, 1))
    with pytest.raises(MalformedSimplexError):
        Simplex((1, 1))
    with pytest.raises(MalformedSimplexError):
        Simplex(())
    with pytest.raises(MalformedSimplexError):
        Simplex((-1, 0))


def test_close_under_faces_counts():
    assert len(close_under_faces([])) == 0
    full = close_under_faces([(0, 1, 2)])
    assert len(full) == 7
    two = close_under_faces([(0, 1, 2), (1, 2, 3)])
    assert len(two) == 11
    assert two.n_cells(0) == 4 and two.n_cells(1) == 5 and two.n_cells(2) == 2


def test_complex_requires_closure():
    with pytest.raises(ValueError):
        SimplicialComplex([Simplex((0, 1))])


def test_ordering_is_dimension_major_lexicographic():
    K = close_under_faces([(0, 1, 2), (1, 2, 3)])
    sims = K.simplices()
    keyed = [(s.dim, tuple(s)) for s in sims]
    assert keyed == sorted(keyed)
    for s in K.simplices(1):
        assert K.simplices(1)[K.index(s)] == s


def test_boundary_matrix_k0_and_signs():
    tri = close_under_faces([(0, 1, 2)])
    d0 = boundary_matrix(tri, 0, 2)
    assert d0.rows == 0 and d0.cols == 3
    d2 = boundary_matrix(tri, 2, 2)
    assert d2.rows == 3 and d2.cols == 1 and d2.nnz == 3
    d1 = boundary_matrix(tri, 1, 3)
    # column of edge (0, 1): deleting position 0 leaves (1,) with sign +1,
    # position 1 leaves (0,) with sign -1 == 2 mod 3
    col = d1.dense()[:, tri.index(Simplex((0, 1)))]
    assert list(col) == [2, 1, 0]


def test_boundary_squares_to_zero_randomized():
    rng = random.Random(5)
    for _ in range(15):
        K = random_complex(rng)
        for p in (2, 3, 5):
            for k in range(1, K.dim + 2):
                prod = mat_mul(boundary_matrix(K, k - 1, p).dense(),
                               boundary_matrix(K, k, p).dense(), p)
                assert not prod.any()


def test_betti_numbers():
    point = close_under_faces([(0,)])
    assert betti_numbers(point, 2) == [1]
    hollow = close_under_faces([(0, 1), (1, 2), (0, 2)])
    assert naive_betti(hollow, 2) == [1, 1]
    assert betti_numbers(hollow, 2) == [1, 1]
    torus = torus_triad().complex
    assert naive_betti(torus, 2) == [1, 2, 1]
    for p in (2, 3, 5):
        assert betti_numbers(torus, p) == [1, 2, 1]


def test_betti_of_cones():
    for n in (2, 3, 4):
        cone = close_under_faces([tuple(range(n + 1))])
        assert betti_numbers(cone, 3) == [1] + [0] * n


def test_intersect_and_union():
    A = close_under_faces([(0, 1, 2)])
    B = close_under_faces([(1, 2, 3)])
    both = intersect(A, B)
    assert len(both) == 3 and Simplex((1, 2)) in both
    assert intersect(A, A) == A
    assert intersect(A, B) == intersect(B, A)
    assert is_subcomplex(both, A) and is_subcomplex(both, B)
    disjoint = intersect(close_under_faces([(0, 1)]), close_under_faces([(4, 5)]))
    assert len(disjoint) == 0
    assert union(A, B) == close_under_faces([(0, 1, 2), (1, 2, 3)])
    assert union(A, A) == A
    assert union(A, B) == union(B, A)


def test_is_subcomplex():
    tri = close_under_faces([(0, 1, 2)])
    edge = close_under_faces([(0, 1)])
    empty = close_under_faces([])
    assert is_subcomplex(tri, tri)
    assert is_subcomplex(empty, tri)
    assert is_subcomplex(edge, tri)
    assert not is_subcomplex(tri, edge)


def test_relative_boundary_matrix():
    tri = close_under_faces([(0, 1, 2)])
    for k in range(3):
        m = relative_boundary_matrix(tri, tri, k, 2)
        assert m.rows == 0 and m.cols == 0
    empty = close_under_faces([])
    for k in range(3):
        assert relative_boundary_matrix(tri, empty, k, 2) == boundary_matrix(tri, k, 2)
    edge = close_under_faces([(0, 1)])
    ends = close_under_faces([(0,), (1,)])
    rel1 = relative_boundary_matrix(edge, ends, 1, 2)
    assert rel1.rows == 0 and rel1.cols == 1  # both vertex rows are killed
    with pytest.raises(NotSubcomplexError):
        relative_boundary_matrix(edge, close_under_faces([(5,)]), 1, 2)


def test_relative_boundary_squares_to_zero():
    rng = random.Random(9)
    for _ in range(10):
        X = random_complex(rng)
        gens = [s for s in X.maximal_simplices() if rng.random() < 0.5]
        A = close_under_faces(gens)
        for k in range(1, X.dim + 2):
            prod = mat_mul(relative_boundary_matrix(X, A, k - 1, 3).dense(),
                           relative_boundary_matrix(X, A, k, 3).dense(), 3)
            assert not prod.any()
