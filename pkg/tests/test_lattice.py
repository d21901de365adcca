from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from jacobial.curves import gallery
from jacobial.lattice import (
    boundary_map,
    complexity,
    cycle_basis,
    degree_class_group,
    determinant,
    smith_normal_form,
    same_degree_class,
)
from oracles import (
    corpus,
    laplacian_equivalent,
    random_graph,
    spanning_tree_count,
    sympy_invariant_factors,
)


def test_gallery_complexities():
    assert complexity(gallery("kodaira_In", 5)) == 5
    assert complexity(gallery("theta")) == 3
    assert complexity(gallery("blownup_dollar", 1)) == 8
    assert complexity(gallery("kodaira_IV")) == 3
    assert complexity(gallery("kodaira_III")) == 2
    assert degree_class_group(gallery("kodaira_In", 5)).describe() == "Z/5"


def test_complexity_three_ways_on_corpus():
    for G in corpus():
        c = complexity(G)
        assert c == spanning_tree_count(G)
        group = degree_class_group(G)
        assert group.order == c
        assert sorted(f for f in group.invariant_factors if f != 1) == sympy_invariant_factors(G)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_complexity_matches_spanning_trees(seed):
    G = random_graph(random.Random(seed), max_vertices=5, max_edges=8)
    assert complexity(G) == spanning_tree_count(G)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_form_is_a_factorization(mat):
    snf = smith_normal_form(mat)
    U, V, D = snf.left, snf.right, snf.diagonal
    prod = [[sum(U[i][k] * mat[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    prod = [[sum(prod[i][k] * V[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    for i in range(3):
        for j in range(3):
            assert prod[i][j] == (D[i] if i == j and i < len(D) else 0)
    nonzero = [d for d in D if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1


def test_degree_classes_against_rational_solve():
    rng = random.Random(7)
    for G in corpus()[:10]:
        n = G.n_vertices
        for _ in range(15):
            d1 = [rng.randint(-3, 3) for _ in range(n - 1)]
            d1.append(-sum(d1))
            d2 = [rng.randint(-3, 3) for _ in range(n - 1)]
            d2.append(-sum(d2))
            assert same_degree_class(G, d1, d2) == laplacian_equivalent(G, d1, d2)
            group = degree_class_group(G)
            assert (group.canonical(d1) == group.canonical(d2)) == laplacian_equivalent(G, d1, d2)


def test_degree_class_group_enumerates_all_classes():
    # Every class of Z^n / Laplacian lattice in degree 0 appears among small vectors.
    G = gallery("blownup_dollar", 1)
    group = degree_class_group(G)
    seen = set()
    for a in range(-3, 4):
        for b in range(-3, 4):
            for c in range(-3, 4):
                seen.add(group.canonical((a, b, c, -a - b - c)))
    assert len(seen) == group.order == 8


def test_cycle_basis_lies_in_kernel_of_boundary():
    for G in corpus():
        bd = boundary_map(G).matrix
        basis = cycle_basis(G)
        assert basis.rank == G.first_betti
        for z in basis.basis:
            assert all(sum(bd[v][e] * z[e] for e in range(G.n_edges)) == 0 for v in range(G.n_vertices))
        # Cotree edges pick out the coordinates.
        for k, e in enumerate(basis.cotree):
            assert basis.functional(e) == tuple(int(j == k) for j in range(basis.rank))


def test_dollar_cycle_basis():
    basis = cycle_basis(gallery("blownup_dollar", 1))
    assert basis.basis == ((1, 1, 0, 0, -1), (0, 0, 1, 1, -1))
    assert basis.functional(4) == (-1, -1)
