from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobial.arrangements import (
    ToricArrangement,
    arrangement_to_svg,
    count_polygons,
    enumerate_faces,
    euler_check,
    is_simple,
    orbit_poset,
    polarization_for_offsets,
    polygon_histogram,
    poset_isomorphic,
    poset_to_dot,
    poset_to_text,
    strata_poset,
    toric_arrangement,
)
from jacobial.arrangements.toric import normalize_total
from jacobial.curves import arithmetic_genus, gallery
from jacobial.errors import RankTooHigh, WrongRank, WrongTotalDegree
from jacobial.lattice import complexity
from jacobial.showcase import first_dollar_pair
from jacobial.stability import is_nondegenerate, make_polarization
from oracles import (
    brute_multidegrees,
    corpus,
    nx_isomorphic,
    random_general_polarization,
    random_graph,
    random_polarization,
)


def test_psi_on_I2():
    G = gallery("kodaira_In", 2)
    A = toric_arrangement(G, make_polarization(["1/2", "-1/2"]))
    assert A.psi == (Fraction(-1, 4), Fraction(-1, 4))
    P = enumerate_faces(A)
    assert P.counts_by_dim() == [2, 2]
    assert is_simple(A)


def test_degenerate_I2_is_not_simple():
    A = toric_arrangement(gallery("kodaira_In", 2), make_polarization(["0", "0"]))
    assert enumerate_faces(A).counts_by_dim() == [1, 1]
    assert not is_simple(A)


def test_wrong_total_degree():
    G = gallery("kodaira_In", 2)
    with pytest.raises(WrongTotalDegree):
        toric_arrangement(G, make_polarization(["1/2", "1/2"]))
    A = toric_arrangement(G, make_polarization(["1/2", "1/2"]), auto_normalize=True)
    assert A.polarization.total == 1 - arithmetic_genus(G)


def test_rank_one_faces_are_points_on_a_circle():
    # On a cycle every edge functional is ±1, so vertices are the distinct offsets mod 1.
    rng = random.Random(2)
    for n in range(2, 6):
        G = gallery("kodaira_In", n)
        for _ in range(5):
            q = normalize_total(G, random_polarization(rng, G, denominators=(2, 3, 4)))
            A = toric_arrangement(G, q)
            points = {(m[0] * c) % 1 for m, c in zip(A.functionals, A.offsets)}
            P = enumerate_faces(A)
            assert P.counts_by_dim() == [len(points), len(points)]


def test_first_dollar_pair():
    G = gallery("blownup_dollar", 1)
    left, right = first_dollar_pair()
    P1, P2 = orbit_poset(G, left).poset, orbit_poset(G, right).poset
    assert P1.counts_by_dim() == P2.counts_by_dim() == [8, 16, 8]
    assert (count_polygons(P1, 3), count_polygons(P2, 3)) == (2, 4)
    assert sum(polygon_histogram(P1).values()) == 8
    assert not poset_isomorphic(P1, P2)
    assert not nx_isomorphic(P1, P2)
    assert euler_check(P1) == 0


def test_strata_poset_matches_face_poset():
    G = gallery("blownup_dollar", 1)
    for q in first_dollar_pair():
        op = orbit_poset(G, q)
        S = strata_poset(G, op.polarization)
        assert poset_isomorphic(op.poset, S)
        assert nx_isomorphic(op.poset, S)


def _arrangement_corpus(max_rank: int):
    for G in corpus():
        if G.first_betti <= max_rank:
            yield G


def test_face_counts_match_brute_strata():
    rng = random.Random(17)
    for G in _arrangement_corpus(2):
        for _ in range(3):
            q = normalize_total(G, random_general_polarization(rng, G))
            P = enumerate_faces(toric_arrangement(G, q))
            g = G.first_betti
            counts = P.counts_by_dim()
            for k in range(g + 1):
                total = 0
                for S in combinations(range(G.n_edges), k):
                    total += len(brute_multidegrees(G, q, ("stable",), frozenset(S)))
                assert counts[g - k] == total
            assert counts[g] == complexity(G)


def test_simple_iff_nondegenerate():
    rng = random.Random(23)
    for G in _arrangement_corpus(3):
        for _ in range(4):
            q = normalize_total(G, random_polarization(rng, G, denominators=(1, 2, 3)))
            A = toric_arrangement(G, q)
            assert is_simple(A) == bool(is_nondegenerate(G, q))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_isomorphism_agrees_with_networkx(seed):
    rng = random.Random(seed)
    G = random_graph(rng, max_vertices=4, max_edges=5)
    if not 1 <= G.first_betti <= 2:
        return
    q1 = normalize_total(G, random_general_polarization(rng, G))
    q2 = normalize_total(G, random_general_polarization(rng, G))
    P1 = enumerate_faces(toric_arrangement(G, q1))
    P2 = enumerate_faces(toric_arrangement(G, q2))
    assert poset_isomorphic(P1, P2) == nx_isomorphic(P1, P2)
    assert poset_isomorphic(P1, P1)


def test_rank_limits():
    A = ToricArrangement.from_offsets([(1, 0, 0, 0)], [Fraction(1, 2)])
    with pytest.raises(RankTooHigh):
        enumerate_faces(A)
    B = ToricArrangement.from_offsets([(1,)], [Fraction(1, 2)])
    with pytest.raises(WrongRank):
        arrangement_to_svg(B)
    with pytest.raises(WrongRank):
        count_polygons(enumerate_faces(B), 3)


def test_offsets_round_trip():
    # The arrangement of the constructed polarization is a translate of the requested one.
    G = gallery("blownup_dollar", 1)
    offsets = [Fraction(0), Fraction(1, 3), Fraction(0), Fraction(1, 3), Fraction(-3, 4)]
    q = polarization_for_offsets(G, offsets)
    A = toric_arrangement(G, normalize_total(G, q))
    B = ToricArrangement.from_offsets(A.functionals, offsets)
    assert poset_isomorphic(enumerate_faces(A), enumerate_faces(B))


def test_exports():
    G = gallery("blownup_dollar", 1)
    left, _ = first_dollar_pair()
    A = toric_arrangement(G, normalize_total(G, left))
    P = enumerate_faces(A)
    text = poset_to_text(P)
    assert text.startswith("elements 32 rank 2")
    assert text.count("cover ") == len(P.covers)
    dot = poset_to_dot(P)
    assert dot.startswith("digraph") and dot.count("->") == len(P.covers)
    svg = arrangement_to_svg(A)
    assert svg.startswith("<svg") and svg.count("<line") >= 5
