from __future__ import annotations

import pytest

from jacobial.curves import (
    DualGraph,
    IntersectionTable,
    Subcurve,
    arithmetic_genus,
    biconnected_masks,
    blownup_dollar,
    bridges,
    build_curve,
    delta,
    euler_char_structure,
    gallery,
    separating_blocks,
    subcurves,
)
from jacobial.errors import (
    BadParameter,
    DisconnectedGraph,
    DuplicateName,
    EmptySubcurve,
    MalformedSpec,
    TooManyComponents,
    UnknownName,
)
from oracles import chi_of, components_of, corpus


def test_cycle_genus_and_components():
    for n in range(2, 7):
        X = gallery("kodaira_In", n)
        assert X.gamma == n
        assert arithmetic_genus(X) == 1


def test_kodaira_tables_have_genus_one():
    for name in ("kodaira_I", "kodaira_II", "kodaira_III", "kodaira_IV"):
        assert arithmetic_genus(gallery(name)) == 1


def test_blownup_dollar_layout():
    G = blownup_dollar(1)
    assert G.names == ("L", "T", "B", "R")
    assert G.first_betti == 2
    assert arithmetic_genus(G) == 2
    G3 = blownup_dollar(3)
    assert G3.n_vertices == 8 and G3.n_edges == 9


def test_delta_and_euler_characteristic_on_theta():
    G = gallery("theta")
    Y = G.subcurve([0])
    assert delta(G, Y) == 3
    assert euler_char_structure(G, Y) == 1
    assert euler_char_structure(G, G.whole()) == -1
    with pytest.raises(EmptySubcurve):
        euler_char_structure(G, None)


def test_canonical_degrees_sum_to_2pa_minus_2():
    for G in corpus():
        assert sum(G.canonical_degrees()) == 2 * arithmetic_genus(G) - 2


def test_euler_char_matches_scratch_count():
    for G in corpus():
        for mask in range(1, 1 << G.n_vertices):
            assert G.mask_euler_char(mask) == chi_of(G, mask)


def test_biconnected_masks_match_networkx():
    for G in corpus():
        n = G.n_vertices
        expected = []
        for mask in range(1, (1 << n) - 1):
            inside = {i for i in range(n) if mask >> i & 1}
            rest = set(range(n)) - inside
            if (
                len(components_of(n, G.edges, inside)) == 1
                and len(components_of(n, G.edges, rest)) == 1
            ):
                expected.append(mask)
        assert sorted(biconnected_masks(G)) == expected


def test_subcurve_filters():
    X = gallery("kodaira_In", 4)
    assert len(subcurves(X, "all")) == 14
    pairs = subcurves(X, "biconnected_pair")
    assert len(pairs) == 12
    assert all(isinstance(Y, Subcurve) and Y.proper for Y in pairs)


def test_bridges_and_blocks():
    G = DualGraph(
        ("A", "B", "C", "D"), (0, 0, 0, 0), ((0, 1), (0, 1), (1, 2), (2, 3), (2, 3))
    )
    assert bridges(G) == [2]
    dec = separating_blocks(G)
    assert [b.names for b in dec.blocks] == [("A", "B"), ("C", "D")]
    assert dec.boundary_components == ((1,), (2,))
    assert dec.block_of(3) == 1


def test_table_with_points():
    X = gallery("kodaira_IV")
    assert isinstance(X, IntersectionTable)
    assert X.points == ((0, 1, 2),)
    assert X.canonical_degrees() == (0, 0, 0)


def test_build_from_spec_documents():
    G = build_curve(
        {"vertices": [{"name": "a", "genus": 1}, "b"], "edges": [["a", "b"], ["b", "b"]]}
    )
    assert G.genera == (1, 0) and G.edges == ((0, 1), (1, 1))
    T = build_curve({"components": ["x", "y"], "pairwise": [[0, 3], [3, 0]]})
    assert arithmetic_genus(T) == 2
    assert build_curve({"gallery": "kodaira_In", "n": 3}).gamma == 3


@pytest.mark.parametrize(
    "spec, error",
    [
        ({"vertices": ["a", "a"], "edges": []}, DuplicateName),
        ({"vertices": ["a", "b"], "edges": []}, DisconnectedGraph),
        ({"vertices": ["a"], "edges": [["a", "z"]]}, MalformedSpec),
        ({"nothing": 1}, MalformedSpec),
        ({"gallery": "nope"}, UnknownName),
        ({"gallery": "kodaira_In"}, BadParameter),
    ],
)
def test_spec_errors(spec, error):
    with pytest.raises(error):
        build_curve(spec)


def test_component_cap(monkeypatch):
    monkeypatch.setenv("JACOBIAL_MAX_COMPONENTS", "3")
    with pytest.raises(TooManyComponents):
        biconnected_masks(gallery("kodaira_In", 4))
