"""Independent brute-force oracles and a seeded random corpus.

Nothing here calls the package's algorithms; only its data classes are
used to hold inputs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor
from typing import Sequence

import networkx as nx
import sympy

from jacobial.curves import DualGraph
from jacobial.stability import Polarization

# ---------------------------------------------------------------------------
# Graph invariants


def components_of(n: int, edges: Sequence[tuple[int, int]], keep: set[int]) -> list[set[int]]:
    g = nx.MultiGraph()
    g.add_nodes_from(keep)
    g.add_edges_from((a, b) for a, b in edges if a in keep and b in keep)
    return [set(c) for c in nx.connected_components(g)]


def spanning_tree_count(G: DualGraph) -> int:
    """Enumerate edge subsets of size ``V - 1`` and keep the acyclic spanning ones."""
    n = G.n_vertices
    plain = [e for e in G.edges if e[0] != e[1]]
    count = 0
    for subset in combinations(range(len(plain)), n - 1):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for k in subset:
            a, b = plain[k]
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        count += ok
    return count


def laplacian_matrix(G: DualGraph) -> list[list[int]]:
    n = G.n_vertices
    L = [[0] * n for _ in range(n)]
    for a, b in G.edges:
        if a == b:
            continue
        L[a][a] += 1
        L[b][b] += 1
        L[a][b] -= 1
        L[b][a] -= 1
    return L


def sympy_invariant_factors(G: DualGraph) -> list[int]:
    """Nontrivial invariant factors of the reduced Laplacian via sympy."""
    L = laplacian_matrix(G)
    n = len(L)
    if n == 1:
        return []
    from sympy.matrices.normalforms import smith_normal_form

    red = sympy.Matrix([row[1:] for row in L[1:]])
    snf = smith_normal_form(red, domain=sympy.ZZ)
    diag = [abs(int(snf[i, i])) for i in range(n - 1)]
    return sorted(d for d in diag if d != 1)


def laplacian_equivalent(G: DualGraph, d1: Sequence[int], d2: Sequence[int]) -> bool:
    """``d1 - d2 ∈ L·Z^n`` checked by an exact rational solve with ``x_0 = 0``."""
    if sum(d1) != sum(d2):
        return False
    n = G.n_vertices
    if n == 1:
        return tuple(d1) == tuple(d2)
    L = laplacian_matrix(G)
    red = sympy.Matrix([row[1:] for row in L[1:]])
    rhs = sympy.Matrix([d1[i] - d2[i] for i in range(1, n)])
    x = red.LUsolve(rhs)
    return all(sympy.Rational(v).q == 1 for v in x)


# ---------------------------------------------------------------------------
# Stability by scanning every subcurve


def chi_of(G: DualGraph, mask: int, removed: frozenset[int] = frozenset()) -> int:
    """``χ(O_Y)`` from scratch: genera, loops and internal edges."""
    verts = [i for i in range(G.n_vertices) if mask >> i & 1]
    chi = sum(1 - G.genera[i] for i in verts)
    for k, (a, b) in enumerate(G.edges):
        if k in removed:
            continue
        if mask >> a & 1 and mask >> b & 1:
            chi -= 1
    return chi


def q_on(q: Polarization, mask: int) -> Fraction:
    return sum((v for i, v in enumerate(q.values) if mask >> i & 1), Fraction(0))


def _chi_table(G: DualGraph, removed: frozenset[int]) -> list[int]:
    return [chi_of(G, mask, removed) if mask else 0 for mask in range(1 << G.n_vertices)]


def brute_classify(
    G: DualGraph, q: Polarization, d: Sequence[int], removed: frozenset[int] = frozenset(),
    chi: list[int] | None = None,
) -> str:
    """Verdict of a sheaf with multidegree ``d`` on ``Γ∖removed`` over all proper subcurves."""
    full = (1 << G.n_vertices) - 1
    chi = chi or _chi_table(G, removed)
    if sum(d) + chi[full] != q.total:
        return "wrong_total"
    verdict = "stable"
    for mask in range(1, full):
        lhs = sum(d[i] for i in range(G.n_vertices) if mask >> i & 1) + chi[mask]
        rhs = q_on(q, mask)
        if lhs < rhs:
            return "unstable"
        if lhs == rhs:
            verdict = "strictly_semistable"
    return verdict


def _singleton_range(G: DualGraph, q: Polarization, i: int, removed: frozenset[int]) -> range:
    """``ceil(q_i - χ_i) <= d_i <= floor(q_i + δ_i - χ_i)`` from the inequalities on ``C_i`` and its complement."""
    chi_i = chi_of(G, 1 << i, removed)
    links = sum(
        1 for k, (a, b) in enumerate(G.edges) if k not in removed and a != b and i in (a, b)
    )
    return range(ceil(q[i] - chi_i), floor(q[i] + links - chi_i) + 1)


def _box(G: DualGraph, q: Polarization, removed: frozenset[int]):
    total = q.total - chi_of(G, (1 << G.n_vertices) - 1, removed)
    n = G.n_vertices
    for head in product(*(_singleton_range(G, q, i, removed) for i in range(n - 1))):
        yield head + (total - sum(head),)


def brute_multidegrees(
    G: DualGraph, q: Polarization, verdicts: tuple[str, ...] = ("stable",),
    removed: frozenset[int] = frozenset(),
) -> list[tuple[int, ...]]:
    """All multidegrees on ``Γ∖removed`` with one of the given verdicts."""
    chi = _chi_table(G, removed)
    return sorted(
        d for d in _box(G, q, removed) if brute_classify(G, q, d, removed, chi) in verdicts
    )


def brute_general(G: DualGraph, q: Polarization) -> bool:
    full = (1 << G.n_vertices) - 1
    for mask in range(1, full):
        verts = {i for i in range(G.n_vertices) if mask >> i & 1}
        rest = set(range(G.n_vertices)) - verts
        if len(components_of(G.n_vertices, G.edges, verts)) == 1 and len(
            components_of(G.n_vertices, G.edges, rest)
        ) == 1 and q_on(q, mask).denominator == 1:
            return False
    return True


def brute_abel(G: DualGraph, q: Polarization) -> bool:
    """Some ``d`` with every smooth-point twist stable and every node image stable."""
    n = G.n_vertices
    total = q.total + 1 - chi_of(G, (1 << n) - 1)
    chi = _chi_table(G, frozenset())
    node_chi = {k: _chi_table(G, frozenset({k})) for k in range(len(G.edges))}
    ranges = [_singleton_range(G, q, i, frozenset()) for i in range(n - 1)]
    for head in product(*(range(r.start, r.stop + 1) for r in ranges)):
        d = head + (total - sum(head),)
        ok = True
        for i in range(n):
            t = list(d)
            t[i] -= 1
            if brute_classify(G, q, t, chi=chi) != "stable":
                ok = False
                break
        if not ok:
            continue
        for k, (a, b) in enumerate(G.edges):
            img = list(d)
            img[a] -= 1
            img[b] -= 1
            if brute_classify(G, q, img, frozenset({k}), node_chi[k]) != "stable":
                ok = False
                break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# Posets


def nx_isomorphic(P, Q) -> bool:
    """Graded poset isomorphism through networkx's VF2 matcher."""

    def as_graph(R) -> nx.DiGraph:
        g = nx.DiGraph()
        for i, grade in enumerate(R.grades):
            g.add_node(i, grade=grade)
        g.add_edges_from(R.covers)
        return g

    return nx.is_isomorphic(
        as_graph(P), as_graph(Q), node_match=lambda a, b: a["grade"] == b["grade"]
    )


# ---------------------------------------------------------------------------
# Random corpus


def random_graph(
    rng: random.Random, max_vertices: int = 5, max_edges: int = 7, max_genus: int = 2,
    loops: bool = True,
) -> DualGraph:
    """A connected multigraph: a random spanning tree plus random extra edges."""
    n = rng.randint(1, max_vertices)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    budget = rng.randint(len(edges), max(len(edges), max_edges))
    while len(edges) < budget:
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b and not loops:
            continue
        edges.append((min(a, b), max(a, b)))
    rng.shuffle(edges)
    genera = tuple(rng.randint(0, max_genus) for _ in range(n))
    return DualGraph(tuple(f"V{i}" for i in range(n)), genera, tuple(edges))


def random_polarization(
    rng: random.Random, G: DualGraph, total: int | None = None, denominators=(2, 3, 5, 7, 12)
) -> Polarization:
    n = G.n_vertices
    den = rng.choice(denominators)
    vals = [Fraction(rng.randint(-3 * den, 3 * den), den) for _ in range(n - 1)]
    t = rng.randint(-3, 3) if total is None else total
    vals.append(Fraction(t) - sum(vals, Fraction(0)))
    return Polarization(tuple(vals))


def random_general_polarization(
    rng: random.Random, G: DualGraph, total: int | None = None
) -> Polarization:
    """Rejection sampling with large prime denominators; general almost surely."""
    while True:
        q = random_polarization(rng, G, total, denominators=(97, 101, 211))
        if brute_general(G, q):
            return q


def corpus(seed: int = 20240601, size: int = 20) -> list[DualGraph]:
    rng = random.Random(seed)
    return [random_graph(rng) for _ in range(size)]


def bridged_graph(rng: random.Random) -> DualGraph:
    """Two or three small blocks joined by bridges."""
    blocks = []
    for _ in range(rng.randint(2, 3)):
        blocks.append(random_graph(rng, max_vertices=3, max_edges=4, max_genus=1))
    names: list[str] = []
    genera: list[int] = []
    edges: list[tuple[int, int]] = []
    offsets = []
    for b, block in enumerate(blocks):
        off = len(names)
        offsets.append(off)
        names += [f"B{b}V{i}" for i in range(block.n_vertices)]
        genera += list(block.genera)
        edges += [(a + off, c + off) for a, c in block.edges]
    for b in range(1, len(blocks)):
        target = rng.randrange(b)
        u = offsets[target] + rng.randrange(blocks[target].n_vertices)
        v = offsets[b] + rng.randrange(blocks[b].n_vertices)
        edges.append((u, v))
    return DualGraph(tuple(names), tuple(genera), tuple(edges))
