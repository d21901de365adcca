"""Graded poset isomorphism and the poset of orbit strata.

Isomorphism is decided by colour refinement on the disjoint union of the
two Hasse diagrams (colours start from grades and absorb the multisets of
upper and lower neighbour colours), followed by individualization and
backtracking when the refinement leaves ties.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..curves import DualGraph
from ..errors import GradeCountMismatch, NotGeneral
from ..stability import Polarization, enumerate_strata, is_general
from .faces import FacePoset, GradedPoset, enumerate_faces
from .toric import normalize_total, toric_arrangement

Coloring = list[int]


class _Union:
    """Disjoint union of two posets as one adjacency structure."""

    def __init__(self, P: GradedPoset, Q: GradedPoset):
        self.n1 = len(P)
        n = len(P) + len(Q)
        self.up: list[list[int]] = [[] for _ in range(n)]
        self.down: list[list[int]] = [[] for _ in range(n)]
        for offset, poset in ((0, P), (self.n1, Q)):
            for a, b in poset.covers:
                self.up[a + offset].append(b + offset)
                self.down[b + offset].append(a + offset)
        self.grades = list(P.grades) + list(Q.grades)

    def refine(self, colors: Coloring) -> Coloring:
        while True:
            keys = [
                (
                    colors[v],
                    tuple(sorted(colors[w] for w in self.up[v])),
                    tuple(sorted(colors[w] for w in self.down[v])),
                )
                for v in range(len(colors))
            ]
            table = {k: i for i, k in enumerate(sorted(set(keys)))}
            new = [table[k] for k in keys]
            if len(table) == len(set(colors)):
                return new
            colors = new

    def balanced(self, colors: Coloring) -> bool:
        left: dict[int, int] = {}
        for c in colors[: self.n1]:
            left[c] = left.get(c, 0) + 1
        right: dict[int, int] = {}
        for c in colors[self.n1 :]:
            right[c] = right.get(c, 0) + 1
        return left == right


def _check_map(P: GradedPoset, Q: GradedPoset, colors: Coloring, n1: int) -> bool:
    where = {colors[n1 + j]: j for j in range(len(Q))}
    mapping = [where[colors[i]] for i in range(n1)]
    target = set(Q.covers)
    return all((mapping[a], mapping[b]) in target for a, b in P.covers)


def poset_isomorphic(P: GradedPoset, Q: GradedPoset) -> bool:
    """Whether two graded posets are isomorphic as graded posets."""
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return False
    if sorted(P.grades) != sorted(Q.grades):
        return False
    if len(P) == 0:
        return True
    U = _Union(P, Q)
    start = U.refine(list(U.grades))

    def search(colors: Coloring) -> bool:
        if not U.balanced(colors):
            return False
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            classes.setdefault(c, []).append(v)
        ties = [vs for vs in classes.values() if len(vs) > 2]
        if not ties:
            return _check_map(P, Q, colors, U.n1)
        cell = min(ties, key=len)
        v = next(x for x in cell if x < U.n1)
        fresh = max(colors) + 1
        for w in cell:
            if w < U.n1:
                continue
            trial = list(colors)
            trial[v] = fresh
            trial[w] = fresh
            if search(U.refine(trial)):
                return True
        return False

    return search(start)


def canonical_invariant(P: GradedPoset) -> tuple:
    """A cheap isomorphism invariant: the stable colour histogram by grade."""
    U = _Union(P, GradedPoset((), ()))
    colors = U.refine(list(U.grades))
    hist: dict[tuple[int, int], int] = {}
    for v, c in enumerate(colors):
        key = (P.grades[v], c)
        hist[key] = hist.get(key, 0) + 1
    return tuple(sorted(hist.items()))


# ---------------------------------------------------------------------------
# Strata poset


def strata_poset(G: DualGraph, q: Polarization) -> GradedPoset:
    """Stable strata ordered by specialization.

    ``(S ∪ {e}, d')`` lies below ``(S, d)`` when ``d'`` is ``d`` lowered by
    one on either endpoint of ``e``. The grade of ``(S, d)`` is ``g - |S|``,
    matching face dimensions.
    """
    grades = enumerate_strata(G, q)
    g = G.first_betti
    elems: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for grade in grades:
        for S, ds in grade.sets:
            for d in ds:
                elems.append((S, d))
    index = {el: i for i, el in enumerate(elems)}
    covers = set()
    for S, d in elems:
        for e in range(G.n_edges):
            if e in S:
                continue
            S2 = tuple(sorted(S + (e,)))
            for end in set(G.edges[e]):
                d2 = list(d)
                d2[end] -= 1
                lower = (S2, tuple(d2))
                if lower in index:
                    covers.add((index[lower], index[(S, d)]))
    labels = tuple(f"S={list(S)} d={list(d)}" for S, d in elems)
    return GradedPoset(tuple(g - len(S) for S, _ in elems), tuple(sorted(covers)), labels)


@dataclass(frozen=True)
class OrbitPoset:
    """Face poset of the arrangement together with stratum counts.

    Attributes:
        poset: The face poset.
        strata_counts: Number of stable strata with ``|S| = k``, indexed by ``k``.
        polarization: The normalized polarization used for the arrangement.
    """

    poset: FacePoset
    strata_counts: tuple[int, ...]
    polarization: Polarization


def orbit_poset(G: DualGraph, q: Polarization) -> OrbitPoset:
    """Face poset of the arrangement of ``q``, checked against strata counts.

    Raises:
        NotGeneral: If ``q`` is not general.
        GradeCountMismatch: If face counts and stratum counts disagree.
    """
    cert = is_general(G, q)
    if not cert:
        raise NotGeneral(f"q is integral at {cert.witness}")
    qn = normalize_total(G, q)
    A = toric_arrangement(G, qn)
    P = enumerate_faces(A)
    g = A.rank
    counts = [0] * (g + 1)
    for grade in enumerate_strata(G, qn):
        if grade.size > g:
            raise GradeCountMismatch(f"strata with {grade.size} nodes exceed rank {g}")
        counts[grade.size] = grade.count
    faces = P.counts_by_dim()
    for k in range(g + 1):
        if faces[g - k] != counts[k]:
            raise GradeCountMismatch(
                f"{faces[g - k]} faces of dimension {g - k} but {counts[k]} strata with {k} nodes"
            )
    return OrbitPoset(P, tuple(counts), qn)


def euler_check(P: FacePoset) -> int:
    """``Σ (-1)^(g-k) #faces_k``; zero on a torus of positive rank."""
    return sum((-1) ** (P.rank - f.dim) for f in P.faces)
