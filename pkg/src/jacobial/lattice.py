"""Exact integer linear algebra on dual graphs.

Boundary map, fundamental cycles, Laplacian, spanning-tree count and the
degree class group. Everything is integer or :class:`~fractions.Fraction`
arithmetic; nothing here touches floating point.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curves import CurveModel, DualGraph

Matrix = list[list[int]]


@dataclass(frozen=True)
class BoundaryMap:
    """Boundary map ``C_1 -> C_0`` for the low-to-high orientation.

    Attributes:
        matrix: ``|V| x |E|`` integer matrix; column ``e`` is
            ``t(e) - s(e)``.
        orientation: ``(source, target)`` per edge.
    """

    matrix: tuple[tuple[int, ...], ...]
    orientation: tuple[tuple[int, int], ...]

    def apply(self, chain: Sequence[int | Fraction]) -> list[int | Fraction]:
        return [sum((row[e] * chain[e] for e in range(len(chain))), 0) for row in self.matrix]


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of a BFS spanning tree.

    Attributes:
        basis: One integer edge vector per non-tree edge.
        tree: Edge indices of the spanning tree.
        cotree: Non-tree edge indices; ``basis[k]`` is the cycle of
            ``cotree[k]`` and has coefficient ``+1`` there.
    """

    basis: tuple[tuple[int, ...], ...]
    tree: tuple[int, ...]
    cotree: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def functional(self, e: int) -> tuple[int, ...]:
        """Coordinates of ``e*`` restricted to H1 in this basis."""
        return tuple(c[e] for c in self.basis)


def boundary_map(G: DualGraph) -> BoundaryMap:
    mat = [[0] * G.n_edges for _ in range(G.n_vertices)]
    for k, (a, b) in enumerate(G.edges):
        if a != b:
            mat[a][k] -= 1
            mat[b][k] += 1
    return BoundaryMap(tuple(tuple(r) for r in mat), tuple(G.edges))


def cycle_basis(G: DualGraph) -> CycleBasis:
    """Fundamental cycles of the BFS tree rooted at vertex 0.

    Edges are scanned in their stored order, so the tree and hence the
    basis are deterministic. A loop is its own fundamental cycle.
    """
    n = G.n_vertices
    parent_edge: list[int | None] = [None] * n
    parent: list[int | None] = [None] * n
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    tree: list[int] = []
    while queue:
        u = queue.popleft()
        for k, (a, b) in enumerate(G.edges):
            if a == b or u not in (a, b):
                continue
            w = b if a == u else a
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                parent_edge[w] = k
                tree.append(k)
                queue.append(w)
    tree_set = set(tree)

    def path_to_root(v: int) -> list[tuple[int, int]]:
        """Edges with signs for walking from ``v`` up to the root."""
        steps = []
        while parent[v] is not None:
            k = parent_edge[v]
            assert k is not None
            up = parent[v]
            # Walking v -> up agrees with the low-to-high orientation iff v < up.
            steps.append((k, 1 if v < up else -1))
            v = up  # type: ignore[assignment]
        return steps

    basis, cotree = [], []
    for k, (a, b) in enumerate(G.edges):
        if k in tree_set:
            continue
        vec = [0] * G.n_edges
        vec[k] = 1
        if a != b:
            # Go along k from a to b, then return b -> root -> a.
            for e, s in path_to_root(b):
                vec[e] += s
            for e, s in path_to_root(a):
                vec[e] -= s
        basis.append(tuple(vec))
        cotree.append(k)
    return CycleBasis(tuple(basis), tuple(sorted(tree)), tuple(cotree))


def intersection_matrix(X: CurveModel) -> Matrix:
    """Rows are the multidegrees of the twists by each component.

    Off the diagonal the entries are the pairwise lengths; the diagonal
    holds minus the row sum. Rows span the lattice of principal twists.
    """
    n = X.gamma
    out = []
    for i in range(n):
        row = [X.pairwise[i][j] if j != i else 0 for j in range(n)]
        row[i] = -sum(row)
        out.append(row)
    return out


def laplacian(X: CurveModel) -> Matrix:
    """Loopless Laplacian ``∂∂ᵀ`` (the negated intersection matrix)."""
    return [[-v for v in row] for row in intersection_matrix(X)]


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def complexity(X: CurveModel) -> int:
    """Spanning-tree count via the matrix-tree theorem.

    For an intersection table this is the order of the degree class group
    of the weighted graph of pairwise lengths.
    """
    lap = laplacian(X)
    reduced = [row[1:] for row in lap[1:]]
    return determinant(reduced)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``U · A · V = D`` with ``U`` and ``V`` unimodular.

    Attributes:
        diagonal: Diagonal entries of ``D`` (nonnegative, dividing chain).
        left: The row transform ``U``.
        right: The column transform ``V``.
    """

    diagonal: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def smith_normal_form(mat: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with transforms, pivoting on the smallest entry."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [list(r) for r in mat]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src: int, dst: int, k: int) -> None:
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src: int, dst: int, k: int) -> None:
        for r in a:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [
                (abs(a[i][j]), i, j)
                for i in range(t, rows)
                for j in range(t, cols)
                if a[i][j] != 0
            ]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    add_row(t, i, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    add_col(t, j, -q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            # Enforce divisibility of the remaining block by the pivot.
            bad = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if a[i][j] % p
                ),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    return SmithForm(diag, tuple(tuple(r) for r in U), tuple(tuple(r) for r in V))


@dataclass(frozen=True)
class DegreeClassGroup:
    """Degree-0 multidegrees modulo principal twists.

    Attributes:
        invariant_factors: Nontrivial invariant factors ``d1 | d2 | ...``.
        order: Product of the factors.
        diagonal: Full Smith diagonal of the reduced Laplacian.
        right: Column transform; a degree-0 multidegree ``d`` has class
            ``(d[:-1] · right)_k mod diagonal[k]``.
    """

    invariant_factors: tuple[int, ...]
    order: int
    diagonal: tuple[int, ...]
    right: tuple[tuple[int, ...], ...]

    def canonical(self, d: Sequence[int]) -> tuple[int, ...]:
        """Canonical coset coordinates of a degree-0 multidegree."""
        if sum(d) != 0:
            raise ValueError("canonical form needs a degree-0 multidegree")
        head = list(d[:-1])
        coords = [sum(head[i] * self.right[i][k] for i in range(len(head))) for k in range(len(head))]
        return tuple(c % m if m else c for c, m in zip(coords, self.diagonal) if m != 1)

    def describe(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)


def degree_class_group(X: CurveModel) -> DegreeClassGroup:
    """Smith normal form of the principal-twist lattice.

    Degree-0 multidegrees are identified with ``Z^(γ-1)`` by dropping the
    last coordinate; the twist lattice becomes the row lattice of the
    Laplacian with its last row and column removed.
    """
    lap = laplacian(X)
    reduced = [row[:-1] for row in lap[:-1]]
    if not reduced:
        return DegreeClassGroup((), 1, (), ())
    snf = smith_normal_form(reduced)
    factors = tuple(f for f in snf.diagonal if f != 1)
    order = 1
    for f in factors:
        order *= f
    c = complexity(X)
    if order != c:
        raise AssertionError(f"degree class group order {order} differs from complexity {c}")
    # Row lattice of `reduced`: x·reduced. With U·R·V = D, coordinates d·V
    # are reduced modulo the diagonal.
    return DegreeClassGroup(factors, order, snf.diagonal, snf.right)


def same_degree_class(X: CurveModel, d: Sequence[int], d2: Sequence[int]) -> bool:
    """Whether ``d - d2`` is a sum of principal twists."""
    if len(d) != X.gamma or len(d2) != X.gamma:
        raise ValueError("multidegree length must match the number of components")
    if sum(d) != sum(d2):
        return False
    diff = [x - y for x, y in zip(d, d2)]
    group = degree_class_group(X)
    return all(v == 0 for v in group.canonical(diff))


def solve_rational(mat: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]
