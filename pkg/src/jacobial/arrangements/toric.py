"""The periodic hyperplane arrangement attached to a polarization.

For a dual graph with first Betti number ``g`` and a polarization ``q`` of
total ``1 - p_a``, put ``φ_v = q_v + deg_v(ω)/2`` and let ``ψ`` be the
unique edge vector orthogonal to the cycle space with ``∂ψ = φ``. The
arrangement consists of the hyperplanes ``e*(x) = n + 1/2 - ψ_e`` in
``H_1(Γ, R)``, taken modulo ``H_1(Γ, Z)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..curves import DualGraph, arithmetic_genus
from ..errors import BadParameter, WrongTotalDegree
from ..lattice import CycleBasis, boundary_map, cycle_basis, laplacian, solve_rational
from ..stability import Polarization

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ToricArrangement:
    """Hyperplane families ``m_e · x = c_e + n`` on ``R^g / Z^g``.

    Attributes:
        rank: Dimension ``g`` of the torus.
        functionals: Integer row vector ``m_e`` for each edge, in the
            coordinates of the cycle basis (zero for bridges).
        offsets: ``c_e = 1/2 - ψ_e`` for each edge.
        psi: The edge vector ``ψ``, or ``None`` for abstract arrangements.
        graph: Source graph, if any.
        polarization: The polarization actually used (after
            normalization), if any.
        basis: The cycle basis used for coordinates, if any.
    """

    rank: int
    functionals: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]
    psi: tuple[Fraction, ...] | None = None
    graph: DualGraph | None = None
    polarization: Polarization | None = None
    basis: CycleBasis | None = None

    @classmethod
    def from_offsets(
        cls, functionals: Sequence[Sequence[int]], offsets: Sequence[Fraction | int | str]
    ) -> ToricArrangement:
        """An abstract arrangement ``m_e · x ∈ c_e + Z``."""
        funcs = tuple(tuple(int(v) for v in f) for f in functionals)
        if len(funcs) != len(offsets):
            raise BadParameter("one offset per functional is required")
        ranks = {len(f) for f in funcs}
        if len(ranks) > 1:
            raise BadParameter("functionals must share one length")
        rank = ranks.pop() if ranks else 0
        return cls(rank, funcs, tuple(Fraction(c) for c in offsets))

    @property
    def families(self) -> list[int]:
        """Indices of the edges that contribute hyperplanes."""
        return [e for e, m in enumerate(self.functionals) if any(m)]


def solve_psi(G: DualGraph, phi: Sequence[Fraction], pin: int = 0) -> tuple[Fraction, ...]:
    """``ψ = ∂ᵀx`` where ``Lx = φ``, with ``x`` pinned to zero at ``pin``."""
    n = G.n_vertices
    if sum(phi, Fraction(0)) != 0:
        raise BadParameter("φ must have total zero")
    bd = boundary_map(G).matrix
    if n == 1:
        return tuple(Fraction(0) for _ in range(G.n_edges))
    lap = laplacian(G)
    keep = [v for v in range(n) if v != pin]
    sub = [[lap[i][j] for j in keep] for i in keep]
    sol = solve_rational(sub, [phi[i] for i in keep])
    x = [Fraction(0)] * n
    for v, val in zip(keep, sol):
        x[v] = val
    return tuple(sum((bd[v][e] * x[v] for v in range(n)), Fraction(0)) for e in range(G.n_edges))


def phi_vector(G: DualGraph, q: Polarization) -> tuple[Fraction, ...]:
    omega = G.canonical_degrees()
    return tuple(q[v] + Fraction(omega[v], 2) for v in range(G.n_vertices))


def normalize_total(G: DualGraph, q: Polarization) -> Polarization:
    """Translate ``q`` to total ``1 - p_a`` by changing component 0 only."""
    excess = q.total - (1 - arithmetic_genus(G))
    if excess == 0:
        return q
    shift = [0] * G.n_vertices
    shift[0] = -excess
    return q.shift(shift)


def toric_arrangement(
    G: DualGraph, q: Polarization, auto_normalize: bool = False
) -> ToricArrangement:
    """Build the arrangement of a polarization.

    Raises:
        WrongTotalDegree: If ``|q| != 1 - p_a`` and ``auto_normalize`` is off.
    """
    if len(q) != G.n_vertices:
        raise BadParameter("polarization length must match the number of vertices")
    target = 1 - arithmetic_genus(G)
    if q.total != target:
        if not auto_normalize:
            raise WrongTotalDegree(f"|q| = {q.total}, expected {target}")
        q = normalize_total(G, q)
    phi = phi_vector(G, q)
    psi = solve_psi(G, phi)
    basis = cycle_basis(G)
    funcs = tuple(basis.functional(e) for e in range(G.n_edges))
    offsets = tuple(HALF - p for p in psi)
    return ToricArrangement(basis.rank, funcs, offsets, psi, G, q, basis)


def polarization_for_offsets(G: DualGraph, offsets: Sequence[Fraction]) -> Polarization:
    """A polarization whose arrangement is a translate of ``e*(x) ∈ c_e + Z``.

    The wanted ``ψ = 1/2 - c`` is replaced by its projection onto the
    orthogonal complement of the cycle space; the difference lies in the
    cycle space and only translates the arrangement.
    """
    if len(offsets) != G.n_edges:
        raise BadParameter("one offset per edge is required")
    w = [HALF - Fraction(c) for c in offsets]
    basis = cycle_basis(G)
    B = basis.basis
    g = len(B)
    if g:
        gram = [[sum(a * b for a, b in zip(B[i], B[j])) for j in range(g)] for i in range(g)]
        rhs = [sum((a * b for a, b in zip(B[i], w)), Fraction(0)) for i in range(g)]
        coef = solve_rational(gram, rhs)
        w = [w[e] - sum((coef[k] * B[k][e] for k in range(g)), Fraction(0)) for e in range(G.n_edges)]
    bd = boundary_map(G).matrix
    phi = [sum((bd[v][e] * w[e] for e in range(G.n_edges)), Fraction(0)) for v in range(G.n_vertices)]
    omega = G.canonical_degrees()
    return Polarization(tuple(phi[v] - Fraction(omega[v], 2) for v in range(G.n_vertices)))
