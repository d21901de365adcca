"""Polarizations, stability and strata.

A polarization assigns a rational number to each component with integral
total. A line bundle of multidegree ``d`` is compared against it through
``χ(L_Y) = d_Y + χ(O_Y)`` on subcurves ``Y``; a stratum ``(S, d)``
describes sheaves that fail to be locally free exactly at the nodes in
``S`` and is compared the same way on the partial normalization.

Subcurves are handled internally as bit masks over component indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, floor, lcm
from typing import Iterable, Iterator, Sequence

from .curves import (
    CurveModel,
    DualGraph,
    IntersectionTable,
    Subcurve,
    biconnected_masks,
    bridges,
    check_component_cap,
    proper_masks,
    separating_blocks,
)
from .errors import (
    BadParameter,
    DisconnectedNormalization,
    HasBridges,
    HasSeparatingPoints,
    MalformedSpec,
    NonIntegralTotal,
    NotBlockCompatible,
    NotGeneral,
    TooManyEdges,
    WrongTotal,
)

MAX_STRATA_EDGES = 12


def parse_rational(value: object) -> Fraction:
    """Parse ``"p/q"`` strings, integers and fractions; reject decimals."""
    if isinstance(value, bool):
        raise MalformedSpec(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise MalformedSpec(f"decimals are not accepted: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise MalformedSpec(f"not a rational: {value!r}") from None
    raise MalformedSpec(f"not a rational: {value!r}")


def format_rational(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class Polarization:
    """Rational weights on components with integral total.

    Attributes:
        values: One exact rational per component.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if sum(vals, Fraction(0)).denominator != 1:
            raise NonIntegralTotal(f"total {sum(vals, Fraction(0))} is not an integer")

    @property
    def total(self) -> int:
        return int(sum(self.values, Fraction(0)))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def on(self, Y: Subcurve | int) -> Fraction:
        """Sum over a subcurve, given as a :class:`Subcurve` or a bit mask."""
        if isinstance(Y, Subcurve):
            return sum((self.values[i] for i in Y.members), Fraction(0))
        return sum((v for i, v in enumerate(self.values) if Y >> i & 1), Fraction(0))

    def shift(self, m: Sequence[int]) -> Polarization:
        return Polarization(tuple(v + k for v, k in zip(self.values, m)))

    def as_strings(self) -> list[str]:
        return [format_rational(v) for v in self.values]

    def __str__(self) -> str:
        return "(" + ", ".join(self.as_strings()) + ")"


def make_polarization(values: Iterable[object]) -> Polarization:
    """Build a polarization from rationals, integers or ``"p/q"`` strings.

    Raises:
        NonIntegralTotal: If the values do not sum to an integer.
    """
    return Polarization(tuple(parse_rational(v) for v in values))


def polarization_from_bundle(rank: int, multidegree: Sequence[int]) -> Polarization:
    """Polarization ``-deg(E|C_i) / rk(E)`` of a vector bundle."""
    if rank < 1:
        raise BadParameter("rank must be positive")
    return Polarization(tuple(Fraction(-d, rank) for d in multidegree))


def _check_length(X: CurveModel, values: Sequence[object], what: str) -> None:
    if len(values) != X.gamma:
        raise BadParameter(f"{what} has {len(values)} entries, the curve has {X.gamma} components")


def _mask_to_subcurve(X: CurveModel, mask: int) -> Subcurve:
    return Subcurve(tuple(i for i in range(X.gamma) if mask >> i & 1), X.gamma)


# ---------------------------------------------------------------------------
# Generality


@dataclass(frozen=True)
class Certificate:
    """A yes/no answer with an optional witness subcurve."""

    value: bool
    witness: Subcurve | None = None

    def __bool__(self) -> bool:
        return self.value


def is_general(X: CurveModel, q: Polarization) -> Certificate:
    """Whether ``q_Y`` is non-integral on every biconnected proper subcurve.

    On failure the witness is the first offending subcurve in
    lexicographic order.
    """
    _check_length(X, q.values, "polarization")
    for mask in biconnected_masks(X):
        if q.on(mask).denominator == 1:
            return Certificate(False, _mask_to_subcurve(X, mask))
    return Certificate(True)


def _mask_components(X: CurveModel, mask: int) -> list[int]:
    """Split a mask into the masks of its connected components."""
    out = []
    rest = mask
    while rest:
        start = (rest & -rest).bit_length() - 1
        comp = 1 << start
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(X.gamma):
                bit = 1 << j
                if rest & bit and not comp & bit and X.pairwise[i][j] > 0:
                    comp |= bit
                    stack.append(j)
        out.append(comp)
        rest &= ~comp
    return out


def integral_at(X: CurveModel, q: Polarization, mask: int) -> bool:
    """``q`` is integral at ``Y`` if it is integral on every connected piece of ``Y`` and ``Y^c``."""
    full = (1 << X.gamma) - 1
    pieces = _mask_components(X, mask) + _mask_components(X, full ^ mask)
    return all(q.on(p).denominator == 1 for p in pieces)


def _nonseparating_links(X: CurveModel) -> list[tuple[int, int]]:
    """Pairs of distinct components joined through a non-separating point."""
    if isinstance(X, DualGraph):
        br = set(bridges(X))
        return [X.edges[e] for e in range(X.n_edges) if e not in br and not X.is_loop(e)]
    full = (1 << X.gamma) - 1
    out = []
    for i, j in combinations(range(X.gamma), 2):
        m = X.pairwise[i][j]
        if m == 0:
            continue
        if m == 1:
            side = next(c for c in _mask_components(_without_pair(X, i, j), full) if c >> i & 1)
            if not side >> j & 1:
                continue
        out.append((i, j))
    return out


class _Adjacency(CurveModel):
    def __init__(self, X: CurveModel, pairwise: Sequence[Sequence[int]]):
        self.names = X.names
        self.genera = X.genera
        self.self_lengths = X.self_lengths
        self.pairwise = tuple(tuple(r) for r in pairwise)


def _without_pair(X: CurveModel, i: int, j: int) -> CurveModel:
    pair = [list(r) for r in X.pairwise]
    pair[i][j] = pair[j][i] = 0
    return _Adjacency(X, pair)


def is_nondegenerate(X: CurveModel, q: Polarization) -> Certificate:
    """Whether ``q`` is non-integral at every subcurve cut along a non-bridge node."""
    _check_length(X, q.values, "polarization")
    links = _nonseparating_links(X)

    def cut_has_nonbridge(mask: int) -> bool:
        return any((mask >> i & 1) != (mask >> j & 1) for i, j in links)

    for mask in proper_masks(X):
        if cut_has_nonbridge(mask) and integral_at(X, q, mask):
            return Certificate(False, _mask_to_subcurve(X, mask))
    return Certificate(True)


# ---------------------------------------------------------------------------
# Line bundles


@dataclass(frozen=True)
class Witness:
    """A tight or violated inequality ``χ(L_Y) >= q_Y``."""

    subcurve: Subcurve
    chi: int
    q: Fraction

    @property
    def violated(self) -> bool:
        return self.chi < self.q


@dataclass(frozen=True)
class StabilityReport:
    """Verdict of a stability check.

    Attributes:
        verdict: ``"stable"``, ``"strictly_semistable"`` or ``"unstable"``.
        witnesses: Every tight or violated subcurve, in lexicographic order.
    """

    verdict: str
    witnesses: tuple[Witness, ...] = ()

    @property
    def stable(self) -> bool:
        return self.verdict == "stable"

    @property
    def semistable(self) -> bool:
        return self.verdict != "unstable"


class _Scan:
    """Precomputed data for repeated stability checks on one curve.

    Holds, for each subcurve mask in ``masks``, the value of ``q_Y`` and
    ``χ(O_Y)``.
    """

    def __init__(self, X: CurveModel, q: Polarization, masks: Sequence[int]):
        self.gamma = X.gamma
        self.masks = list(masks)
        self.qs = [q.on(m) for m in self.masks]
        self.chis = [X.mask_euler_char(m) for m in self.masks]
        self.members = [[i for i in range(X.gamma) if m >> i & 1] for m in self.masks]

    def values(self, d: Sequence[int]) -> Iterator[tuple[int, int, Fraction]]:
        for k, mem in enumerate(self.members):
            yield k, sum(d[i] for i in mem) + self.chis[k], self.qs[k]


def _report(X: CurveModel, scan: _Scan, d: Sequence[int]) -> StabilityReport:
    witnesses = []
    violated = False
    for k, chi, qy in scan.values(d):
        if chi <= qy:
            witnesses.append(Witness(_mask_to_subcurve(X, scan.masks[k]), chi, qy))
            violated = violated or chi < qy
    if violated:
        return StabilityReport("unstable", tuple(witnesses))
    if witnesses:
        return StabilityReport("strictly_semistable", tuple(witnesses))
    return StabilityReport("stable")


def euler_char_of_bundle(X: CurveModel, d: Sequence[int]) -> int:
    return sum(d) + X.mask_euler_char((1 << X.gamma) - 1)


def check_line_bundle(X: CurveModel, q: Polarization, d: Sequence[int]) -> StabilityReport:
    """Compare ``χ(L_Y)`` with ``q_Y`` on every biconnected proper subcurve.

    Raises:
        WrongTotal: If ``χ(L) != |q|``.
    """
    _check_length(X, q.values, "polarization")
    _check_length(X, d, "multidegree")
    chi = euler_char_of_bundle(X, d)
    if chi != q.total:
        raise WrongTotal(f"χ(L) = {chi} differs from |q| = {q.total}")
    return _report(X, _Scan(X, q, biconnected_masks(X)), d)


def _box_iter(lows: Sequence[int], highs: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """Integer vectors in a box with a fixed coordinate sum, lexicographically."""
    n = len(lows)
    if n == 0:
        if total == 0:
            yield ()
        return
    suffix_lo = [0] * (n + 1)
    suffix_hi = [0] * (n + 1)
    for i in reversed(range(n)):
        suffix_lo[i] = suffix_lo[i + 1] + lows[i]
        suffix_hi[i] = suffix_hi[i + 1] + highs[i]
    cur: list[int] = []

    def rec(i: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if remaining == 0:
                yield tuple(cur)
            return
        lo = max(lows[i], remaining - suffix_hi[i + 1])
        hi = min(highs[i], remaining - suffix_lo[i + 1])
        for v in range(lo, hi + 1):
            cur.append(v)
            yield from rec(i + 1, remaining - v)
            cur.pop()

    yield from rec(0, total)


def semistable_box(X: CurveModel, q: Polarization) -> tuple[list[int], list[int], int]:
    """Per-component degree bounds forced on semistable bundles, and the total."""
    lows, highs = [], []
    for i in range(X.gamma):
        bit = 1 << i
        chi = X.mask_euler_char(bit)
        dl = X.mask_delta(bit)
        lows.append(ceil(q[i] - chi))
        highs.append(floor(q[i] + dl - chi))
    total = q.total - X.mask_euler_char((1 << X.gamma) - 1)
    return lows, highs, total


def classify_box(X: CurveModel, q: Polarization) -> dict[str, list[tuple[int, ...]]]:
    """Every multidegree in the semistable box, grouped by verdict."""
    _check_length(X, q.values, "polarization")
    check_component_cap(X)
    scan = _Scan(X, q, biconnected_masks(X))
    out: dict[str, list[tuple[int, ...]]] = {
        "stable": [],
        "strictly_semistable": [],
        "unstable": [],
    }
    for d in _box_iter(*semistable_box(X, q)):
        out[_report(X, scan, d).verdict].append(d)
    return out


def semistable_multidegrees(X: CurveModel, q: Polarization) -> list[tuple[int, ...]]:
    groups = classify_box(X, q)
    return sorted(groups["stable"] + groups["strictly_semistable"])


def stable_multidegrees(X: CurveModel, q: Polarization) -> list[tuple[int, ...]]:
    """All stable multidegrees of total ``|q| - χ(O_X)``, sorted.

    Raises:
        NotGeneral: If ``q`` is not general.
    """
    cert = is_general(X, q)
    if not cert:
        raise NotGeneral(f"q is integral at {cert.witness}")
    return classify_box(X, q)["stable"]


# ---------------------------------------------------------------------------
# Strata


@dataclass(frozen=True, order=True)
class Stratum:
    """Sheaves singular exactly at the nodes ``S``, with multidegree on ``Γ∖S``.

    Attributes:
        S: Sorted edge indices.
        multidegree: Degrees on the components of the partial normalization.
    """

    S: tuple[int, ...]
    multidegree: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "S", tuple(sorted(set(self.S))))
        object.__setattr__(self, "multidegree", tuple(self.multidegree))


class PartialNormalization(CurveModel):
    """Intersection data of ``Γ∖S``; may be disconnected."""

    def __init__(self, G: DualGraph, S: Iterable[int]):
        removed = set(S)
        n = G.n_vertices
        loops = [0] * n
        pair = [[0] * n for _ in range(n)]
        for k, (a, b) in enumerate(G.edges):
            if k in removed:
                continue
            if a == b:
                loops[a] += 1
            else:
                pair[a][b] += 1
                pair[b][a] += 1
        self.names = G.names
        self.genera = G.genera
        self.self_lengths = tuple(loops)
        self.pairwise = tuple(tuple(r) for r in pair)

    @property
    def connected(self) -> bool:
        return self.mask_connected((1 << self.gamma) - 1)


def _require_general(X: CurveModel, q: Polarization) -> None:
    cert = is_general(X, q)
    if not cert:
        raise NotGeneral(f"q is integral at {cert.witness}")


class _StrataScan:
    """All-subcurve scan on ``Γ∖S`` for one polarization."""

    def __init__(self, G: DualGraph, q: Polarization, S: Iterable[int]):
        self.part = PartialNormalization(G, S)
        self.total_chi = self.part.mask_euler_char((1 << G.n_vertices) - 1)
        self.q = q
        self.scan = _Scan(self.part, q, proper_masks(G))

    def member(self, d: Sequence[int]) -> bool:
        if sum(d) + self.total_chi != self.q.total:
            return False
        return all(chi >= qy for _, chi, qy in self.scan.values(d))

    def box(self) -> tuple[list[int], list[int], int]:
        part = self.part
        lows, highs = [], []
        for i in range(part.gamma):
            bit = 1 << i
            chi = part.mask_euler_char(bit)
            lows.append(ceil(self.q[i] - chi))
            highs.append(floor(self.q[i] + part.mask_delta(bit) - chi))
        return lows, highs, self.q.total - self.total_chi

    def members(self) -> list[tuple[int, ...]]:
        return [d for d in _box_iter(*self.box()) if self.member(d)]


def stratum_in_B(G: DualGraph, q: Polarization, s: Stratum) -> bool:
    """Whether ``(S, d)`` satisfies ``χ(I_Y) >= q_Y`` for all proper ``Y``.

    Raises:
        DisconnectedNormalization: If removing ``S`` disconnects the graph.
        NotGeneral: If ``q`` is not general.
    """
    _check_length(G, q.values, "polarization")
    _check_length(G, s.multidegree, "multidegree")
    if any(not 0 <= e < G.n_edges for e in s.S):
        raise BadParameter(f"edge index out of range in {s.S}")
    scan = _StrataScan(G, q, s.S)
    if not scan.part.connected:
        raise DisconnectedNormalization(f"removing edges {list(s.S)} disconnects the graph")
    _require_general(G, q)
    return scan.member(s.multidegree)


def admissible_edge_sets(G: DualGraph) -> list[tuple[int, ...]]:
    """Edge sets whose removal keeps the graph connected, graded by size."""
    if G.n_edges > MAX_STRATA_EDGES:
        raise TooManyEdges(f"{G.n_edges} edges exceed the cap of {MAX_STRATA_EDGES}")
    candidates = [e for e in range(G.n_edges) if e not in set(bridges(G))]
    out = []
    for k in range(len(candidates) + 1):
        found = False
        for S in combinations(candidates, k):
            if PartialNormalization(G, S).connected:
                out.append(S)
                found = True
        if not found:
            break
    return out


def b_set(G: DualGraph, q: Polarization, S: Sequence[int]) -> list[tuple[int, ...]]:
    """Multidegrees ``d`` with ``(S, d)`` in the stability set, sorted."""
    scan = _StrataScan(G, q, S)
    if not scan.part.connected:
        raise DisconnectedNormalization(f"removing edges {list(S)} disconnects the graph")
    return scan.members()


@dataclass(frozen=True)
class StrataGrade:
    """All stable strata with a given number of singular nodes."""

    size: int
    sets: tuple[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]], ...]

    @property
    def count(self) -> int:
        return sum(len(ds) for _, ds in self.sets)


def enumerate_strata(G: DualGraph, q: Polarization) -> list[StrataGrade]:
    """Stable strata grouped by ``|S|``; grade 0 holds the stable multidegrees.

    Raises:
        NotGeneral: If ``q`` is not general.
        TooManyEdges: If the graph has more than 12 edges.
    """
    _check_length(G, q.values, "polarization")
    _require_general(G, q)
    grades: dict[int, list[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]] = {}
    for S in admissible_edge_sets(G):
        grades.setdefault(len(S), []).append((S, tuple(b_set(G, q, S))))
    return [StrataGrade(k, tuple(v)) for k, v in sorted(grades.items())]


def strata_list(G: DualGraph, q: Polarization) -> list[Stratum]:
    return [Stratum(S, d) for grade in enumerate_strata(G, q) for S, ds in grade.sets for d in ds]


# ---------------------------------------------------------------------------
# Separating blocks


def _bridge_incidence(G: DualGraph, br: Sequence[int]) -> list[int]:
    count = [0] * G.n_vertices
    for e in br:
        a, b = G.edges[e]
        count[a] += 1
        count[b] += 1
    return count


def induced_block_polarizations(
    G: DualGraph, q: Polarization
) -> list[tuple[DualGraph, Polarization]]:
    """Split ``q`` into one polarization per separating block.

    Each component gains half the number of bridges it touches.

    Raises:
        NotBlockCompatible: If some block would get a non-integral total.
    """
    _check_length(G, q.values, "polarization")
    dec = separating_blocks(G)
    inc = _bridge_incidence(G, dec.bridges)
    out = []
    for block, vmap in zip(dec.blocks, dec.vertex_maps):
        vals = tuple(q[v] + Fraction(inc[v], 2) for v in vmap)
        if sum(vals, Fraction(0)).denominator != 1:
            raise NotBlockCompatible(
                f"block {list(block.names)} gets non-integral total {sum(vals, Fraction(0))}"
            )
        out.append((block, Polarization(vals)))
    return out


def combine_block_polarizations(G: DualGraph, parts: Sequence[Polarization]) -> Polarization:
    """Inverse of :func:`induced_block_polarizations`."""
    dec = separating_blocks(G)
    if len(parts) != len(dec.blocks):
        raise BadParameter(f"expected {len(dec.blocks)} block polarizations, got {len(parts)}")
    inc = _bridge_incidence(G, dec.bridges)
    vals: list[Fraction] = [Fraction(0)] * G.n_vertices
    for part, block, vmap in zip(parts, dec.blocks, dec.vertex_maps):
        _check_length(block, part.values, "block polarization")
        for local, v in enumerate(vmap):
            vals[v] = part[local] - Fraction(inc[v], 2)
    q = Polarization(tuple(vals))
    assert q.total == sum(p.total for p in parts) + 1 - len(parts)
    return q


def _side_of_bridge(G: DualGraph, e: int) -> int:
    """Mask of the side of bridge ``e`` containing its lower endpoint."""
    a, _ = G.edges[e]
    part = PartialNormalization(G, [e])
    return next(m for m in _mask_components(part, (1 << G.n_vertices) - 1) if m >> a & 1)


def normalize_at_bridges(G: DualGraph, q: Polarization) -> Polarization:
    """Move weight across each bridge so ``q`` becomes block compatible.

    For a bridge with sides ``Y1`` and ``Y2`` the value ``q_{Y1}`` is moved to
    the nearest half-integer by shifting weight between the bridge's two
    endpoints. Only the wall of ``Y1`` changes, and it stays on the same
    side, so the stable set is unchanged for general ``q``.
    """
    _require_general(G, q)
    vals = list(q.values)
    for e in bridges(G):
        a, b = G.edges[e]
        side = _side_of_bridge(G, e)
        qy = sum((v for i, v in enumerate(q.values) if side >> i & 1), Fraction(0))
        target = floor(qy) + Fraction(1, 2)
        r = qy - target
        vals[a] -= r
        vals[b] += r
    return Polarization(tuple(vals))


# ---------------------------------------------------------------------------
# Abel maps


def has_separating_points(X: CurveModel) -> bool:
    """A biconnected subcurve meeting its complement once signals a separating point."""
    return any(X.mask_delta(m) == 1 for m in biconnected_masks(X))


def _check_no_separating(X: CurveModel) -> None:
    if isinstance(X, DualGraph):
        br = bridges(X)
        if br:
            raise HasBridges(f"the graph has bridges {br}")
    elif has_separating_points(X):
        raise HasSeparatingPoints("the curve has a separating point")


@dataclass(frozen=True)
class AbelPolarization:
    """Polarization attached to a line bundle by the Abel construction.

    Attributes:
        base: The unperturbed polarization; every Abel image is stable for it.
        general: A nearby general polarization with the same total for
            which every Abel image is still stable.
        epsilon: The perturbation size used.
    """

    base: Polarization
    general: Polarization
    epsilon: Fraction


def abel_base_polarization(X: CurveModel, d: Sequence[int]) -> Polarization:
    """``d_i - deg_i(ω)/2 - 1/γ`` on each component."""
    _check_length(X, d, "multidegree")
    omega = X.canonical_degrees()
    g = X.gamma
    return Polarization(tuple(Fraction(d[i]) - Fraction(omega[i], 2) - Fraction(1, g) for i in range(g)))


def perturbation_weights(gamma: int) -> tuple[int, ...]:
    """``(1, 2, ..., 2^(γ-1))`` with its sum removed from the last entry."""
    w = [2**i for i in range(gamma)]
    w[-1] -= sum(w)
    return tuple(w)


def abel_polarization(X: CurveModel, d: Sequence[int]) -> AbelPolarization:
    """The Abel polarization of ``d`` and a deterministic general perturbation.

    Raises:
        HasSeparatingPoints: If the curve has separating points.
    """
    _check_no_separating(X)
    base = abel_base_polarization(X, d)
    g = X.gamma
    w = perturbation_weights(g)
    denominators = [base.on(m).denominator for m in proper_masks(X)] or [1]
    D = lcm(*denominators)
    eps = Fraction(1, 2 * D * g * 2**g)
    points = abel_points(X)
    for _ in range(64):
        cand = Polarization(tuple(v + eps * wi for v, wi in zip(base.values, w)))
        if is_general(X, cand) and all(
            _point_image_stable(X, cand, d, p) for p in points
        ):
            return AbelPolarization(base, cand, eps)
        eps /= 2
    raise AssertionError("no general perturbation found")


def abel_points(X: CurveModel) -> list[tuple[int, ...]]:
    """Point types to test: a smooth point on each component and each singular point.

    A point is the tuple of components through it. Tables without declared
    points are treated as nodal: one point per pair of meeting components.
    """
    pts: list[tuple[int, ...]] = [(i,) for i in range(X.gamma)]
    if isinstance(X, DualGraph):
        pts += [(a, b) if a != b else (a,) for a, b in X.edges]
    elif isinstance(X, IntersectionTable) and X.points:
        pts += list(X.points)
    else:
        pts += [
            (i, j)
            for i in range(X.gamma)
            for j in range(i + 1, X.gamma)
            if X.pairwise[i][j] > 0
        ]
    return sorted(set(pts))


def _point_image_stable(
    X: CurveModel, q: Polarization, d: Sequence[int], point: tuple[int, ...]
) -> bool:
    """Stability of ``m_p ⊗ L``: ``χ(L_Y) - [p ∈ Y] > q_Y`` for biconnected ``Y``."""
    if sum(d) + X.mask_euler_char((1 << X.gamma) - 1) - 1 != q.total:
        return False
    pmask = sum(1 << i for i in point)
    for m in biconnected_masks(X):
        chi = sum(d[i] for i in range(X.gamma) if m >> i & 1) + X.mask_euler_char(m)
        if m & pmask:
            chi -= 1
        if chi <= q.on(m):
            return False
    return True


def _abel_box(X: CurveModel, q: Polarization) -> Iterator[tuple[int, ...]]:
    """Multidegrees whose smooth-point twists could be stable."""
    g = X.gamma
    total = q.total + 1 - X.mask_euler_char((1 << g) - 1)
    if g == 1:
        yield (total,)
        return
    lows, highs = [], []
    for i in range(g):
        bit = 1 << i
        chi = X.mask_euler_char(bit)
        # Twisting at a point of another component leaves d_i unchanged.
        lows.append(ceil(q[i] - chi))
        highs.append(floor(q[i] + X.mask_delta(bit) - chi))
    yield from _box_iter(lows, highs, total)


def node_image(G: DualGraph, d: Sequence[int], e: int) -> Stratum:
    """Stratum of ``m_p ⊗ L`` for the node ``p`` of edge ``e``."""
    a, b = G.edges[e]
    img = list(d)
    img[a] -= 1
    img[b] -= 1
    return Stratum((e,), tuple(img))


def admits_abel_map(X: CurveModel, q: Polarization) -> tuple[int, ...] | None:
    """A multidegree ``d`` whose Abel images are all ``q``-stable, if any.

    For dual graphs smooth points are checked as line-bundle twists and
    nodes as rank-one strata. For intersection tables every point type is
    checked through the restriction formula ``χ((m_p ⊗ L)_Y) = χ(L_Y) - [p ∈ Y]``.

    Raises:
        NotGeneral: If ``q`` is not general.
        HasBridges: If the dual graph has bridges.
        HasSeparatingPoints: If a table curve has a separating point.
    """
    _check_length(X, q.values, "polarization")
    _require_general(X, q)
    _check_no_separating(X)
    if isinstance(X, DualGraph):
        scan = _Scan(X, q, biconnected_masks(X))
        node_scans = {
            e: _StrataScan(X, q, (e,)) for e in range(X.n_edges)
        }
        for d in _abel_box(X, q):
            ok = True
            for i in range(X.gamma):
                twist = list(d)
                twist[i] -= 1
                if _report(X, scan, twist).verdict != "stable":
                    ok = False
                    break
            if not ok:
                continue
            if all(node_scans[e].member(node_image(X, d, e).multidegree) for e in node_scans):
                return d
        return None
    points = abel_points(X)
    for d in _abel_box(X, q):
        if all(_point_image_stable(X, q, d, p) for p in points):
            return d
    return None


def admits_abel_map_by_blocks(G: DualGraph, q: Polarization) -> tuple[tuple[int, ...], ...] | None:
    """Abel admission for a graph with bridges, one block at a time.

    ``q`` is first made block compatible, then each block is tested. The
    result lists one multidegree per block, or ``None`` if some block fails.
    """
    _require_general(G, q)
    adjusted = normalize_at_bridges(G, q)
    out = []
    for block, qb in induced_block_polarizations(G, adjusted):
        d = admits_abel_map(block, qb)
        if d is None:
            return None
        out.append(d)
    return tuple(out)
