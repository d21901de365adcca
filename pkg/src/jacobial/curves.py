"""Combinatorial curve models and subcurve calculus.

Two concrete models share one interface:

* :class:`DualGraph` for nodal curves (vertices are components, edges are
  nodes, loops and parallel edges allowed);
* :class:`IntersectionTable` for abstract curves described by pairwise
  intersection lengths, such as the Kodaira fibres of type III and IV.

Both reduce to the same intersection data (genera, self lengths and the
symmetric matrix of pairwise lengths), and every genus and Euler
characteristic formula below is written against that data.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Iterator, Sequence

from .errors import (
    BadParameter,
    DisconnectedGraph,
    DuplicateName,
    EmptySubcurve,
    ImproperSubcurve,
    MalformedSpec,
    TooManyComponents,
    UnknownName,
)

HARD_COMPONENT_CAP = 16


def component_cap() -> int:
    """Return the active cap on the number of components.

    ``JACOBIAL_MAX_COMPONENTS`` may lower or raise the default, but never
    beyond the hard cap of 16.
    """
    raw = os.environ.get("JACOBIAL_MAX_COMPONENTS")
    if raw is None:
        return HARD_COMPONENT_CAP
    try:
        value = int(raw)
    except ValueError:
        return HARD_COMPONENT_CAP
    return max(1, min(value, HARD_COMPONENT_CAP))


@dataclass(frozen=True, order=True)
class Subcurve:
    """A nonempty union of components, stored as sorted indices.

    Attributes:
        members: Sorted component indices.
        size: Number of components of the ambient curve.
    """

    members: tuple[int, ...]
    size: int

    def __post_init__(self) -> None:
        members = tuple(sorted(set(self.members)))
        if not members:
            raise EmptySubcurve("a subcurve needs at least one component")
        if members[0] < 0 or members[-1] >= self.size:
            raise BadParameter(f"component index out of range: {members}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, X: CurveModel, members: Iterable[int]) -> Subcurve:
        return cls(tuple(members), X.gamma)

    @property
    def proper(self) -> bool:
        return len(self.members) < self.size

    @property
    def mask(self) -> int:
        out = 0
        for i in self.members:
            out |= 1 << i
        return out

    def complement(self) -> Subcurve:
        if not self.proper:
            raise ImproperSubcurve("the whole curve has no complement")
        inside = set(self.members)
        return Subcurve(tuple(i for i in range(self.size) if i not in inside), self.size)

    def __contains__(self, item: int) -> bool:
        return item in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


class CurveModel:
    """Shared behaviour of dual graphs and intersection tables.

    Subclasses provide ``names``, ``genera``, ``self_lengths`` and the
    symmetric ``pairwise`` matrix. Everything else is derived.
    """

    names: tuple[str, ...]
    genera: tuple[int, ...]
    self_lengths: tuple[int, ...]
    pairwise: tuple[tuple[int, ...], ...]

    @property
    def gamma(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownName(f"no component named {name!r}") from None

    def subcurve(self, members: Iterable[int | str]) -> Subcurve:
        idx = [m if isinstance(m, int) else self.index(m) for m in members]
        return Subcurve(tuple(idx), self.gamma)

    def whole(self) -> Subcurve:
        return Subcurve(tuple(range(self.gamma)), self.gamma)

    def mask_connected(self, mask: int) -> bool:
        """Whether the components in ``mask`` span a connected subcurve."""
        if mask == 0:
            return False
        start = (mask & -mask).bit_length() - 1
        seen = 1 << start
        stack = [start]
        while stack:
            i = stack.pop()
            row = self.pairwise[i]
            for j in range(self.gamma):
                bit = 1 << j
                if mask & bit and not seen & bit and row[j] > 0:
                    seen |= bit
                    stack.append(j)
        return seen == mask

    def mask_euler_char(self, mask: int) -> int:
        total = 0
        members = [i for i in range(self.gamma) if mask >> i & 1]
        for i in members:
            total += 1 - self.genera[i] - self.self_lengths[i]
        for i, j in combinations(members, 2):
            total -= self.pairwise[i][j]
        return total

    def mask_delta(self, mask: int) -> int:
        total = 0
        for i in range(self.gamma):
            if not mask >> i & 1:
                continue
            row = self.pairwise[i]
            for j in range(self.gamma):
                if not mask >> j & 1:
                    total += row[j]
        return total

    def canonical_degrees(self) -> tuple[int, ...]:
        """Degree of the dualizing sheaf on each component.

        By adjunction ``deg_Y ω = -2 χ(O_Y) + δ_Y``.
        """
        full = (1 << self.gamma) - 1
        out = []
        for i in range(self.gamma):
            bit = 1 << i
            delta = self.mask_delta(bit) if self.gamma > 1 else 0
            out.append(-2 * self.mask_euler_char(bit) + delta)
        assert self.gamma == 0 or sum(out) == -2 * self.mask_euler_char(full)
        return tuple(out)


def _check_connected(model: CurveModel) -> None:
    if model.gamma == 0:
        raise MalformedSpec("a curve needs at least one component")
    if not model.mask_connected((1 << model.gamma) - 1):
        raise DisconnectedGraph("the curve is not connected")


def _check_names(names: Sequence[str]) -> None:
    seen: set[str] = set()
    for name in names:
        if not isinstance(name, str) or not name:
            raise MalformedSpec(f"bad component name {name!r}")
        if name in seen:
            raise DuplicateName(f"component name {name!r} repeated")
        seen.add(name)


def _check_nonneg_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise MalformedSpec(f"{what} must be a nonnegative integer, got {value!r}")
    return value


@dataclass(frozen=True)
class DualGraph(CurveModel):
    """Dual graph of a nodal curve.

    Edges are stored as index pairs ``(i, j)`` with ``i <= j``; their order
    is the order given at construction and indexes the edge coordinates of
    every homology computation.

    Attributes:
        names: Vertex names in order.
        genera: Geometric genus of each vertex.
        edges: Index pairs, one per node.
    """

    names: tuple[str, ...]
    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    self_lengths: tuple[int, ...] = field(init=False, repr=False, compare=False)
    pairwise: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _check_names(self.names)
        if len(self.genera) != len(self.names):
            raise MalformedSpec("one genus per vertex is required")
        for g in self.genera:
            _check_nonneg_int(g, "vertex genus")
        n = len(self.names)
        edges = []
        for e in self.edges:
            if len(e) != 2:
                raise MalformedSpec(f"edge {e!r} must have two endpoints")
            a, b = e
            for v in (a, b):
                if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                    raise MalformedSpec(f"edge endpoint {v!r} out of range")
            edges.append((min(a, b), max(a, b)))
        loops = [0] * n
        pair = [[0] * n for _ in range(n)]
        for a, b in edges:
            if a == b:
                loops[a] += 1
            else:
                pair[a][b] += 1
                pair[b][a] += 1
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "genera", tuple(self.genera))
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "self_lengths", tuple(loops))
        object.__setattr__(self, "pairwise", tuple(tuple(r) for r in pair))
        _check_connected(self)

    @classmethod
    def from_names(
        cls,
        vertices: Sequence[tuple[str, int]],
        edges: Sequence[tuple[str, str]],
    ) -> DualGraph:
        """Build a graph from ``(name, genus)`` vertices and named edges."""
        names = [v[0] for v in vertices]
        _check_names(names)
        lookup = {name: i for i, name in enumerate(names)}
        idx_edges = []
        for e in edges:
            if len(e) != 2:
                raise MalformedSpec(f"edge {e!r} must have two endpoints")
            try:
                idx_edges.append((lookup[e[0]], lookup[e[1]]))
            except KeyError as exc:
                raise MalformedSpec(f"edge {e!r} names an unknown vertex") from exc
        return cls(tuple(names), tuple(v[1] for v in vertices), tuple(idx_edges))

    @property
    def n_vertices(self) -> int:
        return len(self.names)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def first_betti(self) -> int:
        return self.n_edges - self.n_vertices + 1

    def is_loop(self, e: int) -> bool:
        a, b = self.edges[e]
        return a == b

    def edge_names(self, e: int) -> tuple[str, str]:
        a, b = self.edges[e]
        return self.names[a], self.names[b]

    def incident(self, v: int) -> list[int]:
        return [k for k, (a, b) in enumerate(self.edges) if v in (a, b)]

    def valence(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": [{"name": n, "genus": g} for n, g in zip(self.names, self.genera)],
            "edges": [[self.names[a], self.names[b]] for a, b in self.edges],
        }


@dataclass(frozen=True)
class IntersectionTable(CurveModel):
    """Abstract curve given by pairwise intersection lengths.

    ``self_lengths`` records the δ-invariant of the singularities lying on
    a single component (self nodes, or a cusp). ``points`` optionally lists
    the singular points as sets of components through them; it is only
    used to check Abel map admission at points meeting several components.

    Attributes:
        names: Component names.
        genera: Geometric genus of each component.
        pairwise: Symmetric matrix of lengths ``|C_i ∩ C_j|``; the diagonal
            is ignored and stored as zero.
        self_lengths: Per-component internal δ-invariant.
        points: Singular points, each a sorted tuple of component indices.
    """

    names: tuple[str, ...]
    genera: tuple[int, ...]
    pairwise: tuple[tuple[int, ...], ...]
    self_lengths: tuple[int, ...] = ()
    points: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        _check_names(self.names)
        n = len(self.names)
        if len(self.genera) != n:
            raise MalformedSpec("one genus per component is required")
        for g in self.genera:
            _check_nonneg_int(g, "component genus")
        selfs = tuple(self.self_lengths) or (0,) * n
        if len(selfs) != n:
            raise MalformedSpec("one self length per component is required")
        for s in selfs:
            _check_nonneg_int(s, "self length")
        if len(self.pairwise) != n or any(len(r) != n for r in self.pairwise):
            raise MalformedSpec("pairwise lengths must form a square matrix")
        pair = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                v = _check_nonneg_int(self.pairwise[i][j], "pairwise length")
                if v != self.pairwise[j][i]:
                    raise MalformedSpec("pairwise lengths must be symmetric")
                pair[i][j] = v
        points = []
        for p in self.points:
            comps = tuple(sorted(set(p)))
            if not comps or comps[0] < 0 or comps[-1] >= n:
                raise MalformedSpec(f"singular point {p!r} names unknown components")
            points.append(comps)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "genera", tuple(self.genera))
        object.__setattr__(self, "self_lengths", selfs)
        object.__setattr__(self, "pairwise", tuple(tuple(r) for r in pair))
        object.__setattr__(self, "points", tuple(points))
        _check_connected(self)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "components": [{"name": n, "genus": g} for n, g in zip(self.names, self.genera)],
            "pairwise": [list(r) for r in self.pairwise],
            "self": list(self.self_lengths),
        }
        if self.points:
            out["points"] = [[self.names[i] for i in p] for p in self.points]
        return out


# ---------------------------------------------------------------------------
# Genus, δ and Euler characteristic


def arithmetic_genus(X: CurveModel) -> int:
    """Arithmetic genus ``1 - χ(O_X)``."""
    if isinstance(X, DualGraph):
        return sum(X.genera) + X.n_edges - X.n_vertices + 1
    return 1 - X.mask_euler_char((1 << X.gamma) - 1)


def delta(X: CurveModel, Y: Subcurve) -> int:
    """Number of intersection points of ``Y`` with its complement.

    Raises:
        ImproperSubcurve: If ``Y`` is the whole curve.
    """
    if not Y.proper:
        raise ImproperSubcurve("δ is defined for proper subcurves only")
    return X.mask_delta(Y.mask)


def euler_char_structure(X: CurveModel, Y: Subcurve | None) -> int:
    """Euler characteristic of the structure sheaf of ``Y``."""
    if Y is None or len(Y) == 0:
        raise EmptySubcurve("χ(O_Y) needs a nonempty subcurve")
    return X.mask_euler_char(Y.mask)


# ---------------------------------------------------------------------------
# Subcurve enumeration


def check_component_cap(X: CurveModel) -> None:
    cap = component_cap()
    if X.gamma > cap:
        raise TooManyComponents(f"{X.gamma} components exceed the cap of {cap}")


def proper_masks(X: CurveModel) -> list[int]:
    """Bit masks of all nonempty proper subcurves, in lexicographic order."""
    check_component_cap(X)
    n = X.gamma
    out = []
    for k in range(1, n):
        for combo in combinations(range(n), k):
            out.append(sum(1 << i for i in combo))
    # Lexicographic on the sorted member tuples.
    out.sort(key=lambda m: [i for i in range(n) if m >> i & 1])
    return out


def biconnected_masks(X: CurveModel) -> list[int]:
    full = (1 << X.gamma) - 1
    return [m for m in proper_masks(X) if X.mask_connected(m) and X.mask_connected(full ^ m)]


def subcurves(X: CurveModel, filter: str = "all") -> list[Subcurve]:
    """Enumerate nonempty proper subcurves.

    Args:
        X: The curve.
        filter: ``"all"`` or ``"biconnected_pair"`` (both ``Y`` and its
            complement connected).

    Raises:
        TooManyComponents: If the curve has more components than the cap.
    """
    if filter == "all":
        masks = proper_masks(X)
    elif filter == "biconnected_pair":
        masks = biconnected_masks(X)
    else:
        raise BadParameter(f"unknown subcurve filter {filter!r}")
    n = X.gamma
    return [Subcurve(tuple(i for i in range(n) if m >> i & 1), n) for m in masks]


# ---------------------------------------------------------------------------
# Bridges and separating blocks


def _components_without(G: DualGraph, removed: set[int]) -> list[int]:
    """Label vertices by connected component of ``G`` minus ``removed``."""
    parent = list(range(G.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, (a, b) in enumerate(G.edges):
        if k not in removed:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(v) for v in range(G.n_vertices)]


def bridges(G: DualGraph) -> list[int]:
    """Indices of edges whose removal disconnects the graph."""
    out = []
    for k, (a, b) in enumerate(G.edges):
        if a == b:
            continue
        labels = _components_without(G, {k})
        if labels[a] != labels[b]:
            out.append(k)
    return out


@dataclass(frozen=True)
class BlockDecomposition:
    """Result of cutting a graph along its bridges.

    Attributes:
        bridges: Edge indices of the bridges.
        blocks: One connected graph per block, vertices in increasing
            global order.
        vertex_maps: For each block, the global index of each of its
            vertices.
        boundary_components: For each block, global indices of its
            vertices touched by a bridge.
    """

    bridges: tuple[int, ...]
    blocks: tuple[DualGraph, ...]
    vertex_maps: tuple[tuple[int, ...], ...]
    boundary_components: tuple[tuple[int, ...], ...]

    def __iter__(self) -> Iterator[Any]:
        return iter((self.bridges, self.blocks, self.boundary_components))

    def block_of(self, v: int) -> int:
        for b, vmap in enumerate(self.vertex_maps):
            if v in vmap:
                return b
        raise BadParameter(f"vertex {v} not found")


def separating_blocks(G: DualGraph) -> BlockDecomposition:
    """Split a dual graph along its bridges.

    A graph without bridges comes back as its own single block.
    """
    br = bridges(G)
    if not br:
        return BlockDecomposition((), (G,), (tuple(range(G.n_vertices)),), ((),))
    labels = _components_without(G, set(br))
    roots = sorted(set(labels))
    blocks, maps, bounds = [], [], []
    touched = {v for k in br for v in G.edges[k]}
    for root in roots:
        verts = tuple(v for v in range(G.n_vertices) if labels[v] == root)
        local = {v: i for i, v in enumerate(verts)}
        edges = tuple(
            (local[a], local[b])
            for k, (a, b) in enumerate(G.edges)
            if k not in br and a in local
        )
        blocks.append(
            DualGraph(tuple(G.names[v] for v in verts), tuple(G.genera[v] for v in verts), edges)
        )
        maps.append(verts)
        bounds.append(tuple(v for v in verts if v in touched))
    return BlockDecomposition(tuple(br), tuple(blocks), tuple(maps), tuple(bounds))


# ---------------------------------------------------------------------------
# Gallery


def cycle_graph(n: int) -> DualGraph:
    if n < 1:
        raise BadParameter("a cycle needs at least one vertex")
    if n == 1:
        return DualGraph(("C1",), (0,), ((0, 0),))
    names = tuple(f"C{i + 1}" for i in range(n))
    edges = tuple((i, (i + 1) % n) for i in range(n))
    return DualGraph(names, (0,) * n, edges)


def theta_graph() -> DualGraph:
    return DualGraph(("v1", "v2"), (0, 0), ((0, 1), (0, 1), (0, 1)))


def blownup_dollar(n: int) -> DualGraph:
    """Two hubs ``L`` and ``R`` joined by two paths of length ``n+1`` and one edge.

    Vertices are ordered ``L, T1..Tn, B1..Bn, R``; edges run along the top
    path, then the bottom path, then the direct edge ``LR``.
    """
    if n < 1:
        raise BadParameter("blownup_dollar needs n >= 1")
    if n == 1:
        names = ("L", "T", "B", "R")
    else:
        names = ("L",) + tuple(f"T{i}" for i in range(1, n + 1)) + tuple(
            f"B{i}" for i in range(1, n + 1)
        ) + ("R",)
    L, R = 0, 2 * n + 1
    top = [L] + list(range(1, n + 1)) + [R]
    bottom = [L] + list(range(n + 1, 2 * n + 1)) + [R]
    edges = [(top[i], top[i + 1]) for i in range(n + 1)]
    edges += [(bottom[i], bottom[i + 1]) for i in range(n + 1)]
    edges.append((L, R))
    return DualGraph(names, (0,) * len(names), tuple(edges))


GALLERY_NAMES = (
    "kodaira_I",
    "kodaira_II",
    "kodaira_III",
    "kodaira_IV",
    "kodaira_In",
    "dollar",
    "blownup_dollar",
    "cycle",
    "theta",
)


def gallery(name: str, n: int | None = None) -> CurveModel:
    """Named curves: Kodaira fibres and the blown-up dollar sign family.

    Raises:
        UnknownName: For names outside the gallery.
        BadParameter: For a missing or out-of-range ``n``.
    """
    if name == "kodaira_I":
        return cycle_graph(1)
    if name == "kodaira_II":
        # A cuspidal rational curve: one component whose singularity has δ = 1.
        return IntersectionTable(("C1",), (0,), ((0,),), (1,), ((0,),))
    if name == "kodaira_III":
        return IntersectionTable(("C1", "C2"), (0, 0), ((0, 2), (2, 0)), (0, 0), ((0, 1),))
    if name == "kodaira_IV":
        return IntersectionTable(
            ("C1", "C2", "C3"),
            (0, 0, 0),
            ((0, 1, 1), (1, 0, 1), (1, 1, 0)),
            (0, 0, 0),
            ((0, 1, 2),),
        )
    if name in ("dollar", "theta"):
        return theta_graph()
    if name in ("kodaira_In", "cycle", "blownup_dollar"):
        if n is None or isinstance(n, bool) or not isinstance(n, int):
            raise BadParameter(f"{name} needs an integer parameter n")
        if name == "kodaira_In":
            if n < 2:
                raise BadParameter("kodaira_In needs n >= 2")
            return cycle_graph(n)
        if name == "cycle":
            return cycle_graph(n)
        return blownup_dollar(n)
    raise UnknownName(f"no gallery curve named {name!r}")


# ---------------------------------------------------------------------------
# Curve-spec documents


def _parse_vertices(items: Any, key: str) -> list[tuple[str, int]]:
    if not isinstance(items, list) or not items:
        raise MalformedSpec(f"`{key}` must be a nonempty list")
    out = []
    for item in items:
        if isinstance(item, str):
            out.append((item, 0))
            continue
        if not isinstance(item, dict) or "name" not in item:
            raise MalformedSpec(f"each entry of `{key}` needs a name")
        name = item["name"]
        if not isinstance(name, str):
            name = str(name)
        out.append((name, _check_nonneg_int(item.get("genus", 0), "genus")))
    return out


def build_dual_graph(spec: dict[str, Any]) -> DualGraph:
    """Build a dual graph from a parsed curve-spec document.

    The document has ``vertices`` (a list of ``{name, genus}`` mappings, or
    bare names for genus 0) and ``edges`` (a list of name pairs).

    Raises:
        MalformedSpec: On missing or mistyped fields.
        DuplicateName: If two vertices share a name.
        DisconnectedGraph: If the graph is not connected.
    """
    if not isinstance(spec, dict) or "vertices" not in spec:
        raise MalformedSpec("a graph spec needs a `vertices` list")
    vertices = _parse_vertices(spec["vertices"], "vertices")
    edges = spec.get("edges", [])
    if not isinstance(edges, list):
        raise MalformedSpec("`edges` must be a list")
    pairs = []
    for e in edges:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise MalformedSpec(f"edge {e!r} must be a pair of names")
        pairs.append((str(e[0]), str(e[1])))
    return DualGraph.from_names(vertices, pairs)


def build_intersection_table(spec: dict[str, Any]) -> IntersectionTable:
    """Build an intersection table from ``components``/``pairwise``/``self``.

    ``points`` (optional) lists singular points as lists of component
    names.
    """
    comps = _parse_vertices(spec.get("components"), "components")
    names = [c[0] for c in comps]
    _check_names(names)
    pairwise = spec.get("pairwise")
    if pairwise is None and len(comps) == 1:
        pairwise = [[0]]
    if not isinstance(pairwise, list):
        raise MalformedSpec("`pairwise` must be a square matrix")
    selfs = spec.get("self", [0] * len(comps))
    if not isinstance(selfs, list):
        raise MalformedSpec("`self` must be a list")
    points = []
    for p in spec.get("points", []) or []:
        if not isinstance(p, list):
            raise MalformedSpec("each point must be a list of component names")
        try:
            points.append(tuple(names.index(str(c)) for c in p))
        except ValueError as exc:
            raise MalformedSpec(f"point {p!r} names an unknown component") from exc
    rows = []
    for r in pairwise:
        if not isinstance(r, list):
            raise MalformedSpec("`pairwise` must be a square matrix")
        rows.append(tuple(r))
    return IntersectionTable(
        tuple(names), tuple(c[1] for c in comps), tuple(rows), tuple(selfs), tuple(points)
    )


def build_curve(spec: dict[str, Any]) -> CurveModel:
    """Build any curve model from a parsed spec document.

    Accepts graph specs, table specs and ``{gallery: name, n: k}``.
    """
    if not isinstance(spec, dict):
        raise MalformedSpec("a curve spec must be a mapping")
    if "gallery" in spec:
        return gallery(str(spec["gallery"]), spec.get("n"))
    if "vertices" in spec:
        return build_dual_graph(spec)
    if "components" in spec:
        return build_intersection_table(spec)
    raise MalformedSpec("a curve spec needs `vertices`, `components` or `gallery`")


def curve_to_dict(X: CurveModel) -> dict[str, Any]:
    return X.to_dict()  # type: ignore[attr-defined]
