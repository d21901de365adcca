"""Exact face enumeration for periodic arrangements on ``R^g / Z^g``.

Every face of the torus complex has a vertex in its closure, so faces are
found locally: enumerate the vertices modulo ``Z^g``, then at each vertex
enumerate the sign vectors of the central arrangement of hyperplanes
through it. A face in the universal cover is named by its code
``p_e = 2n`` (on the hyperplane ``s_e = n``) or ``2n + 1`` (strictly
between ``n`` and ``n + 1``), where ``s_e(x) = m_e · x - c_e``. Translating
by ``z ∈ Z^g`` adds ``2 M z`` to the code, so torus faces are codes modulo
that lattice, made canonical with an echelon basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import floor, gcd
from typing import Sequence

from .. import fm
from ..errors import RankTooHigh, WrongRank
from ..lattice import determinant, solve_rational
from .toric import ToricArrangement

MAX_FACE_RANK = 3

Vec = tuple[Fraction, ...]


@dataclass(frozen=True)
class Face:
    """A cell of the torus complex.

    Attributes:
        dim: Dimension of the cell.
        support: Edges whose hyperplanes contain the cell.
        sample: An interior point, reduced to ``[0, 1)^g``.
        corners: Number of (vertex, local cone) incidences; for a 2-cell of
            a rank-2 arrangement this is its number of sides.
    """

    dim: int
    support: tuple[int, ...]
    sample: Vec
    corners: int = 0


@dataclass(frozen=True)
class GradedPoset:
    """A finite poset given by grades and cover relations.

    Attributes:
        grades: Grade of each element.
        covers: Pairs ``(lower, upper)`` with grades differing by one.
        labels: Optional description of each element.
    """

    grades: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.grades)

    def grade_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.grades:
            out[g] = out.get(g, 0) + 1
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class FacePoset(GradedPoset):
    """Faces of a torus arrangement ordered by closure.

    Grades are face dimensions.
    """

    faces: tuple[Face, ...] = ()
    rank: int = 0
    simple: bool = True

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def counts_by_dim(self) -> list[int]:
        return [len(self.faces_of_dim(k)) for k in range(self.rank + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** f.dim for f in self.faces)


# ---------------------------------------------------------------------------
# Small exact helpers


def _dot(a: Sequence[int | Fraction], b: Sequence[int | Fraction]) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def _primitive(v: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Primitive direction with positive leading entry, and the sign used."""
    g = 0
    for x in v:
        g = gcd(g, x)
    lead = next(x for x in v if x)
    s = 1 if lead > 0 else -1
    return tuple(s * x // g for x in v), s


def _rank(rows: Sequence[Sequence[int]]) -> int:
    mat = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                f = mat[r][c] / mat[rank][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _hermite_rows(gens: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row echelon basis with positive pivots and reduced entries above them."""
    rows = [list(r) for r in gens if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col] != 0]) > 1:
            nz = sorted((r for r in rows if r[col] != 0), key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                k = r[col] // p[col]
                for j in range(ncols):
                    r[j] -= k * p[j]
            rows = [r for r in rows if any(r)]
        p = next(r for r in rows if r[col] != 0)
        rows.remove(p)
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
        col += 1
    for i, r in enumerate(out):
        c = next(j for j, x in enumerate(r) if x)
        for prev in out[:i]:
            k = prev[c] // r[c]
            if k:
                for j in range(ncols):
                    prev[j] -= k * r[j]
    return out


def _reduce(code: Sequence[int], basis: Sequence[Sequence[int]]) -> tuple[int, ...]:
    p = list(code)
    for r in basis:
        c = next(j for j, x in enumerate(r) if x)
        k = p[c] // r[c]
        if k:
            for j in range(len(p)):
                p[j] -= k * r[j]
    return tuple(p)


def _mod1(x: Sequence[Fraction]) -> Vec:
    return tuple(v - floor(v) for v in x)


# ---------------------------------------------------------------------------
# Enumeration


@dataclass
class _Local:
    """Faces seen from one vertex."""

    point: Vec
    through: list[int]
    cones: list[tuple[tuple[int, ...], Vec]] = field(default_factory=list)


class _Enumerator:
    def __init__(self, A: ToricArrangement):
        self.A = A
        self.g = A.rank
        self.fam = A.families
        self.M = [A.functionals[e] for e in self.fam]
        self.c = [A.offsets[e] for e in self.fam]
        self.k = len(self.fam)
        gens = [[2 * self.M[i][j] for i in range(self.k)] for j in range(self.g)]
        self.lattice = _hermite_rows(gens)

    def s(self, i: int, x: Sequence[Fraction]) -> Fraction:
        return _dot(self.M[i], x) - self.c[i]

    def vertices(self) -> list[Vec]:
        seen: set[Vec] = set()
        for B in combinations(range(self.k), self.g):
            MB = [self.M[i] for i in B]
            det = determinant(MB)
            if det == 0:
                continue
            span = range(abs(det))
            for n in product(span, repeat=self.g):
                x = solve_rational(MB, [self.c[i] + n[j] for j, i in enumerate(B)])
                seen.add(_mod1(x))
        return sorted(seen)

    def local(self, x: Vec) -> _Local:
        through = [i for i in range(self.k) if self.s(i, x).denominator == 1]
        loc = _Local(x, through)
        # Group coincident hyperplanes by primitive normal direction.
        dirs: list[tuple[int, ...]] = []
        sign_of: dict[int, tuple[int, int]] = {}
        for i in through:
            d, s = _primitive(self.M[i])
            if d not in dirs:
                dirs.append(d)
            sign_of[i] = (dirs.index(d), s)
        independent = _rank(dirs) == len(dirs)
        for sig in product((-1, 0, 1), repeat=len(dirs)):
            direction = self._direction(dirs, sig, independent)
            if direction is None:
                continue
            full = tuple(sig[sign_of[i][0]] * sign_of[i][1] for i in through)
            loc.cones.append((full, direction))
        return loc

    def _direction(
        self, dirs: list[tuple[int, ...]], sig: Sequence[int], independent: bool
    ) -> Vec | None:
        g = self.g
        if independent and dirs:
            # Solve D d = sig on the independent normals, completing to a square system.
            rows = [list(d) for d in dirs]
            rhs = [Fraction(s) for s in sig]
            for j in range(g):
                if len(rows) == g:
                    break
                cand = rows + [[int(i == j) for i in range(g)]]
                if _rank(cand) == len(cand):
                    rows = cand
                    rhs.append(Fraction(0))
            return tuple(solve_rational(rows, rhs))
        cons: list[fm.Ineq] = []
        for d, s in zip(dirs, sig):
            if s > 0:
                cons.append(fm.ge(d, 1))
            elif s < 0:
                cons.append(fm.le(d, -1))
            else:
                cons += fm.eq(d, 0)
        sol = fm.solve(cons, g)
        return None if sol is None else tuple(sol)

    def code(self, loc: _Local, cone: tuple[int, ...]) -> tuple[int, ...]:
        p = []
        signs = dict(zip(loc.through, cone))
        for i in range(self.k):
            v = self.s(i, loc.point)
            if i in signs:
                p.append(2 * int(v) + signs[i])
            else:
                p.append(2 * floor(v) + 1)
        return _reduce(p, self.lattice)

    def sample(self, loc: _Local, direction: Vec) -> Vec:
        x = loc.point
        eps: Fraction | None = None
        for i in range(self.k):
            rate = _dot(self.M[i], direction)
            if rate == 0:
                continue
            v = self.s(i, x)
            if v.denominator == 1:
                gap = Fraction(1)
            else:
                gap = min(v - floor(v), floor(v) + 1 - v)
            bound = gap / abs(rate)
            eps = bound if eps is None else min(eps, bound)
        if eps is None:
            return x
        eps /= 2
        return _mod1(tuple(a + eps * b for a, b in zip(x, direction)))


def enumerate_faces(A: ToricArrangement) -> FacePoset:
    """All faces of the arrangement on the torus, with closure covers.

    Faces are sorted by dimension and then by sample point.

    Raises:
        RankTooHigh: If the torus has dimension above 3.
    """
    g = A.rank
    if g > MAX_FACE_RANK:
        raise RankTooHigh(f"face enumeration supports rank <= {MAX_FACE_RANK}, got {g}")
    if g == 0:
        face = Face(0, (), ())
        return FacePoset((0,), (), ("0",), (face,), 0, True)
    en = _Enumerator(A)
    info: dict[tuple[int, ...], dict] = {}
    relations: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    simple = True
    for x in en.vertices():
        loc = en.local(x)
        if len(loc.through) != g:
            simple = False
        codes = []
        for cone, direction in loc.cones:
            zero = [en.M[i] for i, s in zip(loc.through, cone) if s == 0]
            dim = g - (_rank(zero) if zero else 0)
            code = en.code(loc, cone)
            sample = en.sample(loc, direction)
            entry = info.setdefault(
                code,
                {
                    "dim": dim,
                    "support": tuple(sorted(en.fam[i] for i, s in zip(loc.through, cone) if s == 0)),
                    "sample": sample,
                    "corners": 0,
                },
            )
            if sample < entry["sample"]:
                entry["sample"] = sample
            entry["corners"] += 1
            codes.append((cone, code))
        for (c1, p1), (c2, p2) in product(codes, codes):
            if p1 != p2 and all(a == 0 or a == b for a, b in zip(c1, c2)):
                relations.add((p1, p2))
    ordered = sorted(info, key=lambda p: (info[p]["dim"], info[p]["sample"], p))
    index = {p: i for i, p in enumerate(ordered)}
    faces = tuple(
        Face(info[p]["dim"], info[p]["support"], info[p]["sample"], info[p]["corners"])
        for p in ordered
    )
    covers = sorted(
        (index[a], index[b])
        for a, b in relations
        if info[b]["dim"] == info[a]["dim"] + 1
    )
    grades = tuple(f.dim for f in faces)
    labels = tuple(
        f"dim{f.dim}[" + ",".join(str(v) for v in f.sample) + "]" for f in faces
    )
    return FacePoset(grades, tuple(covers), labels, faces, g, simple)


def is_simple(A: ToricArrangement) -> bool:
    """Whether exactly ``g`` hyperplanes pass through every vertex.

    Coincident hyperplanes from different edges count separately, so an
    arrangement with repeated hyperplanes is never simple.
    """
    if A.rank == 0:
        return True
    en = _Enumerator(A)
    for x in en.vertices():
        if sum(1 for i in range(en.k) if en.s(i, x).denominator == 1) != A.rank:
            return False
    return True


def count_polygons(P: FacePoset, sides: int) -> int:
    """Number of 2-cells with the given number of sides.

    Raises:
        WrongRank: If the arrangement is not of rank 2.
    """
    if P.rank != 2:
        raise WrongRank(f"polygon counts need rank 2, got {P.rank}")
    return sum(1 for f in P.faces if f.dim == 2 and f.corners == sides)


def polygon_histogram(P: FacePoset) -> dict[int, int]:
    if P.rank != 2:
        raise WrongRank(f"polygon counts need rank 2, got {P.rank}")
    out: dict[int, int] = {}
    for f in P.faces_of_dim(2):
        out[f.corners] = out.get(f.corners, 0) + 1
    return dict(sorted(out.items()))
