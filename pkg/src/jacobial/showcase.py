"""Ready-made inputs for the worked examples and their expected numbers.

The blown-up dollar sign graph ``X_n`` has cycle coordinates ``x`` (top
path closed by the direct edge) and ``y`` (bottom path closed the same
way). Top edges carry ``x*``, bottom edges ``y*`` and the direct edge
``-(x* + y*)`` in the low-to-high orientation, so an arrangement with
lines ``x ∈ X``, ``y ∈ Y`` and ``x + y = s`` uses offset ``-s`` on the
direct edge.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .arrangements import (
    FacePoset,
    count_polygons,
    orbit_poset,
    polarization_for_offsets,
    polarization_chambers,
    poset_isomorphic,
)
from .curves import gallery
from .stability import Polarization


def dollar_offsets(
    n: int, xs: Sequence[Fraction], ys: Sequence[Fraction], diagonal: Fraction
) -> list[Fraction]:
    """Edge offsets on ``X_n`` for vertical lines ``xs``, horizontal ``ys`` and ``x + y = diagonal``."""
    if len(xs) != n + 1 or len(ys) != n + 1:
        raise ValueError("each path needs one offset per edge")
    return [Fraction(v) for v in xs] + [Fraction(v) for v in ys] + [-Fraction(diagonal)]


def first_dollar_pair() -> tuple[Polarization, Polarization]:
    """The two genus-2 arrangements on ``X_1`` with 2 and 4 triangles."""
    G = gallery("blownup_dollar", 1)
    grid = [Fraction(0), Fraction(1, 3)]
    left = polarization_for_offsets(G, dollar_offsets(1, grid, grid, Fraction(3, 4)))
    right = polarization_for_offsets(G, dollar_offsets(1, grid, grid, Fraction(2, 5)))
    return left, right


def dollar_family(n: int, i: int, sign: int) -> Polarization:
    """Polarization for ``V_i^±`` on ``X_n``.

    Lines sit at ``x = h/3n`` and ``y = k/3n`` for ``0 <= h, k <= n``, and the
    diagonal at ``x + y = 2i/3n ± ε`` with ``ε = 1/(30n)``, well inside one
    grid spacing.
    """
    G = gallery("blownup_dollar", n)
    grid = [Fraction(h, 3 * n) for h in range(n + 1)]
    diag = Fraction(2 * i, 3 * n) + sign * Fraction(1, 30 * n)
    return polarization_for_offsets(G, dollar_offsets(n, grid, grid, diag))


def expected_triangles(n: int, i: int, sign: int) -> int:
    return 4 * (n - i) + (2 if sign > 0 else 4)


def dollar_rows(n: int) -> list[tuple[int, int, int, int, FacePoset]]:
    """``(i, sign, triangles, expected, poset)`` for every ``n/2 < i <= n``."""
    G = gallery("blownup_dollar", n)
    rows = []
    for i in range(n // 2 + 1, n + 1):
        for sign in (1, -1):
            P = orbit_poset(G, dollar_family(n, i, sign)).poset
            rows.append((i, sign, count_polygons(P, 3), expected_triangles(n, i, sign), P))
    return rows


def pairwise_non_isomorphic(posets: Sequence[FacePoset]) -> bool:
    return all(
        not poset_isomorphic(posets[a], posets[b])
        for a in range(len(posets))
        for b in range(a + 1, len(posets))
    )


KODAIRA_EXPECTED = {
    ("kodaira_I", None): 1,
    ("kodaira_II", None): 1,
    ("kodaira_III", None): 1,
    ("kodaira_IV", None): 2,
    ("kodaira_In", 2): 1,
    ("kodaira_In", 3): 2,
    ("kodaira_In", 4): 6,
    ("kodaira_In", 5): 24,
}


def kodaira_rows(with_abel: bool = True) -> list[dict]:
    out = []
    for (name, n), expected in KODAIRA_EXPECTED.items():
        X = gallery(name, n)
        chambers = polarization_chambers(X, abel=with_abel)
        row = {
            "curve": name if n is None else f"{name}({n})",
            "chambers": len(chambers),
            "expected": expected,
        }
        if with_abel:
            row["admits_abel"] = [bool(c.admits_abel) for c in chambers]
        out.append(row)
    return out
