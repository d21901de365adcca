"""Text, DOT and SVG renderings of face posets and arrangements."""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor

from ..errors import WrongRank
from ..stability import format_rational
from .faces import FacePoset, GradedPoset
from .toric import ToricArrangement


def _point(v: tuple[Fraction, ...]) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


def poset_to_text(P: GradedPoset) -> str:
    """Faces with grades, followed by the cover relations."""
    lines = [f"elements {len(P)}"]
    if isinstance(P, FacePoset):
        lines[0] += f" rank {P.rank}"
        for i, f in enumerate(P.faces):
            support = ",".join(str(e) for e in f.support)
            lines.append(f"face {i} dim {f.dim} support [{support}] sample {_point(f.sample)}")
    else:
        for i, g in enumerate(P.grades):
            label = P.labels[i] if P.labels else ""
            lines.append(f"element {i} grade {g} {label}".rstrip())
    for a, b in P.covers:
        lines.append(f"cover {a} < {b}")
    return "\n".join(lines) + "\n"


def poset_to_dot(P: GradedPoset, name: str = "poset") -> str:
    """Hasse diagram in Graphviz DOT, one rank per grade."""
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    by_grade: dict[int, list[int]] = {}
    for i, g in enumerate(P.grades):
        by_grade.setdefault(g, []).append(i)
    for i, g in enumerate(P.grades):
        if isinstance(P, FacePoset):
            label = f"{i}: dim {g}\\n{_point(P.faces[i].sample)}"
        else:
            label = P.labels[i] if P.labels else str(i)
        out.append(f'  n{i} [label="{label}"];')
    for g, ids in sorted(by_grade.items()):
        out.append("  { rank=same; " + " ".join(f"n{i};" for i in ids) + " }")
    for a, b in P.covers:
        out.append(f"  n{a} -> n{b};")
    out.append("}")
    return "\n".join(out) + "\n"


def _clip(a: int, b: int, c: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Endpoints of the line ``a x + b y = c`` inside the unit square."""
    pts: list[tuple[Fraction, Fraction]] = []
    if b != 0:
        for x in (Fraction(0), Fraction(1)):
            y = (c - a * x) / b
            if 0 <= y <= 1:
                pts.append((x, y))
    if a != 0:
        for y in (Fraction(0), Fraction(1)):
            x = (c - b * y) / a
            if 0 <= x <= 1:
                pts.append((x, y))
    pts = sorted(set(pts))
    return [pts[0], pts[-1]] if len(pts) >= 2 else []


def arrangement_to_svg(A: ToricArrangement, size: int = 400) -> str:
    """Draw a rank-2 arrangement on the unit square.

    Raises:
        WrongRank: If the arrangement is not of rank 2.
    """
    if A.rank != 2:
        raise WrongRank(f"SVG drawing needs rank 2, got {A.rank}")
    pad = 20
    full = size + 2 * pad

    def sx(v: Fraction) -> str:
        return f"{float(pad + v * size):.3f}"

    def sy(v: Fraction) -> str:
        return f"{float(pad + (1 - v) * size):.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" '
        f'viewBox="0 0 {full} {full}">',
        f'  <rect x="{pad}" y="{pad}" width="{size}" height="{size}" '
        'fill="none" stroke="#999" stroke-dasharray="4 3"/>',
    ]
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]
    for k, e in enumerate(A.families):
        a, b = A.functionals[e]
        c0 = A.offsets[e]
        corners = [a * x + b * y - c0 for x in (0, 1) for y in (0, 1)]
        colour = palette[k % len(palette)]
        for n in range(floor(min(corners)), ceil(max(corners)) + 1):
            seg = _clip(a, b, c0 + n)
            if not seg:
                continue
            (x1, y1), (x2, y2) = seg
            out.append(
                f'  <line x1="{sx(x1)}" y1="{sy(y1)}" x2="{sx(x2)}" y2="{sy(y2)}" '
                f'stroke="{colour}" stroke-width="2"><title>edge {e}</title></line>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
