"""Chambers of general polarizations up to integral translation.

A general polarization is determined, up to the fine compactified
Jacobian it defines, by its ceil-signature ``Y -> ⌈q_Y⌉`` over the
biconnected subcurves. Chambers are enumerated by a depth-first search
over these walls inside a transversal of the translation action, with
each branch decided exactly by Fourier–Motzkin elimination.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Sequence

from .. import fm
from ..curves import CurveModel, DualGraph, Subcurve, biconnected_masks, bridges
from ..errors import BadParameter, NotGeneral, TooManyComponents
from ..stability import (
    Polarization,
    admits_abel_map,
    admits_abel_map_by_blocks,
    is_general,
    stable_multidegrees,
)

CHAMBER_COMPONENT_CAP = 6


@dataclass(frozen=True)
class Chamber:
    """One chamber of general polarizations.

    Attributes:
        signature: ``⌈q_Y⌉`` for each biconnected subcurve, in the order of
            :func:`~jacobial.curves.biconnected_masks`.
        representative: An exact interior point of the transversal.
        abel: A multidegree witnessing Abel map admission (one per block
            for curves with bridges), ``None`` if there is none, or
            ``False`` when the check was skipped.
    """

    signature: tuple[int, ...]
    representative: Polarization
    abel: object = False

    @property
    def admits_abel(self) -> bool | None:
        if self.abel is False:
            return None
        return self.abel is not None


def ceil_signature(X: CurveModel, q: Polarization) -> tuple[int, ...]:
    return tuple(ceil(q.on(m)) for m in biconnected_masks(X))


def signature_items(X: CurveModel, signature: Sequence[int]) -> list[tuple[Subcurve, int]]:
    masks = biconnected_masks(X)
    n = X.gamma
    return [
        (Subcurve(tuple(i for i in range(n) if m >> i & 1), n), v)
        for m, v in zip(masks, signature)
    ]


def chamber_of(X: CurveModel, q: Polarization) -> tuple[int, ...]:
    """Ceil-signature of a general polarization.

    Raises:
        NotGeneral: If ``q`` lies on a wall.
    """
    cert = is_general(X, q)
    if not cert:
        raise NotGeneral(f"q is integral at {cert.witness}")
    return ceil_signature(X, q)


def reduce_to_unit_cube(q: Polarization) -> Polarization:
    """The translate of ``q`` with every coordinate in ``[0, 1)``."""
    return Polarization(tuple(v - floor(v) for v in q.values))


def _abel_witness(X: CurveModel, q: Polarization) -> object:
    if isinstance(X, DualGraph) and bridges(X):
        return admits_abel_map_by_blocks(X, q)
    return admits_abel_map(X, q)


def _chamber_cap() -> int:
    raw = os.environ.get("JACOBIAL_MAX_CHAMBER_COMPONENTS")
    return int(raw) if raw and raw.isdigit() else CHAMBER_COMPONENT_CAP


def _slice_chambers(
    X: CurveModel, total: int, cube_last: bool
) -> list[tuple[tuple[int, ...], Polarization]]:
    """Chambers in the slice ``Σ q = total`` with ``q_1..q_{γ-1}`` in ``[0, 1)``.

    The last coordinate is eliminated as ``total - Σ``; when ``cube_last``
    it is also confined to ``[0, 1)``.
    """
    g = X.gamma
    nv = g - 1
    last = 1 << (g - 1)
    base: list[fm.Ineq] = []
    for i in range(nv):
        unit = [0] * nv
        unit[i] = 1
        base.append(fm.ge(unit, 0))
        base.append(fm.lt(unit, 1))
    if cube_last:
        ones = [1] * nv
        base.append(fm.le(ones, total))
        base.append(fm.gt(ones, total - 1))
    masks = biconnected_masks(X)
    walls = [m for m in masks if not m & last]
    walls.sort(key=lambda m: (bin(m).count("1"), m))
    forms = {m: [1 if m >> i & 1 else 0 for i in range(nv)] for m in walls}
    found: list[tuple[tuple[int, ...], Polarization]] = []

    def finish(cons: list[fm.Ineq]) -> None:
        point = fm.solve(cons, nv)
        if point is None:
            return
        vals = tuple(point) + (Fraction(total) - sum(point, Fraction(0)),)
        q = Polarization(vals)
        found.append((ceil_signature(X, q), q))

    def dfs(k: int, cons: list[fm.Ineq]) -> None:
        if k == len(walls):
            finish(cons)
            return
        form = forms[walls[k]]
        b = fm.project(cons, nv, form)
        if b is None:
            return
        assert b.lo is not None and b.hi is not None
        for c in range(floor(b.lo) + 1, ceil(b.hi) + 1):
            dfs(k + 1, cons + [fm.gt(form, c - 1), fm.lt(form, c)])

    if nv == 0:
        if not cube_last or 0 <= total < 1:
            found.append(((), Polarization((Fraction(total),))))
        return found
    dfs(0, base)
    return found


def _translation_key(stable: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    lo = min(stable)
    return tuple(sorted(tuple(a - b for a, b in zip(d, lo)) for d in stable))


def _dedupe(
    X: CurveModel, items: list[tuple[tuple[int, ...], Polarization]]
) -> list[tuple[tuple[int, ...], Polarization]]:
    """Keep one chamber per translation class.

    Two chambers are translates iff some integer shift carries one
    representative's signature onto the other's; candidate shifts come
    from differences of stable multidegrees, which move with the shift.
    """
    kept: list[tuple[tuple[int, ...], Polarization, list[tuple[int, ...]]]] = []
    by_key: dict[tuple[tuple[int, ...], ...], list[int]] = {}
    for sig, q in items:
        stable = stable_multidegrees(X, q)
        key = _translation_key(stable)
        dup = False
        for idx in by_key.get(key, []):
            sig0, q0, stable0 = kept[idx]
            s0 = stable0[0]
            for s in stable:
                shift = tuple(a - b for a, b in zip(s, s0))
                if ceil_signature(X, q0.shift(shift)) == sig:
                    dup = True
                    break
            if dup:
                break
        if not dup:
            by_key.setdefault(key, []).append(len(kept))
            kept.append((sig, q, stable))
    return [(sig, q) for sig, q, _ in kept]


def polarization_chambers(
    X: CurveModel,
    mode: str = "unit_cube",
    degree: int = 0,
    abel: bool = True,
) -> list[Chamber]:
    """Enumerate the chambers of general polarizations up to translation.

    Args:
        X: The curve.
        mode: ``"unit_cube"`` puts every coordinate in ``[0, 1)``;
            ``"last_component"`` puts the first ``γ-1`` coordinates in
            ``[0, 1)`` and fixes the total to ``degree``.
        degree: Total for ``"last_component"`` mode.
        abel: Whether to compute Abel map admission for each chamber.

    Raises:
        TooManyComponents: If the curve has more than six components.
    """
    cap = _chamber_cap()
    if X.gamma > cap:
        raise TooManyComponents(f"chamber enumeration supports at most {cap} components")
    if mode == "unit_cube":
        raw = []
        for t in range(X.gamma):
            raw += _slice_chambers(X, t, True)
    elif mode == "last_component":
        raw = _slice_chambers(X, degree, False)
    else:
        raise BadParameter(f"unknown chamber mode {mode!r}")
    items = _dedupe(X, raw)
    items.sort(key=lambda it: (it[1].total, it[0]))
    out = []
    for sig, q in items:
        out.append(Chamber(sig, q, _abel_witness(X, q) if abel else False))
    return out


def same_chamber_up_to_translation(X: CurveModel, q1: Polarization, q2: Polarization) -> bool:
    """Whether two general polarizations define translate Jacobians."""
    s1 = stable_multidegrees(X, q1)
    s2 = stable_multidegrees(X, q2)
    if _translation_key(s1) != _translation_key(s2):
        return False
    target = chamber_of(X, q2)
    for s in s2:
        shift = tuple(a - b for a, b in zip(s, s1[0]))
        if ceil_signature(X, q1.shift(shift)) == target:
            return True
    return False


def canonical_In_representatives(n: int) -> list[Polarization]:
    """Grid representatives ``(k_1/n, ..., k_{n-1}/n, -Σ)`` for the cycle of length ``n``.

    Keeps the grid points whose consecutive partial sums are never
    integers; there is exactly one per chamber.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise BadParameter("n must be an integer >= 2")
    out = []
    for ks in product(range(1, n), repeat=n - 1):
        vals = [Fraction(k, n) for k in ks]
        ok = True
        for r in range(n - 1):
            acc = Fraction(0)
            for s in range(r, n - 1):
                acc += vals[s]
                if acc.denominator == 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Polarization(tuple(vals) + (-sum(vals, Fraction(0)),)))
    return out
