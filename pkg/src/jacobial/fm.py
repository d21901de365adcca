"""Exact Fourier–Motzkin elimination with strict inequalities.

A constraint ``a · x < b`` or ``a · x <= b`` is a :class:`Ineq`. Systems
are eliminated one variable at a time; after each step only the tightest
bound per normalized direction is kept, which keeps the small systems
arising here (at most a few dozen constraints in at most six variables)
from blowing up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Ineq:
    """``coeffs · x < rhs`` if ``strict`` else ``coeffs · x <= rhs``."""

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    strict: bool

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, x)), Fraction(0))
        return lhs < self.rhs if self.strict else lhs <= self.rhs


def le(coeffs: Iterable[Fraction | int], rhs: Fraction | int) -> Ineq:
    return Ineq(tuple(Fraction(c) for c in coeffs), Fraction(rhs), False)


def lt(coeffs: Iterable[Fraction | int], rhs: Fraction | int) -> Ineq:
    return Ineq(tuple(Fraction(c) for c in coeffs), Fraction(rhs), True)


def ge(coeffs: Iterable[Fraction | int], rhs: Fraction | int) -> Ineq:
    return Ineq(tuple(-Fraction(c) for c in coeffs), -Fraction(rhs), False)


def gt(coeffs: Iterable[Fraction | int], rhs: Fraction | int) -> Ineq:
    return Ineq(tuple(-Fraction(c) for c in coeffs), -Fraction(rhs), True)


def eq(coeffs: Sequence[Fraction | int], rhs: Fraction | int) -> list[Ineq]:
    return [le(coeffs, rhs), ge(coeffs, rhs)]


class Infeasible(Exception):
    """Raised internally when a trivial constraint ``0 < b`` fails."""


def _normalize(c: Ineq) -> Ineq | None:
    """Scale so the first nonzero coefficient has absolute value 1.

    Returns ``None`` for a trivially true constraint and raises
    :class:`Infeasible` for a trivially false one.
    """
    lead = next((v for v in c.coeffs if v != 0), None)
    if lead is None:
        if c.rhs > 0 or (c.rhs == 0 and not c.strict):
            return None
        raise Infeasible
    s = abs(lead)
    if s == 1:
        return c
    return Ineq(tuple(v / s for v in c.coeffs), c.rhs / s, c.strict)


def _prune(cons: Iterable[Ineq]) -> list[Ineq]:
    best: dict[tuple[Fraction, ...], Ineq] = {}
    for c in cons:
        n = _normalize(c)
        if n is None:
            continue
        old = best.get(n.coeffs)
        if old is None or n.rhs < old.rhs or (n.rhs == old.rhs and n.strict and not old.strict):
            best[n.coeffs] = n
    # Opposite directions may pin down an empty slab.
    for key, c in best.items():
        neg = tuple(-v for v in key)
        other = best.get(neg)
        if other is not None:
            total = c.rhs + other.rhs
            if total < 0 or (total == 0 and (c.strict or other.strict)):
                raise Infeasible
    return list(best.values())


def _eliminate(cons: list[Ineq], k: int) -> list[Ineq]:
    pos, neg, rest = [], [], []
    for c in cons:
        a = c.coeffs[k]
        (pos if a > 0 else neg if a < 0 else rest).append(c)
    out = list(rest)
    for p in pos:
        for n in neg:
            ap, an = p.coeffs[k], -n.coeffs[k]
            coeffs = tuple(an * x + ap * y for x, y in zip(p.coeffs, n.coeffs))
            out.append(Ineq(coeffs, an * p.rhs + ap * n.rhs, p.strict or n.strict))
    return _prune(out)


@dataclass(frozen=True)
class Bounds:
    """An interval of the real line with strictness flags; ``None`` is unbounded."""

    lo: Fraction | None
    lo_strict: bool
    hi: Fraction | None
    hi_strict: bool

    def empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        return self.lo > self.hi or self.lo_strict or self.hi_strict

    def contains(self, v: Fraction) -> bool:
        if self.lo is not None and (v < self.lo or (self.lo_strict and v == self.lo)):
            return False
        if self.hi is not None and (v > self.hi or (self.hi_strict and v == self.hi)):
            return False
        return True


def _bounds_for(cons: Sequence[Ineq], k: int, x: Sequence[Fraction | None]) -> Bounds:
    """Bounds on variable ``k`` given values for the variables after it."""
    lo: Fraction | None = None
    hi: Fraction | None = None
    lo_s = hi_s = False
    for c in cons:
        a = c.coeffs[k]
        rest = sum(
            (c.coeffs[j] * x[j] for j in range(len(x)) if j != k and c.coeffs[j] != 0),  # type: ignore[operator]
            Fraction(0),
        )
        if a == 0:
            continue
        v = (c.rhs - rest) / a
        if a > 0:
            if hi is None or v < hi:
                hi, hi_s = v, c.strict
            elif v == hi:
                hi_s = hi_s or c.strict
        else:
            if lo is None or v > lo:
                lo, lo_s = v, c.strict
            elif v == lo:
                lo_s = lo_s or c.strict
    return Bounds(lo, lo_s, hi, hi_s)


def simplest_in(b: Bounds) -> Fraction:
    """A rational of smallest denominator inside a nonempty interval.

    Ties go to the value nearest the lower end, so the choice is
    deterministic and tends to produce readable witnesses such as 1/3.
    """
    if b.lo is None and b.hi is None:
        return Fraction(0)
    if b.lo is None:
        assert b.hi is not None
        v = Fraction(floor(b.hi))
        return v if b.contains(v) else v - 1
    if b.hi is None:
        v = Fraction(-floor(-b.lo))
        return v if b.contains(v) else v + 1
    if b.lo == b.hi:
        return b.lo
    den = 1
    while True:
        base = floor(b.lo * den)
        for num in (base, base + 1):
            v = Fraction(num, den)
            if b.contains(v):
                return v
        den += 1


def solve(cons: Sequence[Ineq], nvars: int) -> list[Fraction] | None:
    """Return a point satisfying every constraint, or ``None`` if none exists."""
    try:
        stages = [_prune(cons)]
        for k in range(nvars):
            stages.append(_eliminate(stages[-1], k))
    except Infeasible:
        return None
    x: list[Fraction | None] = [None] * nvars
    for k in reversed(range(nvars)):
        known = [v if v is not None else Fraction(0) for v in x]
        b = _bounds_for(stages[k], k, known)
        if b.empty():
            return None
        x[k] = simplest_in(b)
    point = [v if v is not None else Fraction(0) for v in x]
    if not all(c.holds(point) for c in cons):
        raise AssertionError("Fourier–Motzkin back-substitution failed")
    return point


def feasible(cons: Sequence[Ineq], nvars: int) -> bool:
    return solve(cons, nvars) is not None


def project(cons: Sequence[Ineq], nvars: int, form: Sequence[Fraction | int]) -> Bounds | None:
    """Range of the linear form ``form · x`` over the constraint set.

    Returns ``None`` if the set is empty.
    """
    z = nvars
    ext = [Ineq(c.coeffs + (Fraction(0),), c.rhs, c.strict) for c in cons]
    link = tuple(Fraction(f) for f in form) + (Fraction(-1),)
    ext += eq(link, 0)
    try:
        cur = _prune(ext)
        for k in range(nvars):
            cur = _eliminate(cur, k)
    except Infeasible:
        return None
    b = _bounds_for(cur, z, [Fraction(0)] * (nvars + 1))
    return None if b.empty() else b
