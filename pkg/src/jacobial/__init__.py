"""Combinatorics of fine compactified Jacobians of nodal curves."""

from __future__ import annotations

__version__ = "0.1.0"
