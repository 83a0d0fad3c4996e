"""Quadratic (Koszul) dual."""

from __future__ import annotations

from kszl.exactcore import nullspace
from kszl.presentation import QuadraticPresentation


def quadratic_dual(P, name=None):
    """T(V*)/(R^perp) with the pairing <g_i g_j, g_k* g_l*> = delta_ik delta_jl.

    Dual generators keep the names of the original ones.
    """
    perp = nullspace(P.relation_matrix())
    return QuadraticPresentation(P.generators, tuple(perp), P.field, name=name or f"{P.name}_dual")
