"""Exact combinatorics of curves, Dehn twists and geometric subgroups."""

from .cellsurface import (
    CellSurface,
    InvalidSurface,
    SurfaceSpec,
    euler_characteristic,
    hat_extend,
    make_surface,
)

__all__ = [
    "CellSurface",
    "InvalidSurface",
    "SurfaceSpec",
    "euler_characteristic",
    "hat_extend",
    "make_surface",
]
