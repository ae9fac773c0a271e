"""Deterministic comparison figures from auxbounds CSV output."""

from .render import FIXED, VLSF, CsvFormatError, Curve, FigureSpec, load_curves, render

__all__ = [
    "FIXED",
    "VLSF",
    "CsvFormatError",
    "Curve",
    "FigureSpec",
    "load_curves",
    "render",
]

__version__ = "0.1.0"
