"""Render scatter and threshold-curve figures from qsdbounds CSV output.

This package never recomputes any physics quantity: every number it draws
comes from the input CSV, which it validates against the exact column schema
the generating tool writes.
"""

__version__ = "0.1.0"

from .rendering import FIG1_COLUMNS, FIG2_COLUMNS, PlotSpec, SchemaError, render  # noqa: F401
