"""Deterministic figure rendering for punctnet pipeline outputs."""

from .readers import SchemaError
from .render import FigureSpec, load_spec, render, render_batch

__version__ = "0.1.0"

__all__ = ["FigureSpec", "SchemaError", "load_spec", "render", "render_batch"]
