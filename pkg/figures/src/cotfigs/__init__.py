"""cotfigs: deterministic figure rendering for cotsim experiment CSVs."""

from .render import KINDS, FigureSpec, SchemaError, render

__version__ = "0.1.0"
