"""Publication-style figures from chiralwalk CSV outputs."""

from .figures import FigureSpec, render, render_band, render_edge_lines, render_heatmap
from .io import (
    BandTable,
    EdgeBlock,
    SchemaError,
    SweepTable,
    read_band,
    read_edge_blocks,
    read_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BandTable",
    "EdgeBlock",
    "FigureSpec",
    "SchemaError",
    "SweepTable",
    "read_band",
    "read_edge_blocks",
    "read_sweep",
    "render",
    "render_band",
    "render_edge_lines",
    "render_heatmap",
]
