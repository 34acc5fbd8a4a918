"""Exact piecewise-linear plane topology: ray parity, circuit complements,
separation witnesses and K3,3 drawing certificates."""

from .exact_geom import Point, Segment, VerticalRay, pt
from .parity import point_in_circuit, ray_decomposition
from .pl_path import PLArc, PLCircuit, PLPath

__all__ = [
    "Point",
    "Segment",
    "VerticalRay",
    "pt",
    "PLPath",
    "PLArc",
    "PLCircuit",
    "point_in_circuit",
    "ray_decomposition",
]
__version__ = "0.1.0"
