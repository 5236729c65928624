"""Closest-point gates onto regions of a finite metric space."""

from typing import List, Sequence

from src.metric.metric_graph import DistanceMatrix, Vertex
from src.utils.error_handler import InputError


def _rows(dm: DistanceMatrix, region: Sequence[Vertex], name: str) -> List[int]:
    if not region:
        raise InputError(f"{name} is empty")
    missing = [v for v in region if v not in dm.index]
    if missing:
        raise InputError(f"{name} contains unknown vertex {missing[0]!r}")
    return [dm.index[v] for v in region]


def gate(dm: DistanceMatrix, region: Sequence[Vertex], x: Vertex, tolerance: float = 0.0) -> List[Vertex]:
    """Points of region within tolerance of the nearest distance to x, in region order."""
    rows = _rows(dm, region, "region")
    if x not in dm.index:
        raise InputError(f"unknown vertex {x!r}")
    distances = dm.values[dm.index[x], rows]
    nearest = distances.min()
    return [v for v, d in zip(region, distances) if d <= nearest + tolerance]


def gate_image_diameter(dm: DistanceMatrix, region_u: Sequence[Vertex], region_v: Sequence[Vertex],
                        tolerance: float = 0.0):
    """Diameter of the gate of region_v onto region_u."""
    _rows(dm, region_v, "second region")
    image = sorted({g for x in region_v for g in gate(dm, region_u, x, tolerance)}, key=dm.index.__getitem__)
    rows = [dm.index[v] for v in image]
    return dm.values[rows][:, rows].max()
