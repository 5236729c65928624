"""
Gromov four-point δ of a finite metric space.

For a quadruple with pairwise distance sums S1 >= S2 >= S3, δ = (S1 - S2) / 2;
the δ of the space is the maximum over all quadruples.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from src.metric.metric_graph import DistanceMatrix, MetricGraph, Vertex, shortest_paths
from src.utils.error_handler import InputError, ResourceCapError
from src.utils.logger import get_logger

logger = get_logger()

EXACT = "exact"
SAMPLED = "sampled"


@dataclass
class DeltaReport:
    """
    Attributes:
        delta: The four-point δ (a lower bound in sampled mode)
        mode: "exact" or "sampled"
        quadruple: Vertices attaining delta, or None when fewer than four points
        samples: Quadruples drawn in sampled mode
        seed: Seed of the sampled run
    """
    delta: Any
    mode: str
    quadruple: Optional[Tuple[Vertex, Vertex, Vertex, Vertex]] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    vertex_count: int = 0

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "delta": float(self.delta),
            "mode": self.mode,
            "quadruple": [str(v) for v in self.quadruple] if self.quadruple else None,
            "vertex_count": self.vertex_count,
        }
        if not isinstance(self.delta, (float, int, np.floating)):
            data["delta_exact"] = str(self.delta)
        if self.mode == SAMPLED:
            data["samples"] = self.samples
            data["seed"] = self.seed
        return data


def quadruple_delta(dm: DistanceMatrix, quadruple) -> Any:
    """δ of one quadruple."""
    x, y, z, w = (dm.index[v] for v in quadruple)
    d = dm.values
    sums = sorted([d[x, y] + d[z, w], d[x, z] + d[y, w], d[x, w] + d[y, z]], reverse=True)
    return (sums[0] - sums[1]) / 2


def _exact(dm: DistanceMatrix, tolerance: float = 0.0) -> Tuple[Any, Optional[Tuple[int, int, int, int]]]:
    """
    Scan vertex pairs by decreasing distance, pairing each with every
    longer-or-equal pair seen before it. A quadruple's δ never exceeds half
    its shorter pair, so the scan stops once d/2 cannot beat the best value.
    Gains within tolerance of the best value are not improvements.
    """
    d = dm.values
    size = len(dm)
    rows, cols = np.triu_indices(size, k=1)
    lengths = d[rows, cols]
    order = sorted(range(len(lengths)), key=lambda k: (-lengths[k], k))
    rows, cols, lengths = rows[order], cols[order], lengths[order]

    zero = d[0, 0] if size else 0
    # every quadruple attains δ = 0 when nothing beats it
    best, argmax = zero, (0, 1, 2, 3)
    for i in range(1, len(lengths)):
        if lengths[i] / 2 <= best + tolerance:
            break
        x, y = rows[i], cols[i]
        z, w = rows[:i], cols[:i]
        straight = d[x, z] + d[y, w]
        crossed = d[x, w] + d[y, z]
        values = lengths[i] + lengths[:i] - np.maximum(straight, crossed)
        j = int(np.argmax(values))
        if values[j] / 2 > best + tolerance:
            best = values[j] / 2
            argmax = (int(x), int(y), int(z[j]), int(w[j]))
    return best, argmax


def _sampled(dm: DistanceMatrix, samples: int, seed: int) -> Tuple[Any, Optional[Tuple[int, int, int, int]]]:
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(dm), size=(samples, 4))
    d = dm.values
    x, y, z, w = picks.T
    sums = np.stack([d[x, y] + d[z, w], d[x, z] + d[y, w], d[x, w] + d[y, z]], axis=1)
    sums = np.sort(sums, axis=1)
    values = (sums[:, 2] - sums[:, 1]) / 2
    j = int(np.argmax(values))
    return values[j], tuple(int(k) for k in picks[j])


def four_point_delta(source: Union[MetricGraph, DistanceMatrix], mode: str = EXACT, seed: Optional[int] = None,
                     samples: int = 20000, vertex_cap: int = 2000, tolerance: float = 0.0) -> DeltaReport:
    """
    Four-point δ of a metric graph or distance matrix.

    Args:
        source: The space
        mode: "exact" scans every quadruple; "sampled" draws samples quadruples
        seed: Required in sampled mode
        samples: Quadruples drawn in sampled mode
        vertex_cap: Largest space accepted in exact mode
        tolerance: Exact-mode gains at most this large over the current best are ignored

    Raises:
        InputError: for an unknown mode or a sampled run without a seed
        ResourceCapError: when exact mode is asked for more than vertex_cap points
    """
    if mode not in (EXACT, SAMPLED):
        raise InputError(f"unknown δ mode '{mode}'; expected exact or sampled")
    if mode == SAMPLED and seed is None:
        raise InputError("sampled δ requires an explicit seed")
    if mode == EXACT and isinstance(source, MetricGraph) and len(source) > vertex_cap:
        raise ResourceCapError(f"exact δ is capped at {vertex_cap} vertices, got {len(source)}")
    dm = source if isinstance(source, DistanceMatrix) else shortest_paths(source)
    if mode == EXACT and len(dm) > vertex_cap:
        raise ResourceCapError(f"exact δ is capped at {vertex_cap} vertices, got {len(dm)}")

    if len(dm) < 4:
        zero = dm.values[0, 0] if len(dm) else 0
        return DeltaReport(zero, mode, None, samples if mode == SAMPLED else None, seed, len(dm))

    if mode == EXACT:
        delta, indices = _exact(dm, tolerance)
    else:
        delta, indices = _sampled(dm, samples, seed)
    quadruple = tuple(dm.vertices[k] for k in indices) if indices is not None else None
    logger.debug(f"{mode} δ over {len(dm)} vertices: {float(delta)}")
    return DeltaReport(delta, mode, quadruple, samples if mode == SAMPLED else None, seed, len(dm))
