"""
Nets, combinatorial horoballs, and the cusped and factored spaces built from them.

Level-n copies of net points are HoroballVertex objects; level 0 is the base
vertex itself. Vertical edges have length 1 and a level-n horizontal edge
has length e^{-n} d_X(x, y).
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from src.metric.metric_graph import DistanceMatrix, MetricGraph, Vertex, shortest_paths
from src.utils.error_handler import InputError
from src.utils.logger import get_logger

logger = get_logger()

# A horizontal edge longer than this is never shorter than climbing one
# level, crossing, and descending: l <= 2 + l/e.
PRUNE_THRESHOLD = 2 * math.e / (math.e - 1)
DEPTH_LIMIT = 40


@dataclass(frozen=True, order=True)
class HoroballVertex:
    tag: Hashable
    base: Vertex
    level: int

    def __str__(self) -> str:
        return f"{self.base}@{self.level}" if self.tag == 0 else f"{self.base}@{self.tag}.{self.level}"


def epsilon_net(g: MetricGraph, epsilon: float,
                distances: Optional[DistanceMatrix] = None) -> Tuple[List[Vertex], MetricGraph]:
    """
    Greedy maximal ε-separated set in vertex order, with its approximation
    graph: net points closer than 2ε are joined by an edge of their distance.

    Raises:
        InputError: for a non-positive epsilon
    """
    if epsilon <= 0:
        raise InputError(f"net separation must be positive, got {epsilon}")
    dm = distances if distances is not None else shortest_paths(g)
    net: List[Vertex] = []
    for v in dm.vertices:
        if all(dm.distance(v, u) >= epsilon for u in net):
            net.append(v)
    approximation = MetricGraph(net, exact=g.exact)
    for i, u in enumerate(net):
        for v in net[i + 1:]:
            d = dm.distance(u, v)
            if d < 2 * epsilon:
                approximation.add_edge(u, v, d)
    logger.debug(f"ε-net with ε={epsilon}: {len(net)} of {len(dm)} vertices")
    return net, approximation


def default_depth(distances: DistanceMatrix, vertices: Optional[Sequence[Vertex]] = None) -> int:
    """⌈ln diam⌉ + 2, floored at 1; geodesics between base points stay below it."""
    dm = distances.submatrix(vertices) if vertices is not None else distances
    diameter = float(dm.diameter())
    if diameter <= 0:
        return 1
    return max(1, math.ceil(math.log(diameter)) + 2)


def _check_depth(depth: int, limit: int) -> None:
    if depth < 1:
        raise InputError(f"horoball depth must be at least 1, got {depth}")
    if depth >= limit:
        raise InputError(f"horoball depth {depth} is at or above the limit {limit}")


def _lift(tag: Hashable, x: Vertex, level: int) -> Vertex:
    return x if level == 0 else HoroballVertex(tag, x, level)


def _attach_horoball(target: MetricGraph, net: Sequence[Vertex], dm: DistanceMatrix,
                     depth: int, prune: bool, tag: Hashable) -> int:
    """Add the horoball over net to target; returns the number of horizontal edges kept."""
    kept = 0
    for x in net:
        for level in range(depth):
            target.add_edge(_lift(tag, x, level), _lift(tag, x, level + 1), 1)
    for level in range(depth + 1):
        scale = math.exp(-level)
        for i, x in enumerate(net):
            for y in net[i + 1:]:
                length = scale * float(dm.distance(x, y))
                if prune and level < depth and length > PRUNE_THRESHOLD:
                    continue
                target.add_edge(_lift(tag, x, level), _lift(tag, y, level), length)
                kept += 1
    return kept


class HoroballGraph(MetricGraph):
    """
    A base graph with one combinatorial horoball attached over a net.

    Attributes:
        base_vertices: Vertices of the base graph
        net: Net points carrying the horoball
        depth: Number of levels above the base
        base_distances: Base distances between net points
    """

    def __init__(self, base: MetricGraph, net: Sequence[Vertex], depth: int, base_distances: DistanceMatrix,
                 tag: Hashable = 0):
        super().__init__(exact=base.exact)
        self.graph = base.graph.copy()
        self.base_vertices = base.vertices
        self.net = list(net)
        self.depth = depth
        self.base_distances = base_distances
        self.tag = tag

    def lift(self, x: Vertex, level: int) -> Vertex:
        return _lift(self.tag, x, level)


def build_horoball(base: MetricGraph, net: Sequence[Vertex], depth: int, prune: bool = False,
                   distances: Optional[DistanceMatrix] = None, depth_limit: int = DEPTH_LIMIT) -> HoroballGraph:
    """
    Combinatorial horoball over net, glued to base along level 0.

    Raises:
        InputError: for a depth outside [1, depth_limit) or a net point missing from base
    """
    _check_depth(depth, depth_limit)
    missing = [v for v in net if v not in base]
    if missing:
        raise InputError(f"net point {missing[0]!r} is not a base vertex")
    dm = distances if distances is not None else shortest_paths(base)
    horoball = HoroballGraph(base, net, depth, dm.submatrix(list(net)))
    kept = _attach_horoball(horoball, list(net), dm, depth, prune, horoball.tag)
    logger.debug(f"Horoball of depth {depth} over {len(net)} net points: {kept} horizontal edges")
    return horoball


def _base_part(g: MetricGraph) -> MetricGraph:
    """The graph without any previously attached horoball levels."""
    part = MetricGraph(exact=g.exact)
    part.graph = g.graph.subgraph(v for v in g.graph if not isinstance(v, HoroballVertex)).copy()
    return part


def _check_regions(g: MetricGraph, regions: Sequence[Sequence[Vertex]]) -> List[List[Vertex]]:
    checked: List[List[Vertex]] = []
    seen = set()
    for index, region in enumerate(regions):
        region = list(region)
        if not region:
            raise InputError(f"region {index} is empty")
        missing = [v for v in region if v not in g]
        if missing:
            raise InputError(f"region {index} contains unknown vertex {missing[0]!r}")
        key = frozenset(region)
        if key in seen:
            raise InputError(f"region {index} repeats an earlier region")
        seen.add(key)
        checked.append(region)
    return checked


def build_cusped(base: MetricGraph, regions: Sequence[Sequence[Vertex]], depth: Optional[int] = None,
                 epsilon: float = 1.0, prune: bool = True, depth_limit: int = DEPTH_LIMIT) -> MetricGraph:
    """
    Attach a horoball over an ε-net of every region.

    Horoball lengths use the metric of the base part, so re-attaching the same
    regions changes nothing.
    """
    regions = _check_regions(base, regions)
    cusped = base.copy()
    if not regions:
        return cusped
    plain = _base_part(base)
    dm = shortest_paths(plain)
    depth = depth if depth is not None else default_depth(dm)
    _check_depth(depth, depth_limit)
    for tag, region in enumerate(regions):
        local = dm.submatrix(region)
        net, _ = epsilon_net(plain, epsilon, local)
        _attach_horoball(cusped, net, dm, depth, prune, tag)
    logger.info(f"Cusped space: {len(regions)} horoballs of depth {depth}, {len(cusped)} vertices")
    return cusped


def build_factored(base: MetricGraph, regions: Sequence[Sequence[Vertex]]) -> MetricGraph:
    """Cone off every region by joining its points pairwise with unit edges."""
    regions = _check_regions(base, regions)
    factored = base.copy()
    for region in regions:
        for i, u in enumerate(region):
            for v in region[i + 1:]:
                factored.add_edge(u, v, 1)
    return factored


@dataclass
class AuditRow:
    first: Vertex
    second: Vertex
    base_distance: float
    horoball_distance: float
    constant: float

    def to_dict(self) -> dict:
        return {
            "first": str(self.first),
            "second": str(self.second),
            "base_distance": self.base_distance,
            "horoball_distance": self.horoball_distance,
            "constant": self.constant,
        }


@dataclass
class AuditReport:
    """
    Empirical fit of log d_X against the horoball distance d_H.

    Attributes:
        constant: Least L with log d_X <= L d_H + L and d_H <= L log d_X + L on every pair
        rows: One row per audited pair
        increments: Changes in d_H between consecutive pairs sorted by d_X
        cap: Configured cap on L
    """
    constant: float
    rows: List[AuditRow] = field(default_factory=list)
    increments: List[float] = field(default_factory=list)
    cap: float = 3.0

    @property
    def within_cap(self) -> bool:
        return self.constant <= self.cap

    def to_dict(self) -> dict:
        return {
            "constant": self.constant,
            "cap": self.cap,
            "within_cap": self.within_cap,
            "increments": list(self.increments),
            "rows": [r.to_dict() for r in self.rows],
        }


def fit_constant(base_distance: float, horoball_distance: float) -> float:
    log_distance = max(0.0, math.log(base_distance))
    return max(1.0, log_distance / (horoball_distance + 1), horoball_distance / (log_distance + 1))


def log_distance_audit(horoball: HoroballGraph, pairs: Optional[Sequence[Tuple[Vertex, Vertex]]] = None,
                       cap: float = 3.0) -> AuditReport:
    """
    Compare horoball distances with the log of base distances.

    Args:
        horoball: A built horoball
        pairs: Net point pairs; all pairs of net points when omitted
        cap: Reported alongside the fitted constant

    Raises:
        InputError: when a pair has a point outside the net
    """
    net = set(horoball.net)
    if pairs is None:
        pairs = [(x, y) for i, x in enumerate(horoball.net) for y in horoball.net[i + 1:]]
    for x, y in pairs:
        if x == y:
            raise InputError(f"audit pair repeats the point {x!r}")
        for v in (x, y):
            if v not in net:
                raise InputError(f"audit pair point {v!r} is not in the horoball net")

    sources: Dict[Vertex, Dict[Vertex, float]] = {}
    rows: List[AuditRow] = []
    for x, y in pairs:
        if x not in sources:
            sources[x] = nx.single_source_dijkstra_path_length(horoball.graph, x, weight="weight")
        d_x = float(horoball.base_distances.distance(x, y))
        d_h = float(sources[x][y])
        rows.append(AuditRow(x, y, d_x, d_h, fit_constant(d_x, d_h)))
    rows.sort(key=lambda r: (r.base_distance, str(r.first), str(r.second)))
    increments = [b.horoball_distance - a.horoball_distance for a, b in zip(rows, rows[1:])]
    constant = max((r.constant for r in rows), default=1.0)
    logger.info(f"Horoball audit over {len(rows)} pairs: L = {constant:.3f} (cap {cap})")
    return AuditReport(constant, rows, increments, cap)
