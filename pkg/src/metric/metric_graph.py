"""
Finite weighted graphs and their distance matrices.

Weights are floats by default; in exact mode they are Fractions and every
distance stays rational. Parallel edges collapse to the lightest one.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.documents import MetricGraphDocument, parse_document
from src.utils.error_handler import InputError, handle_file_operations
from src.utils.logger import get_logger

logger = get_logger()

Vertex = Hashable


class MetricGraph:
    """Undirected graph with positive edge lengths."""

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Tuple[Vertex, Vertex, Real]] = (),
                 exact: bool = False):
        self.exact = exact
        self.graph = nx.Graph()
        self.graph.add_nodes_from(vertices)
        for u, v, w in edges:
            self.add_edge(u, v, w)

    def _coerce(self, weight: Real) -> Real:
        if self.exact:
            return weight if isinstance(weight, Fraction) else Fraction(str(weight))
        return float(weight)

    def add_vertex(self, v: Vertex) -> None:
        self.graph.add_node(v)

    def add_edge(self, u: Vertex, v: Vertex, weight: Real) -> None:
        """Add an edge, keeping the lighter weight when one already exists."""
        if u == v:
            return
        if not weight > 0:
            raise InputError(f"edge {u}-{v} has non-positive weight {weight}")
        weight = self._coerce(weight)
        if self.graph.has_edge(u, v) and self.graph[u][v]["weight"] <= weight:
            return
        self.graph.add_edge(u, v, weight=weight)

    @property
    def vertices(self) -> List[Vertex]:
        return list(self.graph.nodes)

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    def __contains__(self, v: Vertex) -> bool:
        return v in self.graph

    def edges(self) -> List[Tuple[Vertex, Vertex, Real]]:
        return [(u, v, data["weight"]) for u, v, data in self.graph.edges(data=True)]

    def copy(self) -> "MetricGraph":
        clone = MetricGraph(exact=self.exact)
        clone.graph = self.graph.copy()
        return clone

    def scaled(self, factor: Real) -> "MetricGraph":
        """Copy with every edge length multiplied by factor."""
        return MetricGraph(self.vertices, ((u, v, w * factor) for u, v, w in self.edges()), exact=self.exact)

    def to_document(self) -> Dict[str, Any]:
        return {
            "vertices": [str(v) for v in self.vertices],
            "edges": [[str(u), str(v), float(w)] for u, v, w in self.edges()],
        }

    @classmethod
    def from_document(cls, data: object, exact: bool = False) -> "MetricGraph":
        document = parse_document(MetricGraphDocument, data)
        known = set(document.vertices)
        for index, (u, v, w) in enumerate(document.edges):
            for name in (u, v):
                if name not in known:
                    raise InputError(f"edge references unknown vertex '{name}'", path=f"edges[{index}]")
            if w <= 0:
                raise InputError(f"edge weight must be positive, got {w}", path=f"edges[{index}]")
        return cls(document.vertices, document.edges, exact=exact)

    @classmethod
    def from_networkx(cls, graph: nx.Graph, weight: str = "weight", exact: bool = False) -> "MetricGraph":
        return cls(graph.nodes, ((u, v, data.get(weight, 1)) for u, v, data in graph.edges(data=True)), exact=exact)


@handle_file_operations
def load_metric_graph(path: str, exact: bool = False) -> MetricGraph:
    with open(path, 'r', encoding='utf-8') as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    return MetricGraph.from_document(data, exact=exact)


@dataclass
class DistanceMatrix:
    """Shortest-path distances indexed by vertex position."""
    vertices: List[Vertex]
    values: np.ndarray

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def distance(self, u: Vertex, v: Vertex) -> Real:
        return self.values[self.index[u], self.index[v]]

    def submatrix(self, subset: Sequence[Vertex]) -> "DistanceMatrix":
        rows = [self.index[v] for v in subset]
        return DistanceMatrix(list(subset), self.values[np.ix_(rows, rows)])

    def diameter(self) -> Real:
        return self.values.max() if len(self.vertices) else 0

    @property
    def exact(self) -> bool:
        return self.values.dtype == object


def shortest_paths(g: MetricGraph, vertices: Optional[Sequence[Vertex]] = None) -> DistanceMatrix:
    """
    All-pairs shortest paths by Dijkstra from every source.

    Args:
        g: A connected metric graph
        vertices: Optional ordering of the rows; defaults to insertion order

    Raises:
        InputError: if g is disconnected, naming one separated pair
    """
    order = list(vertices) if vertices is not None else g.vertices
    if order and not nx.is_connected(g.graph):
        components = sorted(nx.connected_components(g.graph), key=lambda c: min(order.index(v) for v in c))
        u = next(v for v in order if v in components[0])
        v = next(v for v in order if v in components[1])
        raise InputError(f"metric graph is disconnected: no path between {u!r} and {v!r}")

    index = {v: i for i, v in enumerate(order)}
    size = len(order)
    values = np.zeros((size, size), dtype=object if g.exact else float)
    if g.exact:
        values[:, :] = Fraction(0)
    for source, lengths in nx.all_pairs_dijkstra_path_length(g.graph, weight="weight"):
        row = index[source]
        for target, length in lengths.items():
            values[row, index[target]] = length
    logger.debug(f"Computed shortest paths for {size} vertices")
    return DistanceMatrix(order, values)
