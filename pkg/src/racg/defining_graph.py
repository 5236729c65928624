"""
Defining graphs of right-angled Coxeter groups and the vertex-set queries
the peripheral criterion is phrased in.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx

from src.documents import format_graph_text, parse_graph_text
from src.utils.error_handler import InputError, handle_file_operations

VertexSet = FrozenSet[str]
Square = Tuple[VertexSet, VertexSet]


@dataclass(frozen=True)
class SimplicialGraph:
    """
    A simple graph on named vertices. Vertex subsets always stand for the
    full subgraphs they span.
    """
    vertices: Tuple[str, ...]
    edges: FrozenSet[FrozenSet[str]]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names in defining graph")
        known = set(self.vertices)
        for edge in self.edges:
            if len(edge) != 2:
                raise InputError(f"loop at {sorted(edge)[0]} is not allowed")
            for name in edge:
                if name not in known:
                    raise InputError(f"edge {sorted(edge)} references unknown vertex '{name}'")

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Tuple[str, str]]) -> "SimplicialGraph":
        return cls(tuple(sorted(vertices)), frozenset(frozenset(e) for e in edges))

    @classmethod
    def from_text(cls, text: str) -> "SimplicialGraph":
        vertices, edges = parse_graph_text(text)
        return cls.build(vertices, edges)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "SimplicialGraph":
        return cls.build((str(v) for v in graph.nodes), ((str(a), str(b)) for a, b in graph.edges))

    def to_text(self) -> str:
        return format_graph_text(self.vertices, sorted(tuple(sorted(e)) for e in self.edges))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(tuple(e) for e in self.edges)
        return graph

    @cached_property
    def neighbors(self) -> Dict[str, FrozenSet[str]]:
        adjacency = {v: set() for v in self.vertices}
        for edge in self.edges:
            a, b = tuple(edge)
            adjacency[a].add(b)
            adjacency[b].add(a)
        return {v: frozenset(n) for v, n in adjacency.items()}

    def adjacent(self, a: str, b: str) -> bool:
        return b in self.neighbors[a]

    def require(self, subset: Iterable[str]) -> VertexSet:
        """Freeze subset, rejecting names that are not vertices."""
        frozen = frozenset(subset)
        unknown = sorted(frozen - set(self.vertices))
        if unknown:
            raise InputError(f"unknown vertices: {', '.join(unknown)}")
        return frozen

    def link(self, subset: Iterable[str]) -> VertexSet:
        """Vertices adjacent to every vertex of subset; the whole graph for the empty set."""
        common = set(self.vertices)
        for v in subset:
            common &= self.neighbors[v]
        return frozenset(common)

    def star(self, subset: Iterable[str]) -> VertexSet:
        subset = frozenset(subset)
        return subset | self.link(subset)

    def is_complete(self, subset: Iterable[str]) -> bool:
        return all(self.adjacent(a, b) for a, b in combinations(sorted(subset), 2))

    def non_edges(self, subset: Iterable[str]) -> List[Tuple[str, str]]:
        return [(a, b) for a, b in combinations(sorted(subset), 2) if not self.adjacent(a, b)]

    def is_join(self, subset: Iterable[str]) -> bool:
        """Whether the full subgraph on subset splits as a join of two nonempty parts."""
        members = sorted(subset)
        if len(members) < 2:
            return False
        complement = nx.complement(self.to_networkx().subgraph(members))
        return not nx.is_connected(complement)

    def relabeled(self, mapping: Dict[str, str]) -> "SimplicialGraph":
        return SimplicialGraph.build(
            (mapping[v] for v in self.vertices),
            ((mapping[a], mapping[b]) for a, b in (tuple(e) for e in self.edges)),
        )


@handle_file_operations
def load_defining_graph(path: str) -> SimplicialGraph:
    """Read a defining graph from a text file."""
    with open(path, 'r', encoding='utf-8') as f:
        return SimplicialGraph.from_text(f.read())


@dataclass(frozen=True)
class SubgraphQuery:
    is_complete: bool
    link: VertexSet
    star: VertexSet


def subgraph_query(graph: SimplicialGraph, subset: Iterable[str]) -> SubgraphQuery:
    """Completeness, link and star of a vertex set."""
    members = graph.require(subset)
    return SubgraphQuery(graph.is_complete(members), graph.link(members), graph.star(members))


def induced_squares(graph: SimplicialGraph) -> List[Square]:
    """
    Induced 4-cycles, each given once as its pair of diagonals.

    A square is a pair of non-edges {a,b}, {c,d} on four distinct vertices
    with all four cross edges present.
    """
    squares = []
    for a, b in graph.non_edges(graph.vertices):
        common = graph.link((a, b))
        for c, d in graph.non_edges(common):
            first, second = (a, b), (c, d)
            if first < second:
                squares.append((frozenset(first), frozenset(second)))
    return sorted(squares, key=lambda sq: (sorted(sq[0]), sorted(sq[1])))
