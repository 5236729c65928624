"""
Stable graphs: the dual graph of a multicurve complement.

Each vertex is a complementary piece carrying its genus and its number of
boundary components of S (legs); each edge is a curve of the multicurve,
loops allowed. Legs are unlabeled, only their counts matter.
"""

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from src.documents import StableGraphDocument, parse_document
from src.utils.error_handler import InputError, handle_file_operations

Edge = Tuple[int, int]
CanonicalKey = Tuple[Tuple[Tuple[int, int, int], ...], Tuple[int, ...]]


@dataclass(frozen=True)
class StableGraph:
    genera: Tuple[int, ...]
    legs: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    @classmethod
    def build(cls, genera: Sequence[int], legs: Sequence[int], edges: Iterable[Edge]) -> "StableGraph":
        normalized = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        return cls(tuple(genera), tuple(legs), normalized)

    @classmethod
    def trivial(cls, genus: int, punctures: int) -> "StableGraph":
        return cls((genus,), (punctures,), ())

    def __post_init__(self):
        if len(self.genera) != len(self.legs):
            raise InputError("genus and leg assignments have different lengths")
        size = len(self.genera)
        for a, b in self.edges:
            if not (0 <= a < size and 0 <= b < size):
                raise InputError(f"edge ({a}, {b}) references a missing vertex")

    # --- counts ---------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.genera)

    @property
    def first_betti(self) -> int:
        return len(self.edges) - self.size + 1

    @property
    def genus(self) -> int:
        return sum(self.genera) + self.first_betti

    @property
    def punctures(self) -> int:
        return sum(self.legs)

    @cached_property
    def multiplicity(self) -> List[List[int]]:
        """Edge counts between vertices; the diagonal counts loops."""
        table = [[0] * self.size for _ in range(self.size)]
        for a, b in self.edges:
            table[a][b] += 1
            if a != b:
                table[b][a] += 1
        return table

    def valence(self, v: int) -> int:
        """Boundary components of piece v: edge endpoints plus legs."""
        ends = sum(1 for a, b in self.edges for x in (a, b) if x == v)
        return ends + self.legs[v]

    def piece_euler(self, v: int) -> int:
        """2g - 2 + b for piece v; positive for every hyperbolic piece."""
        return 2 * self.genera[v] - 2 + self.valence(v)

    @cached_property
    def multigraph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from(self.edges)
        return graph

    def is_connected(self) -> bool:
        return self.size > 0 and nx.is_connected(self.multigraph)

    def problems(self) -> List[str]:
        """Every broken invariant, empty for a valid stable graph."""
        found = []
        if not self.is_connected():
            found.append("graph is disconnected")
        if self.size == 1 and not self.edges:
            return found
        for v in range(self.size):
            if self.piece_euler(v) <= 0:
                found.append(f"piece {v} (genus {self.genera[v]}, {self.valence(v)} boundaries) is not hyperbolic")
        return found

    def validate(self, genus: Optional[int] = None, punctures: Optional[int] = None) -> None:
        """
        Raises:
            InputError: on any broken invariant or a surface mismatch
        """
        issues = self.problems()
        if genus is not None and self.genus != genus:
            issues.append(f"total genus {self.genus} differs from {genus}")
        if punctures is not None and self.punctures != punctures:
            issues.append(f"leg count {self.punctures} differs from {punctures}")
        if issues:
            raise InputError("invalid stable graph: " + "; ".join(issues))

    # --- subsets --------------------------------------------------------

    def internal_edges(self, subset: FrozenSet[int]) -> int:
        return sum(1 for a, b in self.edges if a in subset and b in subset)

    def crossing_edges(self, subset: FrozenSet[int]) -> int:
        return sum(1 for a, b in self.edges if (a in subset) != (b in subset))

    def components(self, subset: Iterable[int]) -> List[FrozenSet[int]]:
        """Connected components of the subgraph induced on subset."""
        induced = self.multigraph.subgraph(subset)
        return sorted((frozenset(c) for c in nx.connected_components(induced)), key=sorted)

    def is_connected_subset(self, subset: FrozenSet[int]) -> bool:
        return bool(subset) and len(self.components(subset)) == 1

    def filled_genus(self, subset: FrozenSet[int]) -> int:
        """Genus of the connected subsurface glued from the pieces in subset."""
        return sum(self.genera[v] for v in subset) + self.internal_edges(subset) - len(subset) + 1

    def quotient(self, blocks: Sequence[FrozenSet[int]]) -> "StableGraph":
        """
        Merge each connected block into one piece; edges inside a block turn
        into genus of the merged piece.
        """
        owner: Dict[int, int] = {}
        for index, block in enumerate(blocks):
            for v in block:
                owner[v] = index
        if len(owner) != self.size:
            raise InputError("quotient blocks must partition the vertices")
        genera = [self.filled_genus(block) for block in blocks]
        legs = [sum(self.legs[v] for v in block) for block in blocks]
        edges = [(owner[a], owner[b]) for a, b in self.edges if owner[a] != owner[b]]
        return StableGraph.build(genera, legs, edges)

    def relabeled(self, permutation: Sequence[int]) -> "StableGraph":
        """Copy where old vertex v becomes permutation[v]."""
        genera = [0] * self.size
        legs = [0] * self.size
        for old, new in enumerate(permutation):
            genera[new] = self.genera[old]
            legs[new] = self.legs[old]
        return StableGraph.build(genera, legs, ((permutation[a], permutation[b]) for a, b in self.edges))

    # --- documents ------------------------------------------------------

    def to_document(self) -> dict:
        return {
            "vertices": [{"genus": g, "legs": l} for g, l in zip(self.genera, self.legs)],
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_document(cls, data: object) -> "StableGraph":
        document = parse_document(StableGraphDocument, data)
        size = len(document.vertices)
        for index, (a, b) in enumerate(document.edges):
            if not (0 <= a < size and 0 <= b < size):
                raise InputError(f"edge ({a}, {b}) references a missing vertex", path=f"edges[{index}]")
        return cls.build([v.genus for v in document.vertices], [v.legs for v in document.vertices], document.edges)


@handle_file_operations
def load_stable_graph(path: str) -> StableGraph:
    with open(path, 'r', encoding='utf-8') as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise InputError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    return StableGraph.from_document(data)


# --- canonical labelling ----------------------------------------------------
#
# Colour refinement followed by individualization of the first non-singleton
# cell; the least encoding over all leaves of the search tree is canonical.

def _refine(colors: List[int], table: List[List[int]]) -> List[int]:
    size = len(colors)
    while True:
        signatures = [
            (colors[i], tuple(sorted((colors[j], table[i][j]) for j in range(size) if j != i and table[i][j])))
            for i in range(size)
        ]
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        refined = [ranking[sig] for sig in signatures]
        if len(ranking) == len(set(colors)):
            return refined
        colors = refined


def _encode(graph: StableGraph, marks: Sequence[int], order: Sequence[int]) -> CanonicalKey:
    table = graph.multiplicity
    vertices = tuple((marks[v], graph.genera[v], graph.legs[v]) for v in order)
    adjacency = tuple(table[order[i]][order[j]] for i in range(len(order)) for j in range(i, len(order)))
    return vertices, adjacency


def canonical_form(graph: StableGraph, marks: Optional[Sequence[int]] = None) -> Tuple[CanonicalKey, List[int]]:
    """
    Canonical key of a (vertex-marked) stable graph and an ordering that realizes it.

    Args:
        graph: The stable graph
        marks: Optional integer mark per vertex preserved by isomorphisms

    Returns:
        (key, order) where order[i] is the vertex placed at position i
    """
    marks = list(marks) if marks is not None else [0] * graph.size
    table = graph.multiplicity
    initial = [
        (marks[v], graph.genera[v], graph.legs[v], table[v][v], graph.valence(v))
        for v in range(graph.size)
    ]
    ranking = {sig: rank for rank, sig in enumerate(sorted(set(initial)))}
    colors = _refine([ranking[sig] for sig in initial], table)

    best: List[Optional[Tuple[CanonicalKey, List[int]]]] = [None]

    def search(current: List[int]) -> None:
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(current):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = sorted(range(graph.size), key=lambda v: current[v])
            key = _encode(graph, marks, order)
            if best[0] is None or key < best[0][0]:
                best[0] = (key, order)
            return
        for v in target:
            individualized = [2 * c + (1 if u == v else 0) for u, c in enumerate(current)]
            search(_refine(individualized, table))

    search(colors)
    return best[0]


def canonical_graph(graph: StableGraph) -> StableGraph:
    """The isomorphic copy whose vertex order realizes the canonical key."""
    _, order = canonical_form(graph)
    permutation = [0] * graph.size
    for position, v in enumerate(order):
        permutation[v] = position
    return graph.relabeled(permutation)


def connected_subsets(graph: StableGraph, limit: Optional[int] = None) -> List[FrozenSet[int]]:
    """
    Every connected vertex subset, grown from singletons by adding neighbours.

    Args:
        limit: Optional maximum subset size
    """
    adjacency = {v: set(graph.multigraph.neighbors(v)) - {v} for v in range(graph.size)}
    stack = [frozenset([v]) for v in range(graph.size)]
    visited = set(stack)
    while stack:
        current = stack.pop()
        if limit is not None and len(current) >= limit:
            continue
        for u in current:
            for v in adjacency[u]:
                grown = current | {v}
                if v not in current and grown not in visited:
                    visited.add(grown)
                    stack.append(grown)
    return sorted(visited, key=lambda s: (len(s), sorted(s)))
