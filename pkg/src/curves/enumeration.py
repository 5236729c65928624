"""
Enumeration of stable graphs of a surface up to isomorphism.

Graphs are generated level by level from the one-vertex graph: every stable
graph with k + 1 edges degenerates from one with k edges, either by pinching
a non-separating curve in a piece (a loop) or by splitting a piece in two.
"""

from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Tuple

from src.curves.stable_graph import CanonicalKey, StableGraph, canonical_form, canonical_graph
from src.curves.surfaces import SurfaceType
from src.utils.error_handler import InputError, ResourceCapError
from src.utils.logger import get_logger

logger = get_logger()


def _half_edges(graph: StableGraph, v: int) -> List[Tuple[int, int]]:
    """(edge index, end) for every edge end at v; a loop contributes both ends."""
    return [(index, end) for index, edge in enumerate(graph.edges) for end in (0, 1) if edge[end] == v]


def _split(graph: StableGraph, v: int) -> Iterator[StableGraph]:
    genus, legs = graph.genera[v], graph.legs[v]
    ends = _half_edges(graph, v)
    new = graph.size
    for mask in product((0, 1), repeat=len(ends)):
        moved = {ends[i] for i, side in enumerate(mask) if side}
        kept = len(ends) - len(moved)
        for g1, l1 in product(range(genus + 1), range(legs + 1)):
            g2, l2 = genus - g1, legs - l1
            if 2 * g1 - 2 + kept + l1 + 1 <= 0 or 2 * g2 - 2 + len(moved) + l2 + 1 <= 0:
                continue
            edges = []
            for index, edge in enumerate(graph.edges):
                ends_now = [new if (index, end) in moved else edge[end] for end in (0, 1)]
                edges.append((ends_now[0], ends_now[1]))
            edges.append((v, new))
            genera = list(graph.genera) + [g2]
            genera[v] = g1
            leg_counts = list(graph.legs) + [l2]
            leg_counts[v] = l1
            yield StableGraph.build(genera, leg_counts, edges)


def degenerations(graph: StableGraph) -> Iterator[StableGraph]:
    """Stable graphs with one more edge that contract onto graph."""
    for v in range(graph.size):
        if graph.genera[v] >= 1:
            genera = list(graph.genera)
            genera[v] -= 1
            candidate = StableGraph.build(genera, graph.legs, list(graph.edges) + [(v, v)])
            if not candidate.problems():
                yield candidate
        for candidate in _split(graph, v):
            if not candidate.problems():
                yield candidate


def check_surface(surface: SurfaceType, bound: int) -> None:
    """
    Raises:
        InputError: for a surface with no pants decomposition other than the torus
        ResourceCapError: when 2g + n exceeds bound
    """
    if surface.complexity < 1 and (surface.genus, surface.punctures) != (1, 0):
        raise InputError(f"surface {surface} has complexity {surface.complexity}; at least 1 is required")
    if 2 * surface.genus + surface.punctures > bound:
        raise ResourceCapError(
            f"surface {surface} has 2g + n = {2 * surface.genus + surface.punctures}, above the bound {bound}")


@lru_cache(maxsize=64)
def _enumerate(genus: int, punctures: int) -> Tuple[StableGraph, ...]:
    root = StableGraph.trivial(genus, punctures)
    found: List[StableGraph] = [root]
    level: Dict[CanonicalKey, StableGraph] = {canonical_form(root)[0]: root}
    edges = 0
    while level:
        following: Dict[CanonicalKey, StableGraph] = {}
        for graph in level.values():
            for candidate in degenerations(graph):
                key, _ = canonical_form(candidate)
                if key not in following:
                    following[key] = canonical_graph(candidate)
        edges += 1
        if following:
            logger.debug(f"S_({genus},{punctures}): {len(following)} stable graphs with {edges} edges")
        found.extend(following[key] for key in sorted(following))
        level = following
    return tuple(found)


def enumerate_stable_graphs(surface: SurfaceType, bound: int = 10) -> List[StableGraph]:
    """
    Every stable graph of the surface up to isomorphism, trivial graph first,
    ordered by edge count then canonical key.
    """
    check_surface(surface, bound)
    graphs = list(_enumerate(surface.genus, surface.punctures))
    logger.info(f"Enumerated {len(graphs)} stable graphs of {surface}")
    return graphs
