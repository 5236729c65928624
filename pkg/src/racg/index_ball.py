"""
Index structure of W_Γ restricted to a Cayley ball.

A domain is a pair (Λ, class of g·W_{st(Λ)}) for a non-complete vertex set Λ.
Two domains are nested or orthogonal only when one ball element k
represents both classes, so relations needing a witness outside the ball
are missed.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Set, Tuple

from src.hhs.index_structure import IndexStructure
from src.racg.caprace import find_peripheral_collection, peripheral_sets
from src.racg.cayley import cayley_ball
from src.racg.defining_graph import SimplicialGraph, VertexSet
from src.racg.words import GroupElement
from src.reports import Status
from src.utils.logger import get_logger

logger = get_logger()


def domain_id(subset: VertexSet, representative: GroupElement) -> str:
    return f"{representative}<{','.join(sorted(subset))}>"


@dataclass
class RacgIndexBall:
    """
    Attributes:
        structure: The truncated index structure
        candidate: Domains whose vertex set belongs to the forced peripheral collection
        radius: Ball radius used
        exact_radius: Domains represented inside this radius see every relation
        domains: Domain id mapped to its (Λ, shortest coset representative)
    """
    structure: IndexStructure
    candidate: FrozenSet[str]
    radius: int
    exact_radius: int
    domains: Dict[str, Tuple[VertexSet, GroupElement]]


def build_index_ball(graph: SimplicialGraph, radius: int, cap: int = 200000) -> RacgIndexBall:
    """Compute the truncated index structure and the candidate isolating collection."""
    ball = cayley_ball(graph, radius, cap)
    group = ball.group
    subsets: List[VertexSet] = [
        frozenset(combo)
        for size in range(2, len(graph.vertices) + 1)
        for combo in combinations(graph.vertices, size)
        if not graph.is_complete(combo)
    ]

    representatives: Dict[VertexSet, Dict[GroupElement, GroupElement]] = {}
    def representative(subset: VertexSet, k: GroupElement) -> GroupElement:
        star = graph.star(subset)
        table = representatives.setdefault(star, {})
        if k not in table:
            table[k] = group.minimal_coset_representative(k, star)
        return table[k]

    domains: Dict[str, Tuple[VertexSet, GroupElement]] = {}
    for subset in subsets:
        for k in ball.elements:
            rep = representative(subset, k)
            domains.setdefault(domain_id(subset, rep), (subset, rep))

    nest: Set[Tuple[str, str]] = set()
    orth: Set[Tuple[str, str]] = set()
    for lower, upper in combinations(subsets, 2):
        for small, large in ((lower, upper), (upper, lower)):
            if small < large:
                for k in ball.elements:
                    nest.add((domain_id(small, representative(small, k)),
                              domain_id(large, representative(large, k))))
        if lower <= graph.link(upper):
            for k in ball.elements:
                orth.add((domain_id(lower, representative(lower, k)),
                          domain_id(upper, representative(upper, k))))

    ids = sorted(domains, key=lambda d: (sorted(domains[d][0]), domains[d][1]))
    unbounded = {d: not graph.is_join(domains[d][0]) for d in ids}
    structure = IndexStructure.build(ids, unbounded, nest, orth)

    verdict = find_peripheral_collection(graph)
    candidate: FrozenSet[str] = frozenset()
    if verdict.status is Status.RELATIVELY_HYPERBOLIC:
        members = set(peripheral_sets(verdict))
        candidate = frozenset(d for d in ids if domains[d][0] in members)

    exact_radius = max(0, radius - len(graph.vertices))
    logger.info(
        f"Index ball of radius {radius}: {len(ids)} domains, {len(structure.orthogonal_pairs)} orthogonal pairs, "
        f"exact within radius {exact_radius}"
    )
    return RacgIndexBall(structure, candidate, radius, exact_radius, domains)


def racg_index_ball(graph: SimplicialGraph, radius: int, cap: int = 200000) -> Tuple[IndexStructure, FrozenSet[str]]:
    """The truncated index structure of W_Γ and its candidate isolating collection."""
    result = build_index_ball(graph, radius, cap)
    return result.structure, result.candidate
