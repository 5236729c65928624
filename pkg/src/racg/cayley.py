"""Balls in the Cayley graph of W_Γ and their star-coset partitions."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List

from src.metric.metric_graph import MetricGraph
from src.racg.defining_graph import SimplicialGraph
from src.racg.words import GroupElement, RightAngledCoxeterGroup
from src.utils.error_handler import InputError, ResourceCapError
from src.utils.logger import get_logger

logger = get_logger()


@dataclass
class CayleyBall:
    """Elements of length at most radius with unit edges from g to g·v."""
    group: RightAngledCoxeterGroup
    radius: int
    elements: List[GroupElement]
    graph: MetricGraph

    def __len__(self) -> int:
        return len(self.elements)

    def sphere_sizes(self) -> List[int]:
        sizes = [0] * (self.radius + 1)
        for g in self.elements:
            sizes[len(g)] += 1
        return sizes


def cayley_ball(graph: SimplicialGraph, radius: int, cap: int = 200000) -> CayleyBall:
    """
    Breadth-first ball around the identity.

    Raises:
        InputError: for a negative radius
        ResourceCapError: as soon as the ball would exceed cap elements
    """
    if radius < 0:
        raise InputError(f"radius must be non-negative, got {radius}")
    group = RightAngledCoxeterGroup(graph)
    identity = group.identity()
    elements = [identity]
    seen = {identity}
    metric = MetricGraph([identity])
    frontier = [identity]
    for length in range(1, radius + 1):
        next_frontier = []
        for g in frontier:
            for letter in group.generators:
                h = group.element(g.word + (letter,))
                if len(h) != length:
                    continue
                metric.add_edge(g, h, 1)
                if h in seen:
                    continue
                seen.add(h)
                elements.append(h)
                next_frontier.append(h)
                if len(elements) > cap:
                    raise ResourceCapError(
                        f"Cayley ball of radius {radius} exceeds the cap of {cap} elements")
        frontier = next_frontier
        logger.debug(f"Sphere of radius {length} has {len(frontier)} elements")
        if not frontier:
            break
    logger.info(f"Cayley ball of radius {radius} has {len(elements)} elements")
    return CayleyBall(group, radius, elements, metric)


def coset_partition(ball: CayleyBall, subset: Iterable[str]) -> Dict[GroupElement, FrozenSet[GroupElement]]:
    """
    Partition the ball into cosets of the star subgroup W_{st(Λ)}.

    Classes are keyed by their shortest coset representative.
    """
    graph = ball.group.graph
    star = graph.star(graph.require(subset))
    classes: Dict[GroupElement, set] = {}
    for g in ball.elements:
        key = ball.group.minimal_coset_representative(g, star)
        classes.setdefault(key, set()).add(g)
    return {key: frozenset(members) for key, members in sorted(classes.items())}
