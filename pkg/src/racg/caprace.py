"""
The peripheral criterion for right-angled Coxeter groups.

A collection J of proper, full, non-complete subgraphs works when
(i) every join of two non-complete subgraphs lies in some member,
(ii) distinct members meet in a complete graph or not at all, and
(iii) every non-complete Λ inside a member has its link inside that member.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable, List, Set, Tuple

from src.racg.defining_graph import SimplicialGraph, VertexSet, induced_squares
from src.reports import ClassificationReport, Status
from src.utils.error_handler import InputError
from src.utils.logger import get_logger

logger = get_logger()

NECESSITY_NOTE = (
    "Necessity of the peripheral conditions rests on the converse due to Caprace; "
    "the criterion itself only proves sufficiency."
)
EXHAUSTIVE_VERTEX_LIMIT = 12


@dataclass
class CapraceReport:
    """Violated clauses, each with the vertex sets that witness it."""
    violations: List[Tuple[str, Tuple[Tuple[str, ...], ...]]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def clauses(self) -> List[str]:
        return sorted({clause for clause, _ in self.violations})

    def add(self, clause: str, *sets: Iterable[str]) -> None:
        self.violations.append((clause, tuple(tuple(sorted(s)) for s in sets)))

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "violations": [{"clause": c, "witness": [list(s) for s in w]} for c, w in self.violations],
        }


def check_caprace_conditions(graph: SimplicialGraph,
                             collection: Iterable[Iterable[str]],
                             exhaustive: bool = False) -> CapraceReport:
    """
    Verify a candidate collection J.

    Condition (i) is checked on induced squares only: a join of two
    non-complete subgraphs contains a square, and once that square lies in a
    member, condition (iii) applied to each diagonal pulls in both join
    factors. With ``exhaustive=True`` the full join enumeration runs instead.

    Clause tags: ``member-improper``, ``member-complete``, ``join-uncovered``,
    ``intersection``, ``link-escape``.

    Raises:
        InputError: if a member is not a subset of the vertices
    """
    members: List[VertexSet] = []
    for member in collection:
        frozen = graph.require(member)
        if frozen not in members:
            members.append(frozen)
    members.sort(key=sorted)
    everything = frozenset(graph.vertices)
    report = CapraceReport()

    for omega in members:
        if omega == everything:
            report.add("member-improper", omega)
        if graph.is_complete(omega):
            report.add("member-complete", omega)

    if exhaustive:
        for left, right in _non_complete_joins(graph):
            union = left | right
            if not any(union <= omega for omega in members):
                report.add("join-uncovered", left, right)
    else:
        for left, right in induced_squares(graph):
            if not any((left | right) <= omega for omega in members):
                report.add("join-uncovered", left, right)

    for first, second in combinations(members, 2):
        meet = first & second
        if meet and not graph.is_complete(meet):
            report.add("intersection", first, second)

    # Every non-complete Λ contains a non-edge {a,b} and lk(Λ) ⊆ lk({a,b}).
    for omega in members:
        for a, b in graph.non_edges(omega):
            escaped = graph.link((a, b)) - omega
            if escaped:
                report.add("link-escape", omega, (a, b), escaped)

    if not report.holds:
        logger.debug(f"Peripheral conditions fail: {', '.join(report.clauses())}")
    return report


def _non_complete_joins(graph: SimplicialGraph) -> List[Tuple[VertexSet, VertexSet]]:
    """Every unordered pair of non-complete vertex sets spanning a join."""
    if len(graph.vertices) > EXHAUSTIVE_VERTEX_LIMIT:
        raise InputError(f"exhaustive join enumeration supports at most {EXHAUSTIVE_VERTEX_LIMIT} vertices")
    candidates = [
        frozenset(subset)
        for size in range(2, len(graph.vertices) + 1)
        for subset in combinations(graph.vertices, size)
        if not graph.is_complete(subset)
    ]
    joins = []
    for i, left in enumerate(candidates):
        link = graph.link(left)
        for right in candidates[i + 1:]:
            if right <= link:
                joins.append((left, right))
    return joins


def link_closure(graph: SimplicialGraph, omega: Iterable[str]) -> VertexSet:
    """Smallest superset closed under adding lk({a,b}) for every non-edge {a,b} inside."""
    closed = frozenset(omega)
    while True:
        grown = set(closed)
        for a, b in graph.non_edges(closed):
            grown |= graph.link((a, b))
        if grown == closed:
            return closed
        closed = frozenset(grown)


def forced_collection(graph: SimplicialGraph) -> List[VertexSet]:
    """
    Close the induced squares under link-closure and merging to a fixpoint.

    Both rules are forced for any valid J, so the result sits inside the
    members of every valid collection and is independent of seed order.
    """
    pending: Set[VertexSet] = {link_closure(graph, left | right) for left, right in induced_squares(graph)}
    while True:
        merged = False
        current = sorted(pending, key=sorted)
        for first, second in combinations(current, 2):
            meet = first & second
            if meet and not graph.is_complete(meet):
                pending.discard(first)
                pending.discard(second)
                pending.add(link_closure(graph, first | second))
                merged = True
                break
        if not merged:
            return sorted(pending, key=sorted)


def find_peripheral_collection(graph: SimplicialGraph) -> ClassificationReport:
    """
    Classify W_Γ through the forced minimal candidate J.

    No squares gives a hyperbolic verdict with J empty. A forced member
    equal to the whole vertex set rules out every proper J. Otherwise J is
    re-verified against all three conditions and returned as peripherals.
    """
    squares = induced_squares(graph)
    collection = forced_collection(graph)
    everything = frozenset(graph.vertices)
    squares_doc = [[sorted(left), sorted(right)] for left, right in squares]

    if not collection:
        logger.info(f"Defining graph on {len(graph.vertices)} vertices has no induced squares")
        return ClassificationReport(
            Status.HYPERBOLIC,
            certificate={"collection": [], "induced_squares": []},
        )

    if everything in collection:
        logger.info("Forced closure reaches the whole defining graph")
        return ClassificationReport(
            Status.NOT_RELATIVELY_HYPERBOLIC,
            counterexample={
                "forced_member": sorted(everything),
                "induced_squares": squares_doc,
            },
            notes=[NECESSITY_NOTE],
        )

    check = check_caprace_conditions(graph, collection)
    if not check.holds:
        # The closure is a fixpoint of both rules, so this indicates a defect.
        raise RuntimeError(f"forced collection failed re-verification: {check.clauses()}")

    peripherals = [sorted(omega) for omega in collection]
    logger.info(f"Defining graph is relatively hyperbolic with {len(peripherals)} peripheral subgraphs")
    return ClassificationReport(
        Status.RELATIVELY_HYPERBOLIC,
        peripherals=peripherals,
        certificate={
            "collection": peripherals,
            "induced_squares": squares_doc,
            "conditions": check.to_dict(),
        },
    )


def peripheral_sets(report: ClassificationReport) -> List[FrozenSet[str]]:
    """The collection J carried by a classification report."""
    return [frozenset(p) for p in report.peripherals]
