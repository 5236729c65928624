"""
Classification of graphs of multicurves from their witness pairs.

No disjoint witnesses means hyperbolic; when every disjoint pair is
complementary the graph is relatively hyperbolic with one peripheral per
complementary pair; otherwise chains of disjoint witness types linking the
complementary ones are searched as evidence against relative hyperbolicity.
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from src.curves.stable_graph import CanonicalKey, StableGraph, connected_subsets
from src.curves.surfaces import SurfaceType, WitnessKind, check_kind_range
from src.curves.witnesses import (
    DisjointPair, disjoint_witness_pairs, is_witness, type_key, type_label, unique_disjoint_pairs, witness_types,
)
from src.hhs.index_structure import IndexStructure
from src.hhs.isolation import IsolationCertificate, check_isolated_orthogonality
from src.reports import ClassificationReport, Status
from src.utils.toolkit_config import ToolkitConfig
from src.utils.logger import get_logger

logger = get_logger()

MAXIMAL_DOMAIN = "S"
CHAIN_NOTE = ("chain evidence is heuristic: chains link witness types, not isotopy classes of "
              "subsurfaces")
ISOLATION_REASON = "a complementary pair does not isolate orthogonality in its stable graph"


@dataclass
class Chain:
    start: str
    end: str
    length: int
    path: List[str]

    def to_dict(self) -> dict:
        return {"from": self.start, "to": self.end, "length": self.length, "path": list(self.path)}


@dataclass
class ChainEvidence:
    """
    Attributes:
        success: Every pair of complementary types is joined within the bound
        max_length: Longest shortest chain found (number of subsurfaces)
        chains: One shortest chain per pair of complementary types
        reason: Why the search failed, or why it was trivial
        trivial: No disjoint pair is non-complementary
    """
    success: bool
    max_length: int = 0
    chains: List[Chain] = field(default_factory=list)
    reason: Optional[str] = None
    trivial: bool = False
    heuristic: bool = True

    def to_dict(self) -> dict:
        data = {
            "success": self.success,
            "max_length": self.max_length,
            "chains": [c.to_dict() for c in self.chains],
            "trivial": self.trivial,
            "heuristic": self.heuristic,
        }
        if self.reason is not None:
            data["reason"] = self.reason
        return data


def _type_graph(pairs: List[DisjointPair]) -> Tuple[nx.Graph, Dict[CanonicalKey, str], set]:
    graph = nx.Graph()
    labels: Dict[CanonicalKey, str] = {}
    complementary = set()
    for pair in pairs:
        ends = []
        for side in (pair.first, pair.second):
            key = type_key(pair.graph, side)
            labels.setdefault(key, type_label(pair.graph, side))
            ends.append(key)
        graph.add_edge(ends[0], ends[1])
        if pair.complementary:
            complementary.update(ends)
    return graph, labels, complementary


def chain_witnesses(surface: SurfaceType, kind: WitnessKind, length_bound: int = 6,
                    budget: int = 5000, bound: int = 10) -> ChainEvidence:
    """
    Join every two complementary witness types by a chain of pairwise
    consecutively disjoint witness types.

    A chain W_1, ..., W_k counts its subsurfaces, so adjacent types give
    k = 2 and a type joined to itself needs a disjoint copy (k = 2) or a
    detour through a neighbour (k = 3).
    """
    pairs = disjoint_witness_pairs(surface, kind, bound)
    graph, labels, complementary = _type_graph(pairs)
    trivial = all(p.complementary for p in pairs)
    if graph.number_of_nodes() > budget:
        return ChainEvidence(False, reason=f"search budget exceeded: {graph.number_of_nodes()} witness types "
                                           f"above the budget of {budget}", trivial=trivial)
    if not complementary:
        return ChainEvidence(True, reason="no complementary witnesses", trivial=trivial)

    chains: List[Chain] = []
    ordered = sorted(complementary)
    for start, end in combinations_with_replacement(ordered, 2):
        if start == end:
            if graph.has_edge(start, start):
                path = [start, start]
            else:
                neighbour = min(n for n in graph.neighbors(start) if n != start)
                path = [start, neighbour, start]
        else:
            try:
                path = nx.shortest_path(graph, start, end)
            except nx.NetworkXNoPath:
                return ChainEvidence(False, chains=chains, trivial=trivial,
                                     reason=f"no chain joins {labels[start]} and {labels[end]}")
        chain = Chain(labels[start], labels[end], len(path), [labels[k] for k in path])
        if chain.length > length_bound:
            return ChainEvidence(False, chains=chains + [chain], trivial=trivial,
                                 reason=f"chain from {chain.start} to {chain.end} needs {chain.length} "
                                        f"subsurfaces, above the bound {length_bound}")
        chains.append(chain)
    max_length = max(c.length for c in chains)
    logger.info(f"{kind.value} on {surface}: chains found for {len(ordered)} complementary types, "
                f"longest {max_length}")
    return ChainEvidence(True, max_length, chains, trivial=trivial)


# --- index structure of a stable graph --------------------------------------

def _component_id(component: FrozenSet[int]) -> str:
    return "+".join(f"v{v}" for v in sorted(component))


def family_id(family: Tuple[FrozenSet[int], ...]) -> str:
    return "|".join(_component_id(c) for c in sorted(family, key=sorted))


def witness_families(graph: StableGraph, kind: WitnessKind) -> List[Tuple[FrozenSet[int], ...]]:
    """Non-empty families of pairwise disjoint connected witness vertex sets."""
    surface = SurfaceType(graph.genus, graph.punctures)
    witnesses = [s for s in connected_subsets(graph) if is_witness(kind, surface, graph, s)]
    families: List[Tuple[FrozenSet[int], ...]] = []

    def extend(start: int, chosen: List[FrozenSet[int]], used: FrozenSet[int]) -> None:
        for i in range(start, len(witnesses)):
            if witnesses[i] & used:
                continue
            grown = chosen + [witnesses[i]]
            families.append(tuple(grown))
            extend(i + 1, grown, used | witnesses[i])

    extend(0, [], frozenset())
    return families


def stable_graph_index_structure(graph: StableGraph, kind: WitnessKind) -> IndexStructure:
    """
    Index structure of the subsurfaces carried by graph: families of disjoint
    witnesses nested by inclusion and orthogonal when disjoint, under S.
    """
    graph.validate()
    families = witness_families(graph, kind)
    ids = [family_id(f) for f in families]
    supports = [frozenset().union(*f) for f in families]

    nest = [(i, MAXIMAL_DOMAIN) for i in ids]
    orth = []
    for a in range(len(families)):
        for b in range(len(families)):
            if a == b:
                continue
            if all(any(c <= d for d in families[b]) for c in families[a]):
                nest.append((ids[a], ids[b]))
            if a < b and not supports[a] & supports[b]:
                orth.append((ids[a], ids[b]))
    domains = [MAXIMAL_DOMAIN] + ids
    return IndexStructure.build(domains, {d: True for d in domains}, nest, orth)


def _isolation_for_pair(pair: DisjointPair, kind: WitnessKind) -> Optional[IsolationCertificate]:
    structure = stable_graph_index_structure(pair.graph, kind)
    result = check_isolated_orthogonality(structure, [family_id((pair.first, pair.second))])
    return result if isinstance(result, IsolationCertificate) else None


def classify_graph_of_multicurves(kind: WitnessKind, surface: SurfaceType,
                                  config: Optional[ToolkitConfig] = None) -> ClassificationReport:
    """
    Raises:
        InputError: for a surface outside the kind's range
        ResourceCapError: when the surface exceeds the enumeration bound
    """
    config = config or ToolkitConfig()
    check_kind_range(kind, surface)
    bound = config.enumeration_bound
    pairs = disjoint_witness_pairs(surface, kind, bound)
    type_count = len(witness_types(surface, kind, bound))

    if not pairs:
        return ClassificationReport(
            Status.HYPERBOLIC,
            certificate={"witness_types": type_count, "disjoint_pairs": 0},
        )

    holds, counterexample = unique_disjoint_pairs(surface, kind, bound)
    if holds:
        peripherals = sorted({tuple(sorted(p.labels())) for p in pairs})
        isolated = all(_isolation_for_pair(p, kind) is not None for p in pairs)
        certificate = {
            "unique_disjoint_pairs": True,
            "witness_types": type_count,
            "complementary_pairs": [p.to_dict() for p in pairs],
            "isolation_checked": isolated,
        }
        if not isolated:
            logger.warning(f"{kind.value} graph of {surface}: a complementary pair does not isolate orthogonality")
            return ClassificationReport(
                Status.INCONCLUSIVE,
                certificate={**certificate, "reason": ISOLATION_REASON},
            )
        return ClassificationReport(
            Status.RELATIVELY_HYPERBOLIC,
            peripherals=[[f"C{a}", f"C{b}"] for a, b in peripherals],
            certificate=certificate,
        )

    evidence = chain_witnesses(surface, kind, config.chain_length_bound, config.chain_type_budget, bound)
    if evidence.success:
        return ClassificationReport(
            Status.NOT_RELATIVELY_HYPERBOLIC,
            certificate=evidence.to_dict(),
            counterexample=counterexample.to_dict(),
            notes=[CHAIN_NOTE],
        )
    return ClassificationReport(
        Status.INCONCLUSIVE,
        certificate=evidence.to_dict(),
        counterexample={**counterexample.to_dict(), "reason": evidence.reason},
        notes=[CHAIN_NOTE],
    )
