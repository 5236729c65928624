"""
Witness subsurfaces and disjoint witness pairs.

A subsurface is a connected union of complementary pieces, so it is a
connected vertex subset A of a stable graph. Merging A and every component
of its complement into single vertices yields a small marked stable graph
whose canonical key names the witness type.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from src.curves.enumeration import enumerate_stable_graphs
from src.curves.stable_graph import CanonicalKey, StableGraph, canonical_form
from src.curves.surfaces import SurfaceType, WitnessKind
from src.utils.error_handler import InputError
from src.utils.logger import get_logger

logger = get_logger()


@dataclass(frozen=True)
class ComplementComponent:
    genus: int
    legs: int
    curves: int

    def to_dict(self) -> dict:
        return {"genus": self.genus, "legs": self.legs, "curves": self.curves}


@dataclass(frozen=True)
class FilledSubsurface:
    """
    Attributes:
        genus: Genus of the glued pieces
        curve_boundary: Curves of the multicurve on the boundary of the subsurface
        s_boundary: Boundary components of S inside the subsurface
        complement: One descriptor per component of the complement
    """
    genus: int
    curve_boundary: int
    s_boundary: int
    complement: Tuple[ComplementComponent, ...]

    @property
    def boundary(self) -> int:
        return self.curve_boundary + self.s_boundary

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.boundary

    def is_pants(self) -> bool:
        return self.genus == 0 and self.boundary == 3

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "curve_boundary": self.curve_boundary,
            "s_boundary": self.s_boundary,
            "complement": [c.to_dict() for c in self.complement],
        }


def filled_subsurface(graph: StableGraph, subset: Iterable[int]) -> FilledSubsurface:
    """
    Raises:
        InputError: for an empty or disconnected vertex subset
    """
    subset = frozenset(subset)
    if not subset:
        raise InputError("subsurface vertex set is empty")
    if not subset <= frozenset(range(graph.size)):
        raise InputError(f"subsurface vertex set {sorted(subset)} references a missing vertex")
    if not graph.is_connected_subset(subset):
        raise InputError(f"subsurface vertex set {sorted(subset)} is disconnected")
    rest = [v for v in range(graph.size) if v not in subset]
    complement = tuple(
        ComplementComponent(graph.filled_genus(c), sum(graph.legs[v] for v in c), graph.crossing_edges(c))
        for c in graph.components(rest)
    )
    return FilledSubsurface(
        genus=graph.filled_genus(subset),
        curve_boundary=graph.crossing_edges(subset),
        s_boundary=sum(graph.legs[v] for v in subset),
        complement=complement,
    )


def _predicate(kind: WitnessKind, filled: FilledSubsurface) -> bool:
    if filled.complexity < 1 and filled.genus < 1:
        return False
    if kind is WitnessKind.SEPARATING:
        return all(c.genus == 0 and c.legs <= 1 for c in filled.complement)
    if kind is WitnessKind.PANTS:
        return filled.complexity >= 1
    return filled.genus >= 1


def is_witness(kind: WitnessKind, surface: SurfaceType, graph: StableGraph, subset: Iterable[int]) -> bool:
    """
    Whether the subsurface on subset meets every curve of the kind's graph.

    S itself is never a witness; neither is a disconnected subset.
    """
    if graph.genus != surface.genus or graph.punctures != surface.punctures:
        raise InputError(f"stable graph does not describe {surface}")
    subset = frozenset(subset)
    if not subset or len(subset) == graph.size or not graph.is_connected_subset(subset):
        return False
    return _predicate(kind, filled_subsurface(graph, subset))


# --- types ------------------------------------------------------------------

def merged_blocks(graph: StableGraph, marked: Iterable[FrozenSet[int]]) -> List[FrozenSet[int]]:
    """The marked blocks followed by the components of what they leave."""
    marked = [frozenset(b) for b in marked]
    covered = frozenset().union(*marked) if marked else frozenset()
    return marked + graph.components(v for v in range(graph.size) if v not in covered)


def type_key(graph: StableGraph, subset: FrozenSet[int]) -> CanonicalKey:
    """Canonical key of the subsurface on subset with its complement merged."""
    quotient = graph.quotient(merged_blocks(graph, [subset]))
    return canonical_form(quotient, [1] + [0] * (quotient.size - 1))[0]


def type_label(graph: StableGraph, subset: FrozenSet[int]) -> str:
    """Readable name such as '(1,1)^c(1,1)'."""
    filled = filled_subsurface(graph, subset)
    complement = "+".join(sorted(f"({c.genus},{c.curves + c.legs})" for c in filled.complement))
    return f"({filled.genus},{filled.boundary})^c{complement or '-'}"


@dataclass(frozen=True)
class DisjointPair:
    """Two disjoint witnesses A and B in a normalized stable graph."""
    graph: StableGraph
    first: FrozenSet[int]
    second: FrozenSet[int]
    complementary: bool

    @property
    def key(self) -> CanonicalKey:
        return pair_key(self.graph, self.first, self.second)

    def swapped(self) -> "DisjointPair":
        return DisjointPair(self.graph, self.second, self.first, self.complementary)

    def labels(self) -> Tuple[str, str]:
        return type_label(self.graph, self.first), type_label(self.graph, self.second)

    def to_dict(self) -> dict:
        first, second = self.labels()
        return {
            "graph": self.graph.to_document(),
            "first": sorted(self.first),
            "second": sorted(self.second),
            "complementary": self.complementary,
            "types": [first, second],
        }


def pair_key(graph: StableGraph, first: FrozenSet[int], second: FrozenSet[int]) -> CanonicalKey:
    """Key of the unordered pair: least over both markings of the merged graph."""
    quotient = graph.quotient(merged_blocks(graph, [first, second]))
    rest = [0] * (quotient.size - 2)
    return min(canonical_form(quotient, [1, 2] + rest)[0], canonical_form(quotient, [2, 1] + rest)[0])


def normalize_pair(graph: StableGraph, first: FrozenSet[int], second: FrozenSet[int]) -> DisjointPair:
    """Merge both witnesses and each leftover component; the witnesses become vertices 0 and 1."""
    if first & second:
        raise InputError("disjoint pair shares vertices")
    quotient = graph.quotient(merged_blocks(graph, [first, second]))
    return DisjointPair(quotient, frozenset([0]), frozenset([1]), quotient.size == 2)


@lru_cache(maxsize=128)
def _pairs(surface: SurfaceType, kind: WitnessKind, bound: int) -> Tuple[DisjointPair, ...]:
    found: Dict[CanonicalKey, DisjointPair] = {}
    for graph in enumerate_stable_graphs(surface, bound):
        witnesses = [v for v in range(graph.size) if is_witness(kind, surface, graph, [v])]
        for i, a in enumerate(witnesses):
            for b in witnesses[i + 1:]:
                first, second = frozenset([a]), frozenset([b])
                key = pair_key(graph, first, second)
                if key not in found:
                    found[key] = normalize_pair(graph, first, second)
    return tuple(found[key] for key in sorted(found))


def disjoint_witness_pairs(surface: SurfaceType, kind: WitnessKind, bound: int = 10) -> List[DisjointPair]:
    """
    Every pair of disjoint witnesses up to homeomorphism.

    Any two disjoint connected subsurfaces are complementary pieces of a
    common multicurve, so scanning single pieces of every stable graph
    reaches every pair type.
    """
    pairs = list(_pairs(surface, kind, bound))
    logger.info(f"{kind.value} on {surface}: {len(pairs)} disjoint witness pair types")
    return pairs


def unique_disjoint_pairs(surface: SurfaceType, kind: WitnessKind,
                          bound: int = 10) -> Tuple[bool, Optional[DisjointPair]]:
    """True when every disjoint witness pair is complementary; otherwise the first counterexample."""
    for pair in disjoint_witness_pairs(surface, kind, bound):
        if not pair.complementary:
            return False, pair
    return True, None


def witness_types(surface: SurfaceType, kind: WitnessKind, bound: int = 10) -> Dict[CanonicalKey, str]:
    """Every witness type occurring in some stable graph, keyed canonically, with its label."""
    types: Dict[CanonicalKey, str] = {}
    for graph in enumerate_stable_graphs(surface, bound):
        for v in range(graph.size):
            if is_witness(kind, surface, graph, [v]):
                key = type_key(graph, frozenset([v]))
                types.setdefault(key, type_label(graph, frozenset([v])))
    return dict(sorted(types.items()))
