"""
Isolated orthogonality: checking a proposed collection I, searching for one,
and collapsing a certified structure to its rank-one relative skeleton.
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

from src.hhs.index_structure import IndexStructure, rank
from src.utils.error_handler import InputError, SearchBoundExceeded, log_and_raise
from src.utils.logger import get_logger

logger = get_logger()

RELATIVE_ROOT = "R"


@dataclass(frozen=True)
class IsolationCertificate:
    """
    Evidence that I isolates orthogonality.

    Attributes:
        isolating_set: The collection I
        pair_witness: Each orthogonal pair (sorted) mapped to its I-element
        membership: Each domain below some I-element mapped to that element
    """
    isolating_set: FrozenSet[str]
    pair_witness: Dict[Tuple[str, str], str] = field(hash=False)
    membership: Dict[str, str] = field(hash=False)

    def to_dict(self) -> dict:
        return {
            "isolating_set": sorted(self.isolating_set),
            "pair_witness": [
                {"pair": list(pair), "container": container}
                for pair, container in sorted(self.pair_witness.items())
            ],
            "membership": dict(sorted(self.membership.items())),
        }


@dataclass(frozen=True)
class IsolationViolation:
    """The first clause of the definition that fails, with its witnesses."""
    clause: str
    witness: Tuple[str, ...]

    def to_dict(self) -> dict:
        return {"clause": self.clause, "domains": list(self.witness)}


IsolationResult = Union[IsolationCertificate, IsolationViolation]


def check_isolated_orthogonality(s: IndexStructure, isolating_set: Iterable[str]) -> IsolationResult:
    """
    Decide whether I isolates orthogonality in s.

    Clauses are checked in order: I omits the maximal domain
    (``maximal-in-collection``), every orthogonal pair nests into some
    member of I (``uncovered-pair``), and no domain nests into two members
    (``uniqueness``).

    Raises:
        InputError: if I names unknown domains
    """
    chosen = frozenset(isolating_set)
    unknown = sorted(chosen - set(s.domains))
    if unknown:
        raise InputError(f"isolating set references unknown domains: {', '.join(unknown)}")

    maximal = s.maximal
    if maximal is not None and maximal in chosen:
        return IsolationViolation("maximal-in-collection", (maximal,))

    members = sorted(chosen)
    pair_witness: Dict[Tuple[str, str], str] = {}
    for a, b in s.orthogonal_pairs:
        covering = [u for u in members if s.nested(a, u) and s.nested(b, u)]
        if not covering:
            return IsolationViolation("uncovered-pair", (a, b))
        pair_witness[(a, b)] = covering[0]

    membership: Dict[str, str] = {}
    for d in sorted(s.domains):
        containers = [u for u in members if s.nested(d, u)]
        if len(containers) > 1:
            return IsolationViolation("uniqueness", (d,) + tuple(containers))
        if containers:
            membership[d] = containers[0]

    return IsolationCertificate(chosen, pair_witness, membership)


def isolation_pool(s: IndexStructure) -> List[str]:
    """Non-maximal domains lying above at least one orthogonal pair."""
    maximal = s.maximal
    pairs = s.orthogonal_pairs
    return sorted(
        d for d in s.domains
        if d != maximal and any(a in s.down[d] and b in s.down[d] for a, b in pairs)
    )


def find_isolating_collection(s: IndexStructure, pool_limit: int = 24) -> Optional[IsolationCertificate]:
    """
    Search for a collection isolating orthogonality.

    Only upper bounds of orthogonal pairs are candidates; every member of a
    valid collection is the unique container of some pair, so nothing is lost.
    Collections are explored as increasing sequences in pre-order, which
    visits them in lexicographic order of their sorted ids, so the first hit
    is the lexicographically least valid collection.

    Raises:
        SearchBoundExceeded: when the candidate pool exceeds pool_limit
    """
    pairs = s.orthogonal_pairs
    if not pairs:
        return _certified(s, frozenset())

    pool = isolation_pool(s)
    if len(pool) > pool_limit:
        message = f"isolating-collection search bound exceeded: {len(pool)} candidates > {pool_limit}"
        log_and_raise(SearchBoundExceeded(message), message)
    logger.debug(f"Searching isolating collections over {len(pool)} candidates for {len(pairs)} pairs")

    covers = [
        frozenset(i for i, (a, b) in enumerate(pairs) if a in s.down[d] and b in s.down[d])
        for d in pool
    ]
    downs = [s.down[d] for d in pool]
    everything = frozenset(range(len(pairs)))
    coverable = frozenset().union(*covers) if covers else frozenset()
    if coverable != everything:
        stranded = pairs[min(everything - coverable)]
        logger.info(f"No isolating collection exists: pair {stranded} has no non-maximal upper bound")
        return None

    # Highest pool index able to cover each pair; a pair whose last chance is
    # behind the cursor can never be covered in this subtree.
    last_cover = {i: max(j for j, cover in enumerate(covers) if i in cover) for i in everything}

    def search(start: int, chosen: List[int], used: FrozenSet[str], covered: FrozenSet[int]) -> Optional[List[int]]:
        if covered == everything:
            return chosen
        if any(last_cover[i] < start for i in everything - covered):
            return None
        for j in range(start, len(pool)):
            if downs[j] & used:
                continue
            found = search(j + 1, chosen + [j], used | downs[j], covered | covers[j])
            if found is not None:
                return found
        return None

    found = search(0, [], frozenset(), frozenset())
    if found is None:
        logger.info("No isolating collection exists")
        return None
    return _certified(s, frozenset(pool[j] for j in found))


def _certified(s: IndexStructure, chosen: FrozenSet[str]) -> Optional[IsolationCertificate]:
    result = check_isolated_orthogonality(s, chosen)
    return result if isinstance(result, IsolationCertificate) else None


def isolated_transversality_violations(s: IndexStructure, cert: IsolationCertificate) -> List[Tuple[str, str]]:
    """
    Pairs of domains sitting under distinct members of I that fail to be
    transverse. Empty for any structure satisfying the axioms.
    """
    offending = []
    below = sorted(cert.membership.items())
    for i, (v, u1) in enumerate(below):
        for w, u2 in below[i + 1:]:
            if u1 != u2 and not s.transverse(v, w):
                offending.append((v, w))
    return offending


@dataclass(frozen=True)
class RelativeStructureSkeleton:
    """The index set I ∪ {R}: R on top, members of I pairwise transverse."""
    structure: IndexStructure
    root: str
    peripherals: Tuple[str, ...]
    rank: int

    def __post_init__(self):
        if self.structure.orthogonal_pairs:
            raise ValueError("Validation Failed: a relative skeleton carries no orthogonality")
        if self.rank > 1:
            raise ValueError(f"Validation Failed: relative skeleton has rank {self.rank}")

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "peripherals": list(self.peripherals),
            "rank": self.rank,
            "structure": self.structure.to_document(),
        }


def derive_relative_skeleton(s: IndexStructure, cert: IsolationCertificate) -> RelativeStructureSkeleton:
    """
    Collapse a certified structure to the rank-one skeleton.

    A member of I is flagged unbounded when anything below it is; R is
    unbounded when any domain of s is.

    Raises:
        InputError: if the certificate does not check out against s
    """
    recheck = check_isolated_orthogonality(s, cert.isolating_set)
    if isinstance(recheck, IsolationViolation):
        raise InputError(f"invalid isolation certificate: {recheck.clause} at {', '.join(recheck.witness)}")
    if recheck.membership != cert.membership or recheck.pair_witness != cert.pair_witness:
        raise InputError("invalid isolation certificate: witness maps do not match the structure")

    peripherals = tuple(sorted(cert.isolating_set))
    root = RELATIVE_ROOT
    while root in cert.isolating_set:
        root += "'"

    flags = {u: any(s.unbounded.get(d, True) for d in s.down[u]) for u in peripherals}
    flags[root] = any(s.unbounded.get(d, True) for d in s.domains)
    skeleton = IndexStructure.build((root,) + peripherals, flags, ((u, root) for u in peripherals))
    skeleton_rank, _ = rank(skeleton)
    logger.info(f"Derived relative skeleton with {len(peripherals)} peripherals, rank {skeleton_rank}")
    return RelativeStructureSkeleton(skeleton, root, peripherals, skeleton_rank)


def standard_relhyp_skeleton(k: int) -> IndexStructure:
    """Index set of a space hyperbolic relative to k peripherals: R over P1..Pk."""
    if k < 0:
        raise InputError(f"peripheral count must be non-negative, got {k}")
    peripherals = [f"P{i}" for i in range(1, k + 1)]
    return IndexStructure.build(
        [RELATIVE_ROOT] + peripherals,
        {name: True for name in [RELATIVE_ROOT] + peripherals},
        ((p, RELATIVE_ROOT) for p in peripherals),
    )
