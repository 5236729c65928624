"""Index-level axiom checks for IndexStructure."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from src.hhs.index_structure import IndexStructure
from src.utils.logger import get_logger

logger = get_logger()


class ContainerCheck(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_CHECKED = "not_checked"


@dataclass
class ValidationReport:
    """Every violated axiom with the domains that witness it."""
    violations: List[Tuple[str, Tuple[str, ...]]] = field(default_factory=list)
    clean_containers: ContainerCheck = ContainerCheck.NOT_CHECKED

    @property
    def ok(self) -> bool:
        return not self.violations

    def tags(self) -> List[str]:
        return sorted({tag for tag, _ in self.violations})

    def to_dict(self) -> dict:
        return {
            "valid": self.ok,
            "violations": [{"axiom": tag, "domains": list(witness)} for tag, witness in self.violations],
            "clean_containers": self.clean_containers.value,
        }


def validate_structure(raw: IndexStructure,
                       clean_containers: bool = False,
                       max_complexity: Optional[int] = None) -> ValidationReport:
    """
    Check the index-level axioms.

    Args:
        raw: The structure to check (already free of dangling ids)
        clean_containers: Also require each container to be orthogonal to the
            domain it contains the orthogonal complement of
        max_complexity: Optional bound on the length of ⊑-chains

    Returns:
        A report listing every violation. Axiom tags are ``nest-antisymmetry``,
        ``unique-maximal``, ``orth-irreflexive``, ``orth-comparability``, ``orth-disjointness``,
        ``finite-complexity``, ``containers`` and ``clean-containers``.
    """
    report = ValidationReport()
    domains = sorted(raw.domains)

    for i, a in enumerate(domains):
        for b in domains[i + 1:]:
            if raw.nested(a, b) and raw.nested(b, a):
                report.violations.append(("nest-antisymmetry", (a, b)))

    if domains and len(raw.maximal_domains) != 1:
        report.violations.append(("unique-maximal", raw.maximal_domains))

    for d in domains:
        if frozenset((d,)) in raw.orth:
            report.violations.append(("orth-irreflexive", (d,)))

    for a, b in raw.orthogonal_pairs:
        if raw.comparable(a, b):
            report.violations.append(("orth-comparability", (a, b)))

    # Orthogonal domains share nothing below them.
    for a, b in sorted(tuple(sorted(pair)) for pair in raw.orth if len(pair) == 2):
        common = raw.down[a] & raw.down[b]
        if common and not raw.comparable(a, b):
            report.violations.append(("orth-disjointness", (a, b, min(common))))

    if max_complexity is not None:
        longest = _longest_chain(raw)
        if len(longest) > max_complexity:
            report.violations.append(("finite-complexity", tuple(longest)))

    clean_ok = True
    for w in domains:
        below = sorted(raw.down[w])
        proper = [q for q in below if q != w]
        for u in below:
            perp = {v for v in below if raw.orthogonal(v, u)}
            if not perp:
                continue
            containers = [q for q in proper if perp <= raw.down[q]]
            if not containers:
                report.violations.append(("containers", (w, u)))
                clean_ok = False
                continue
            if clean_containers and not any(raw.orthogonal(q, u) for q in containers):
                report.violations.append(("clean-containers", (w, u)))
                clean_ok = False

    if clean_containers:
        report.clean_containers = ContainerCheck.HOLDS if clean_ok else ContainerCheck.FAILS

    if report.violations:
        logger.info(f"Structure with {len(domains)} domains violates: {', '.join(report.tags())}")
    else:
        logger.debug(f"Structure with {len(domains)} domains passed validation")
    return report


def _longest_chain(raw: IndexStructure) -> List[str]:
    """Longest strict chain, bottom first; cycles are ignored by walking strict nesting only."""
    strict = {d: sorted(u for u in raw.up[d] if u != d and d not in raw.up[u]) for d in raw.domains}
    memo = {}

    def best_from(d: str) -> List[str]:
        if d not in memo:
            chains = [best_from(u) for u in strict[d]]
            memo[d] = [d] + max(chains, key=len, default=[])
        return memo[d]

    return max((best_from(d) for d in sorted(raw.domains)), key=len, default=[])
