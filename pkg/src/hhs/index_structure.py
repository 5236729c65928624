"""
Finite relational model of a hierarchy index set.

Domains are opaque string ids. Nesting is given as an arbitrary relation and
closed reflexively and transitively; orthogonality is closed downward along
nesting. Transversality is never stored, it is whatever is left over.
"""

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from src.documents import IndexStructureDocument, parse_document
from src.utils.error_handler import InputError


@dataclass(frozen=True)
class IndexStructure:
    """
    Domains with nesting, orthogonality and boundedness flags.

    Build instances with :meth:`build`, which normalizes the relations and
    rejects dangling references. The closed relations are computed lazily.
    """
    domains: Tuple[str, ...]
    unbounded: Mapping[str, bool] = field(hash=False)
    nest: FrozenSet[Tuple[str, str]] = frozenset()
    orth: FrozenSet[FrozenSet[str]] = frozenset()

    def __post_init__(self):
        if len(set(self.domains)) != len(self.domains):
            duplicates = sorted({d for d in self.domains if self.domains.count(d) > 1})
            raise InputError(f"duplicate domain ids: {', '.join(duplicates)}")
        known = set(self.domains)
        for child, parent in sorted(self.nest):
            for name in (child, parent):
                if name not in known:
                    raise InputError(f"nest pair ({child}, {parent}) references unknown domain '{name}'")
        for pair in sorted(self.orth, key=sorted):
            for name in pair:
                if name not in known:
                    raise InputError(f"orth pair {sorted(pair)} references unknown domain '{name}'")
        for name in self.unbounded:
            if name not in known:
                raise InputError(f"unbounded flag given for unknown domain '{name}'")

    @classmethod
    def build(cls,
              domains: Iterable[str],
              unbounded: Optional[Mapping[str, bool]] = None,
              nest: Iterable[Tuple[str, str]] = (),
              orth: Iterable[Tuple[str, str]] = ()) -> "IndexStructure":
        """
        Create a structure from plain collections.

        Args:
            domains: Domain ids, kept in the given order
            unbounded: Optional flags; missing domains default to unbounded
            nest: (child, parent) pairs
            orth: Unordered pairs; a pair (a, a) is kept so validation can report it

        Raises:
            InputError: on duplicate ids or references to unknown domains
        """
        domain_tuple = tuple(domains)
        flags = dict(unbounded or {})
        for name in domain_tuple:
            flags.setdefault(name, True)
        return cls(
            domains=domain_tuple,
            unbounded=flags,
            nest=frozenset((c, p) for c, p in nest if c != p),
            orth=frozenset(frozenset(pair) for pair in orth),
        )

    # --- closures -------------------------------------------------------

    @cached_property
    def nest_graph(self) -> nx.DiGraph:
        """Declared nesting as a digraph with edges child -> parent."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.domains)
        graph.add_edges_from(self.nest)
        return graph

    @cached_property
    def up(self) -> Dict[str, FrozenSet[str]]:
        """Each domain mapped to everything it nests into, itself included."""
        graph = self.nest_graph
        return {d: frozenset(nx.descendants(graph, d)) | {d} for d in self.domains}

    @cached_property
    def down(self) -> Dict[str, FrozenSet[str]]:
        """Each domain mapped to everything nested in it, itself included."""
        graph = self.nest_graph
        return {d: frozenset(nx.ancestors(graph, d)) | {d} for d in self.domains}

    @cached_property
    def closed_orth(self) -> FrozenSet[FrozenSet[str]]:
        """Orthogonality closed under V ⊑ W, W ⊥ U ⇒ V ⊥ U (size-1 sets are self-orthogonality)."""
        closed = set()
        for pair in self.orth:
            members = sorted(pair)
            first, second = members[0], members[-1]
            for v in self.down[first]:
                for u in self.down[second]:
                    closed.add(frozenset((v, u)))
        return frozenset(closed)

    @cached_property
    def orthogonal_pairs(self) -> List[Tuple[str, str]]:
        """Closed orthogonal pairs of distinct domains, sorted."""
        return sorted(tuple(sorted(p)) for p in self.closed_orth if len(p) == 2)

    @cached_property
    def maximal_domains(self) -> Tuple[str, ...]:
        """Domains with no strict upper bound."""
        return tuple(sorted(
            d for d in self.domains
            if all(d in self.up[u] for u in self.up[d])
        ))

    @property
    def maximal(self) -> Optional[str]:
        """The unique ⊑-maximal domain, or None when it is not unique."""
        found = self.maximal_domains
        return found[0] if len(found) == 1 else None

    # --- relations ------------------------------------------------------

    def nested(self, child: str, parent: str) -> bool:
        """child ⊑ parent in the closed relation."""
        return child in self.down[parent]

    def comparable(self, a: str, b: str) -> bool:
        return self.nested(a, b) or self.nested(b, a)

    def orthogonal(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.closed_orth

    def transverse(self, a: str, b: str) -> bool:
        return a != b and not self.comparable(a, b) and not self.orthogonal(a, b)

    # --- derived structures ---------------------------------------------

    def restricted(self, keep: Iterable[str]) -> "IndexStructure":
        """
        Substructure on a subset of domains, keeping the closed relations
        between survivors so that deletion does not break transitivity.
        """
        keep_set = set(keep)
        kept = tuple(d for d in self.domains if d in keep_set)
        nest = [(c, p) for p in kept for c in self.down[p] if c in keep_set and c != p]
        orth = [tuple(sorted(pair)) if len(pair) == 2 else (next(iter(pair)),) * 2
                for pair in self.closed_orth if pair <= keep_set]
        return IndexStructure.build(kept, {d: self.unbounded[d] for d in kept}, nest, orth)

    def relabeled(self, mapping: Mapping[str, str]) -> "IndexStructure":
        """Copy with every domain id renamed through mapping."""
        return IndexStructure.build(
            (mapping[d] for d in self.domains),
            {mapping[d]: flag for d, flag in self.unbounded.items()},
            ((mapping[c], mapping[p]) for c, p in self.nest),
            (tuple(mapping[x] for x in sorted(pair)) * (2 if len(pair) == 1 else 1)
             for pair in self.orth),
        )

    # --- documents ------------------------------------------------------

    def to_document(self) -> dict:
        return {
            "domains": [{"id": d, "unbounded": bool(self.unbounded[d])} for d in self.domains],
            "nest": [list(pair) for pair in sorted(self.nest)],
            "orth": sorted(
                [sorted(pair) if len(pair) == 2 else [next(iter(pair))] * 2 for pair in self.orth]
            ),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True, indent=2)

    @classmethod
    def from_document(cls, data: object) -> "IndexStructure":
        """
        Parse a decoded JSON document.

        Raises:
            InputError: on schema violations (with their path) or dangling ids
        """
        document = parse_document(IndexStructureDocument, data)
        ids = [entry.id for entry in document.domains]
        known = set(ids)
        for index, (child, parent) in enumerate(document.nest):
            for name in (child, parent):
                if name not in known:
                    raise InputError(f"unknown domain '{name}' in nest pair [{child}, {parent}]",
                                     path=f"nest[{index}]")
        for index, (a, b) in enumerate(document.orth):
            for name in (a, b):
                if name not in known:
                    raise InputError(f"unknown domain '{name}' in orth pair [{a}, {b}]",
                                     path=f"orth[{index}]")
        return cls.build(
            ids,
            {entry.id: entry.unbounded for entry in document.domains},
            document.nest,
            document.orth,
        )

    @classmethod
    def from_json(cls, text: str) -> "IndexStructure":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"invalid JSON: {e.msg}", line=e.lineno) from e
        return cls.from_document(data)


def complexity(s: IndexStructure) -> int:
    """
    Length of the longest ⊑-chain.

    Raises:
        InputError: if nesting has a cycle (no longest chain exists)
    """
    if not s.domains:
        return 0
    graph = s.nest_graph
    if not nx.is_directed_acyclic_graph(graph):
        raise InputError("nesting relation is not antisymmetric; complexity is undefined")
    return nx.dag_longest_path_length(graph) + 1


def rank(s: IndexStructure) -> Tuple[int, FrozenSet[str]]:
    """
    Largest pairwise-orthogonal set of unbounded domains.

    Returns:
        The size and one witness set (empty when nothing is unbounded).
    """
    unbounded = sorted(d for d in s.domains if s.unbounded.get(d, True))
    if not unbounded:
        return 0, frozenset()
    graph = nx.Graph()
    graph.add_nodes_from(unbounded)
    keep = set(unbounded)
    graph.add_edges_from((a, b) for a, b in s.orthogonal_pairs if a in keep and b in keep)
    clique, size = nx.max_weight_clique(graph, weight=None)
    return int(size), frozenset(clique)
