"""Randomly generated index structures shared by the hhs tests."""

import random
from dataclasses import dataclass
from typing import List, Tuple

from src.hhs.index_structure import IndexStructure


@dataclass(frozen=True)
class Gadget:
    """At node parent: w and u side by side, u over u_a and u_b, w orthogonal to both."""
    parent: str
    w: str
    u: str
    u_a: str
    u_b: str


def random_valid_structure(seed: int, max_domains: int = 12) -> Tuple[IndexStructure, List[Gadget]]:
    """
    A random tree under S (with S over at least t1 and t2) carrying one or two
    product gadgets at tree nodes. Some domains other than S are bounded.

    Returns:
        (structure, gadgets)
    """
    rng = random.Random(seed)
    gadget_count = rng.choice([1, 1, 2]) if max_domains >= 11 else 1
    extra = rng.randint(0, max(0, max_domains - 3 - 4 * gadget_count))
    nodes = ["S", "t1", "t2"]
    parent = {"t1": "S", "t2": "S"}
    for i in range(3, 3 + extra):
        name = f"t{i}"
        parent[name] = rng.choice(nodes)
        nodes.append(name)

    gadgets = []
    orth = []
    domains = list(nodes)
    for g in range(gadget_count):
        gadget = Gadget(rng.choice(nodes), f"w{g}", f"u{g}", f"u{g}a", f"u{g}b")
        parent.update({gadget.w: gadget.parent, gadget.u: gadget.parent, gadget.u_a: gadget.u, gadget.u_b: gadget.u})
        orth += [(gadget.w, gadget.u_a), (gadget.w, gadget.u_b)]
        domains += [gadget.w, gadget.u, gadget.u_a, gadget.u_b]
        gadgets.append(gadget)

    unbounded = {d: d == "S" or rng.random() < 0.8 for d in domains}
    return IndexStructure.build(domains, unbounded, parent.items(), orth), gadgets
