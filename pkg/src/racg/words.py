"""
Words in a right-angled Coxeter group.

Elements are stored as canonical words: reduced, then the lexicographically
least representative of their commutation class (the greedy lexicographic
normal form of the trace).
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from src.racg.defining_graph import SimplicialGraph
from src.utils.error_handler import InputError

Word = Tuple[str, ...]


@dataclass(frozen=True, order=True)
class GroupElement:
    """A group element, identified by its canonical word."""
    word: Word = ()

    def __len__(self) -> int:
        return len(self.word)

    def letters(self) -> FrozenSet[str]:
        return frozenset(self.word)

    def __str__(self) -> str:
        if not self.word:
            return "1"
        if all(len(letter) == 1 for letter in self.word):
            return "".join(self.word)
        return ".".join(self.word)


class RightAngledCoxeterGroup:
    """W_Γ: one involution per vertex, adjacent vertices commute."""

    def __init__(self, graph: SimplicialGraph):
        self.graph = graph
        self.generators: Tuple[str, ...] = tuple(sorted(graph.vertices))
        self._commute: Dict[str, FrozenSet[str]] = graph.neighbors

    def commute(self, a: str, b: str) -> bool:
        return b in self._commute[a]

    def identity(self) -> GroupElement:
        return GroupElement(())

    def _check(self, letters: Iterable[str]) -> List[str]:
        letters = list(letters)
        for letter in letters:
            if letter not in self._commute:
                raise InputError(f"unknown generator '{letter}'")
        return letters

    def reduce(self, letters: Iterable[str]) -> List[str]:
        """
        Reduced word for the product of letters.

        Appending x to a reduced word either cancels the last occurrence of x
        that only commuting letters follow, or yields a reduced word.
        """
        reduced: List[str] = []
        for x in self._check(letters):
            position = len(reduced) - 1
            while position >= 0 and reduced[position] != x and self.commute(reduced[position], x):
                position -= 1
            if position >= 0 and reduced[position] == x:
                del reduced[position]
            else:
                reduced.append(x)
        return reduced

    def normal_form(self, reduced: Sequence[str]) -> Word:
        """Lexicographically least rearrangement by commutations of a reduced word."""
        remaining = list(reduced)
        result: List[str] = []
        while remaining:
            best = None
            for i, letter in enumerate(remaining):
                movable = all(
                    remaining[j] != letter and self.commute(remaining[j], letter)
                    for j in range(i)
                )
                if movable and (best is None or letter < remaining[best]):
                    best = i
            result.append(remaining.pop(best))
        return tuple(result)

    def element(self, letters: Iterable[str]) -> GroupElement:
        return GroupElement(self.normal_form(self.reduce(letters)))

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.element(g.word + h.word)

    def inverse(self, g: GroupElement) -> GroupElement:
        return self.element(reversed(g.word))

    def minimal_coset_representative(self, g: GroupElement, subgroup: Iterable[str]) -> GroupElement:
        """
        The shortest element of g·W_T.

        Letters of T that can be commuted to the right end are stripped until
        none remain; the result is unique in a Coxeter group.
        """
        allowed = frozenset(self._check(subgroup))
        word = list(g.word)
        changed = True
        while changed:
            changed = False
            for i in range(len(word) - 1, -1, -1):
                letter = word[i]
                if letter in allowed and all(self.commute(letter, later) for later in word[i + 1:]):
                    del word[i]
                    changed = True
                    break
        return GroupElement(self.normal_form(word))


def canonical_word(graph: SimplicialGraph, letters: Iterable[str]) -> GroupElement:
    """Canonical form of the product of letters in W_Γ."""
    return RightAngledCoxeterGroup(graph).element(letters)
