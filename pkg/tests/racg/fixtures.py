"""Defining graphs shared by the racg tests."""

from src.racg.defining_graph import SimplicialGraph


def cycle(n: int) -> SimplicialGraph:
    names = [chr(ord('a') + i) for i in range(n)]
    return SimplicialGraph.build(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def square_with_whisker() -> SimplicialGraph:
    """The square a-b-c-d with a pendant vertex e at a."""
    return SimplicialGraph.build("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "e")])


C4_WHISKER_TEXT = """# square with a whisker
v a
v b
v c
v d
v e
e a b
e b c
e c d
e d a
e a e
"""
