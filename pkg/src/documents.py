"""
Pydantic models for the JSON documents the toolkit reads and writes, plus the
line-based parser for defining-graph text files.
"""

import re
from typing import Any, List, Optional, Sequence, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.utils.error_handler import InputError
from src.utils.logger import get_logger

logger = get_logger()

M = TypeVar('M', bound=BaseModel)


class DomainEntry(BaseModel):
    model_config = ConfigDict(extra='forbid')

    id: str
    unbounded: bool = True


class IndexStructureDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    domains: List[DomainEntry]
    nest: List[Tuple[str, str]] = Field(default_factory=list)
    orth: List[Tuple[str, str]] = Field(default_factory=list)


class StableVertexEntry(BaseModel):
    model_config = ConfigDict(extra='forbid')

    genus: int = Field(ge=0)
    legs: int = Field(default=0, ge=0)


class StableGraphDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    vertices: List[StableVertexEntry]
    edges: List[Tuple[int, int]] = Field(default_factory=list)


class MetricGraphDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    vertices: List[str]
    edges: List[Tuple[str, str, float]] = Field(default_factory=list)


def format_location(loc: Sequence[Union[str, int]]) -> str:
    """Render a pydantic error location as ``nest[2][1]`` / ``domains[0].id``."""
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def parse_document(model: Type[M], data: Any) -> M:
    """
    Validate decoded JSON against a document model.

    Raises:
        InputError: naming the location of the first schema violation
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        path = format_location(first.get('loc', ())) or '<root>'
        raise InputError(f"schema violation: {first.get('msg', 'invalid value')}", path=path) from e


_VERTEX_LINE = re.compile(r'^v\s+(\S+)$')
_EDGE_LINE = re.compile(r'^e\s+(\S+)\s+(\S+)$')


def parse_graph_text(text: str) -> Tuple[List[str], List[Tuple[str, str]]]:
    """
    Parse the defining-graph text format.

    Lines are ``v <name>`` or ``e <name> <name>``; ``#`` starts a comment.
    Edges may only reference declared vertices, loops are rejected and a
    repeated edge is an error.

    Returns:
        The declared vertices in file order and the edges in file order.

    Raises:
        InputError: carrying the 1-based line number of the offending line
    """
    vertices: List[str] = []
    seen_vertices = set()
    edges: List[Tuple[str, str]] = []
    seen_edges = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue

        vertex_match = _VERTEX_LINE.match(line)
        if vertex_match:
            name = vertex_match.group(1)
            if name in seen_vertices:
                raise InputError(f"duplicate vertex '{name}'", line=number)
            seen_vertices.add(name)
            vertices.append(name)
            continue

        edge_match = _EDGE_LINE.match(line)
        if edge_match:
            a, b = edge_match.group(1), edge_match.group(2)
            for name in (a, b):
                if name not in seen_vertices:
                    raise InputError(f"edge references undeclared vertex '{name}'", line=number)
            if a == b:
                raise InputError(f"loop at vertex '{a}' is not allowed", line=number)
            key = frozenset((a, b))
            if key in seen_edges:
                raise InputError(f"duplicate edge {a}-{b}", line=number)
            seen_edges.add(key)
            edges.append((a, b))
            continue

        raise InputError(f"unrecognized line '{line}'", line=number)

    logger.debug(f"Parsed graph text with {len(vertices)} vertices and {len(edges)} edges")
    return vertices, edges


def format_graph_text(vertices: Sequence[str], edges: Sequence[Tuple[str, str]],
                      header: Optional[str] = None) -> str:
    """Inverse of parse_graph_text."""
    lines = [f"# {header}"] if header else []
    lines.extend(f"v {v}" for v in vertices)
    lines.extend(f"e {a} {b}" for a, b in edges)
    return "\n".join(lines) + "\n"
