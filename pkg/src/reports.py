"""Classification reports shared by the RACG and curves classifiers."""

import hashlib
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Union

from src import __version__


class Status(str, Enum):
    HYPERBOLIC = "hyperbolic"
    RELATIVELY_HYPERBOLIC = "relatively_hyperbolic"
    NOT_RELATIVELY_HYPERBOLIC = "not_relatively_hyperbolic"
    INCONCLUSIVE = "inconclusive"


def input_hash(payload: Union[str, bytes]) -> str:
    """sha256 hex digest of the raw command input."""
    data = payload.encode("utf-8") if isinstance(payload, str) else payload
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class Provenance:
    command: str
    input_hash: str
    tool_version: str = __version__

    def to_dict(self) -> dict:
        return {"command": self.command, "input_hash": self.input_hash, "tool_version": self.tool_version}


@dataclass(frozen=True)
class ClassificationReport:
    """
    A verdict with the evidence behind it.

    Relatively hyperbolic verdicts must name their peripherals, and an
    inconclusive verdict must say which check could not be settled through a
    ``reason`` entry in its counterexample or certificate payload.
    """
    status: Status
    peripherals: List[List[str]] = field(default_factory=list)
    certificate: Optional[Dict[str, Any]] = None
    counterexample: Optional[Dict[str, Any]] = None
    notes: List[str] = field(default_factory=list)
    provenance: Optional[Provenance] = None

    def __post_init__(self):
        if self.status is Status.RELATIVELY_HYPERBOLIC and not self.peripherals:
            raise ValueError("Validation Failed: a relatively hyperbolic report needs peripherals")
        if self.status is Status.INCONCLUSIVE:
            payloads = [p for p in (self.certificate, self.counterexample) if p]
            if not any("reason" in p for p in payloads):
                raise ValueError("Validation Failed: an inconclusive report must explain the open check")

    def with_provenance(self, provenance: Provenance) -> "ClassificationReport":
        return replace(self, provenance=provenance)

    def to_dict(self) -> dict:
        data: Dict[str, Any] = {
            "status": self.status.value,
            "peripherals": [list(p) for p in self.peripherals],
            "notes": list(self.notes),
        }
        if self.certificate is not None:
            data["certificate"] = self.certificate
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        if self.provenance is not None:
            data["provenance"] = self.provenance.to_dict()
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
