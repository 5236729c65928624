"""Surface types and the witness kinds of the curve graph variants."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from src.utils.error_handler import InputError

# Surfaces where the separating curve graph is empty or disconnected.
SEPARATING_EXCEPTIONS = frozenset({(0, 4), (1, 2), (2, 0), (2, 1)})


@dataclass(frozen=True, order=True)
class SurfaceType:
    """S_{g,n}: genus g with n boundary components or punctures."""
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise InputError(f"surface type ({self.genus}, {self.punctures}) must be non-negative")

    @property
    def complexity(self) -> int:
        """ξ = 3g - 3 + n, the number of curves in a pants decomposition."""
        return 3 * self.genus - 3 + self.punctures

    def __str__(self) -> str:
        return f"S_({self.genus},{self.punctures})"

    @classmethod
    def parse(cls, text: str) -> "SurfaceType":
        """Read 'g,n'."""
        parts = text.replace(" ", "").split(",")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise InputError(f"surface type must look like 'g,n', got '{text}'")
        return cls(int(parts[0]), int(parts[1]))


class WitnessKind(str, Enum):
    SEPARATING = "sep"
    PANTS = "pants"
    CUT = "cut"

    @classmethod
    def parse(cls, text: str) -> "WitnessKind":
        try:
            return cls(text.lower())
        except ValueError:
            raise InputError(f"unknown witness kind '{text}'; expected one of sep, pants, cut")


def exclusion_reason(kind: WitnessKind, surface: SurfaceType) -> Optional[str]:
    """Why the curve graph of this kind is not studied on surface, or None."""
    g, n = surface.genus, surface.punctures
    if kind is WitnessKind.SEPARATING:
        if (g, n) in SEPARATING_EXCEPTIONS:
            return f"excluded: separating curve graph of {surface} is empty or disconnected"
        if 2 * g + n < 5:
            return f"separating curve graph of {surface} is undefined"
        return None
    if kind is WitnessKind.PANTS:
        if surface.complexity < 1:
            return f"pants graph of {surface} needs complexity at least 1"
        return None
    if n != 0 or g < 1:
        return f"cut graph is only defined for closed surfaces of genus at least 1, not {surface}"
    return None


def check_kind_range(kind: WitnessKind, surface: SurfaceType) -> None:
    """
    Raises:
        InputError: when the surface lies outside the range of kind
    """
    reason = exclusion_reason(kind, surface)
    if reason is not None:
        raise InputError(reason)
