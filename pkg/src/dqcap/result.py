"""Capacity result record shared by the closed-form and grid paths."""
from __future__ import annotations

from dataclasses import dataclass

from .phase_model import ModulationScheme

CLOSED_FORM = "closed_form"
GRID_SEARCH = "grid_search"

BELOW_ONE_LEVEL = "below-one-level"
POWER_LIMITED = "power-limited"


@dataclass(frozen=True)
class CapacityResult:
    """A rate in bits with the scheme that attains it.

    ``raw_bits`` is the unclamped log of the output state count; ``bits`` is
    clamped at zero, and ``BELOW_ONE_LEVEL`` is flagged when clamping applied.
    """

    bits: float
    optimizer_scheme: ModulationScheme
    method: str
    integer_levels: bool = False
    kind: str = "classical"
    raw_bits: float = 0.0
    flags: tuple = ()

    @property
    def below_one_level(self) -> bool:
        return BELOW_ONE_LEVEL in self.flags

    @property
    def power_limited(self) -> bool:
        return POWER_LIMITED in self.flags
