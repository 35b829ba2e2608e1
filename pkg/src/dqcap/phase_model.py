"""Tile geometry of the discrete quadrature model.

States are never represented as density matrices here. An input ensemble is a
rectangle of spreads ``sigma_p x sigma_q`` tiled by perfectly distinguishable
cells ``delta_p x delta_q``; a channel maps each cell to an effective output
cell whose area is at least the uncertainty floor of 1/2 (hbar = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .exceptions import InvalidPowerError, MalformedInputError

VACUUM_STD = math.sqrt(0.5)
MIN_AREA = 0.5

# relative slack for constraints that are tight by construction (sqrt(8)**2 != 8)
RTOL = 1e-12


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class ModulationScheme:
    sigma_p: float
    sigma_q: float
    delta_p: float
    delta_q: float

    @property
    def power(self) -> float:
        return 0.5 * (self.sigma_p ** 2 + self.sigma_q ** 2)


@dataclass(frozen=True)
class PowerBudget:
    w: float

    def __post_init__(self):
        if not math.isfinite(self.w) or self.w < MIN_AREA:
            raise InvalidPowerError(f"mean power must be finite and >= 1/2, got {self.w!r}")


def vacuum_scheme() -> ModulationScheme:
    return ModulationScheme(VACUUM_STD, VACUUM_STD, VACUUM_STD, VACUUM_STD)


def symmetric_scheme(budget: PowerBudget) -> ModulationScheme:
    """Coherent-like tiling: equal spreads sqrt(W) and square 1/sqrt(2) tiles."""
    s = math.sqrt(budget.w)
    return ModulationScheme(s, s, VACUUM_STD, VACUUM_STD)


# ---------------------------------------------------------------------------
# channel families
# ---------------------------------------------------------------------------

def _check_lambda(lam: float) -> None:
    if not _finite(lam) or not 0.0 < lam <= 1.0:
        raise MalformedInputError(f"transmissivity must lie in (0, 1], got {lam!r}")


def _check_nonneg(name: str, value: float) -> None:
    if not _finite(value) or value < 0.0:
        raise MalformedInputError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class AdditiveGaussian:
    lam: float
    sigma_r: float
    sigma_s: float
    tag = "additive"

    def __post_init__(self):
        _check_lambda(self.lam)
        for name, s in (("sigma_r", self.sigma_r), ("sigma_s", self.sigma_s)):
            if not _finite(s) or s < VACUUM_STD * (1 - RTOL):
                raise MalformedInputError(f"{name} must be >= 1/sqrt(2), got {s!r}")

    def as_additive(self) -> "AdditiveGaussian":
        return self

    def params(self) -> dict:
        return {"lambda": self.lam, "sigma_r": self.sigma_r, "sigma_s": self.sigma_s}


@dataclass(frozen=True)
class Attenuation:
    lam: float
    tag = "attenuation"

    def __post_init__(self):
        _check_lambda(self.lam)

    def as_additive(self) -> AdditiveGaussian:
        return AdditiveGaussian(self.lam, VACUUM_STD, VACUUM_STD)

    def params(self) -> dict:
        return {"lambda": self.lam}


@dataclass(frozen=True)
class ThermalNoise:
    lam: float
    n_e: float
    tag = "thermal"

    def __post_init__(self):
        _check_lambda(self.lam)
        _check_nonneg("n_e", self.n_e)

    @property
    def env_std(self) -> float:
        return math.sqrt(self.n_e + 0.5)

    def as_additive(self) -> AdditiveGaussian:
        s = self.env_std
        return AdditiveGaussian(self.lam, s, s)

    def params(self) -> dict:
        return {"lambda": self.lam, "n_e": self.n_e}


@dataclass(frozen=True)
class ClassicalNoise:
    """Gaussian phase-space kicks of variance ``mu2`` on both quadratures."""

    mu2: float
    tag = "classical-noise"

    def __post_init__(self):
        _check_nonneg("mu2", self.mu2)

    def params(self) -> dict:
        return {"mu2": self.mu2}


@dataclass(frozen=True)
class Dephasing:
    """Classical noise of variance ``mu2`` on Q only; P passes untouched."""

    mu2: float
    tag = "dephasing"

    def __post_init__(self):
        _check_nonneg("mu2", self.mu2)

    def params(self) -> dict:
        return {"mu2": self.mu2}


ChannelModel = Union[AdditiveGaussian, Attenuation, ThermalNoise, ClassicalNoise, Dephasing]


class TileMap(NamedTuple):
    """Per-quadrature action of a channel on a tile.

    Output side along P is ``max(scale_p * delta_p, noise_p)``, likewise for Q;
    ``gain`` multiplies the spread area ``sigma_p * sigma_q``.
    """

    scale_p: float
    scale_q: float
    noise_p: float
    noise_q: float
    gain: float


def tile_map(channel: ChannelModel) -> TileMap:
    if isinstance(channel, ClassicalNoise):
        mu = math.sqrt(channel.mu2)
        return TileMap(1.0, 1.0, mu, mu, 1.0)
    if isinstance(channel, Dephasing):
        return TileMap(1.0, 1.0, 0.0, math.sqrt(channel.mu2), 1.0)
    add = channel.as_additive()
    k = math.sqrt(add.lam)
    leak = math.sqrt(1.0 - add.lam)
    return TileMap(k, k, leak * add.sigma_r, leak * add.sigma_s, add.lam)


@dataclass(frozen=True)
class TileDims:
    dp: float
    dq: float

    @property
    def area(self) -> float:
        return self.dp * self.dq


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def validate_scheme(scheme: ModulationScheme, budget: PowerBudget) -> list[str]:
    """Return the violated physicality constraints; an empty list means valid.

    Raises MalformedInputError for non-finite fields or non-positive tiles.
    """
    fields = (scheme.sigma_p, scheme.sigma_q, scheme.delta_p, scheme.delta_q)
    if not _finite(*fields):
        raise MalformedInputError(f"non-finite scheme field in {scheme!r}")
    if scheme.delta_p <= 0 or scheme.delta_q <= 0:
        raise MalformedInputError("tile dimensions must be positive")
    if scheme.sigma_p < 0 or scheme.sigma_q < 0:
        raise MalformedInputError("quadrature spreads must be non-negative")

    violations = []
    if scheme.delta_p * scheme.delta_q < MIN_AREA * (1 - RTOL):
        violations.append("uncertainty")
    if (scheme.delta_p > scheme.sigma_p * (1 + RTOL)
            or scheme.delta_q > scheme.sigma_q * (1 + RTOL)):
        violations.append("fit")
    if scheme.power > budget.w * (1 + RTOL):
        violations.append("power")
    return violations


def effective_tile(channel: ChannelModel, scheme: ModulationScheme) -> TileDims:
    tm = tile_map(channel)
    dp = max(tm.scale_p * scheme.delta_p, tm.noise_p)
    dq = max(tm.scale_q * scheme.delta_q, tm.noise_q)
    area = dp * dq
    if area < MIN_AREA:
        # lift to the floor keeping the raw aspect ratio; this minimizes the area
        t = math.sqrt(MIN_AREA / area)
        dp, dq = dp * t, dq * t
    return TileDims(dp, dq)


def state_count(scheme: ModulationScheme) -> float:
    return scheme.sigma_p * scheme.sigma_q / (scheme.delta_p * scheme.delta_q)
