"""Exhaustive grid maximization of the DQ classical rate.

The search runs over two coordinates. The power split angle ``theta`` sets
``sigma_p = sqrt(2W) cos(theta)`` and ``sigma_q = sqrt(2W) sin(theta)``. The
log-aspect ``la = ln(delta_p / delta_q)`` sets the tile shape. Tile area is held
at exactly 1/2: the effective output tile area is nondecreasing in ``delta_p``
and ``delta_q``, so a larger input tile can never give more output states.

The search does not know any closed forms, which makes it the independent check
for every closed-form capacity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .exceptions import MalformedInputError
from .phase_model import (
    MIN_AREA,
    RTOL,
    ChannelModel,
    ModulationScheme,
    PowerBudget,
    effective_tile,
    tile_map,
    vacuum_scheme,
)
from .result import BELOW_ONE_LEVEL, GRID_SEARCH, CapacityResult

TIE_BITS = 1e-9
QUARTER_PI = math.pi / 4


@dataclass(frozen=True)
class GridSpec:
    n_sigma: int = 257
    n_aspect: int = 257
    aspect_range: Optional[float] = None  # None -> 4W

    def resolve_range(self, budget: PowerBudget) -> float:
        if self.n_sigma < 2 or self.n_aspect < 2:
            raise MalformedInputError("grids need at least two points per axis")
        needed = max(1.0, 4.0 * budget.w)
        if self.aspect_range is None:
            return needed
        if not self.aspect_range > 1.0 or self.aspect_range < needed:
            raise MalformedInputError(
                f"aspect_range must be >= max(1, 4W) = {needed}, got {self.aspect_range}")
        return self.aspect_range


def objective(channel: ChannelModel, scheme: ModulationScheme) -> float:
    """Unclamped ``log2`` of the number of distinguishable output states."""
    tile = effective_tile(channel, scheme)
    gain = tile_map(channel).gain
    return math.log2(gain * scheme.sigma_p * scheme.sigma_q / tile.area)


def _tiles(log_aspect):
    half = math.sqrt(0.5)
    return half * np.exp(log_aspect / 2), half * np.exp(-log_aspect / 2)


def initial_grid(budget: PowerBudget, grid: GridSpec):
    """Coarse grid, exactly mirror-symmetric under P <-> Q.

    Returns ``(theta, sig_p, sig_q, log_aspect)``. Reversing either axis maps
    ``sig_p`` to ``sig_q`` and ``log_aspect`` to its negative, bit for bit.
    """
    n, m = grid.n_sigma, grid.n_aspect
    radius = math.sqrt(2.0 * budget.w)
    base = (math.pi / 2) / (n + 1)
    k = np.arange(n)
    theta = base * (k + 1)
    sig_p = radius * np.cos(base * (k + 1))
    sig_q = radius * np.cos(base * (n - k))
    span = math.log(grid.resolve_range(budget))
    log_aspect = span * (2.0 * np.arange(m) - (m - 1)) / (m - 1)
    return theta, sig_p, sig_q, log_aspect


def evaluate_grid(channel: ChannelModel, sig_p, sig_q, log_aspect, backend=None):
    dp, dq = _tiles(np.asarray(log_aspect, dtype=np.float64))
    tm = tile_map(channel)
    fn = kernels.eval_grid if backend is None else backend
    return fn(np.ascontiguousarray(sig_p, dtype=np.float64),
              np.ascontiguousarray(sig_q, dtype=np.float64),
              np.ascontiguousarray(dp), np.ascontiguousarray(dq),
              tm.scale_p, tm.scale_q, tm.noise_p, tm.noise_q, tm.gain,
              MIN_AREA, RTOL)


def _pick(values, theta, log_aspect):
    """Index of the maximum; near-ties go to the squarest tile, then the
    most balanced power split, then the lowest flat index."""
    best = values.max()
    if not np.isfinite(best):
        return None
    ii, jj = np.nonzero(values >= best - TIE_BITS)
    keys = np.lexsort((ii * values.shape[1] + jj,
                       np.abs(theta[ii] - QUARTER_PI),
                       np.abs(log_aspect[jj])))
    pick = keys[0]
    return ii[pick], jj[pick]


def _result(raw: float, scheme: ModulationScheme) -> CapacityResult:
    flags = (BELOW_ONE_LEVEL,) if raw < 0 else ()
    return CapacityResult(bits=max(0.0, raw), optimizer_scheme=scheme,
                          method=GRID_SEARCH, raw_bits=raw, flags=flags)


def _search(channel, budget, theta, sig_p, sig_q, log_aspect, backend=None):
    values = evaluate_grid(channel, sig_p, sig_q, log_aspect, backend)
    hit = _pick(values, theta, log_aspect)
    if hit is None:
        return None
    i, j = hit
    dp, dq = _tiles(log_aspect[j])
    scheme = ModulationScheme(float(sig_p[i]), float(sig_q[i]), float(dp), float(dq))
    return float(values[i, j]), scheme


def maximize_classical(channel: ChannelModel, budget: PowerBudget,
                       grid: GridSpec = GridSpec(), backend=None) -> CapacityResult:
    theta, sig_p, sig_q, log_aspect = initial_grid(budget, grid)
    found = _search(channel, budget, theta, sig_p, sig_q, log_aspect, backend)
    if found is None:
        return CapacityResult(0.0, vacuum_scheme(), GRID_SEARCH, raw_bits=0.0,
                              flags=(BELOW_ONE_LEVEL,))
    return _result(*found)


def refine(channel: ChannelModel, budget: PowerBudget, coarse_result: CapacityResult,
           shrink_factor: float = 0.5, rounds: int = 3,
           grid: GridSpec = GridSpec(), backend=None) -> CapacityResult:
    """Re-grid around the incumbent, halving (by default) the window each round.

    The incumbent is kept unless a strictly better point turns up, so the value
    never decreases.
    """
    if not 0.0 < shrink_factor < 1.0:
        raise MalformedInputError("shrink_factor must lie in (0, 1)")
    if rounds < 0:
        raise MalformedInputError("rounds must be >= 0")

    best_raw = coarse_result.raw_bits
    best = coarse_result.optimizer_scheme
    if rounds == 0:
        return coarse_result

    radius = math.sqrt(2.0 * budget.w)
    span = math.log(grid.resolve_range(budget))
    edge = (math.pi / 2) / (grid.n_sigma + 1)
    theta_lo, theta_hi = edge, math.pi / 2 - edge
    improved = False

    for r in range(1, rounds + 1):
        width = shrink_factor ** r
        t0 = math.atan2(best.sigma_q, best.sigma_p)
        a0 = math.log(best.delta_p / best.delta_q)
        theta = np.linspace(max(theta_lo, t0 - QUARTER_PI * width),
                            min(theta_hi, t0 + QUARTER_PI * width), grid.n_sigma)
        log_aspect = np.linspace(max(-span, a0 - span * width),
                                 min(span, a0 + span * width), grid.n_aspect)
        found = _search(channel, budget, theta, radius * np.cos(theta),
                        radius * np.sin(theta), log_aspect, backend)
        if found is not None and found[0] > best_raw:
            best_raw, best = found
            improved = True

    if not improved:
        return coarse_result
    return _result(best_raw, best)


def search(channel: ChannelModel, budget: PowerBudget, grid: GridSpec = GridSpec(),
           rounds: int = 3, shrink_factor: float = 0.5, backend=None) -> CapacityResult:
    """Coarse grid followed by ``rounds`` refinement passes."""
    coarse = maximize_classical(channel, budget, grid, backend)
    return refine(channel, budget, coarse, shrink_factor, rounds, grid, backend)
