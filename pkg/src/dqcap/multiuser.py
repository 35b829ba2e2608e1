"""Two-user DQ rate regions as intersections of halfplanes.

Every region here has the form ``{R >= 0 : sum_i a_i R_i <= b}`` with 0/1
coefficients, so it is downward closed and its Pareto boundary is a polyline
whose corners come from pairwise constraint intersections.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import MalformedInputError, UnsupportedRegimeError
from .phase_model import PowerBudget

ATOL = 1e-12


def _bits(x: float) -> float:
    """``log2(x)`` clamped at 0: fewer than one state carries nothing."""
    if x <= 1.0:
        return 0.0
    return math.log2(x)


@dataclass(frozen=True)
class RateRegion:
    constraints: tuple  # ((coeffs...), bound) pairs
    labels: tuple = ("R_1", "R_2")

    def __post_init__(self):
        for coeffs, bound in self.constraints:
            if len(coeffs) != self.dimension:
                raise MalformedInputError("constraint arity does not match labels")
            if any(c not in (0, 1) for c in coeffs):
                raise MalformedInputError("coefficients must be 0 or 1")
            if not bound >= 0:
                raise MalformedInputError(f"bound must be >= 0, got {bound!r}")

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def bound(self, coeffs) -> float:
        """Tightest bound attached to the given coefficient vector."""
        coeffs = tuple(coeffs)
        matches = [b for c, b in self.constraints if tuple(c) == coeffs]
        return min(matches) if matches else math.inf

    def vertices(self) -> list:
        return _vertices(self)


def make_region(labels, bounds: dict) -> RateRegion:
    return RateRegion(tuple((tuple(c), float(b)) for c, b in bounds.items()), tuple(labels))


def broadcast_region(lam: float, budget: PowerBudget) -> RateRegion:
    """Sender A to receivers B (transmitted branch) and C (reflected branch)."""
    if not math.isfinite(lam) or lam <= 0.5 or lam > 1.0:
        raise UnsupportedRegimeError(
            f"broadcast region needs 1/2 < lambda <= 1, got {lam!r}")
    w = budget.w
    return make_region(("R_B", "R_C"), {
        (0, 1): _bits(2 * (1 - lam) * w),
        (1, 1): _bits(2 * lam * w),
    })


def mac_region(lam: float, budget_a: PowerBudget, budget_b: PowerBudget) -> RateRegion:
    """Senders A (weight lambda) and B (weight 1 - lambda) into one receiver.

    Valid while A's attenuated spread dominates, ``lam*W_A >= (1-lam)*W_B``.
    A's high-order bits always get through; the low-order positions are
    shared, so the sum rate is capped by A's own tile count.
    """
    if not math.isfinite(lam) or not 0.0 < lam < 1.0:
        raise UnsupportedRegimeError(f"MAC needs 0 < lambda < 1, got {lam!r}")
    wa, wb = budget_a.w, budget_b.w
    if lam * wa < (1 - lam) * wb:
        raise UnsupportedRegimeError(
            "MAC region is derived for lambda*W_A >= (1-lambda)*W_B")
    a_bits = _bits(2 * lam * wa)
    return make_region(("R_A", "R_B"), {
        (1, 0): a_bits,
        (0, 1): _bits(2 * (1 - lam) * wb),
        (1, 1): a_bits,
    })


def region_contains(region: RateRegion, point) -> bool:
    point = tuple(float(x) for x in point)
    if len(point) != region.dimension:
        raise MalformedInputError(
            f"point has {len(point)} coordinates, region has {region.dimension}")
    if any(x < -ATOL for x in point):
        return False
    for coeffs, bound in region.constraints:
        lhs = sum(c * x for c, x in zip(coeffs, point))
        if lhs > bound + ATOL * max(1.0, bound):
            return False
    return True


def _lines(region: RateRegion):
    dim = region.dimension
    axes = [(tuple(1 if k == i else 0 for k in range(dim)), 0.0) for i in range(dim)]
    return list(region.constraints), axes


def _vertices(region: RateRegion) -> list:
    if region.dimension != 2:
        raise MalformedInputError("vertex enumeration is implemented for two users")
    caps, axes = _lines(region)
    # every line as (a, b, c) meaning a*x + b*y = c
    lines = [(c[0], c[1], b) for c, b in caps] + [(c[0], c[1], 0.0) for c, _ in axes]
    found = set()
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (c1 * b2 - c2 * b1) / det
        y = (a1 * c2 - a2 * c1) / det
        if region_contains(region, (x, y)):
            found.add((max(x, 0.0) + 0.0, max(y, 0.0) + 0.0))  # no -0.0
    # three lines through one corner can yield copies a few ulps apart
    merged = []
    for v in sorted(found):
        if merged and math.dist(v, merged[-1]) <= ATOL * max(1.0, *v):
            continue
        merged.append(v)
    return merged


def pareto_vertices(region: RateRegion) -> list:
    """Corners not weakly dominated by any other corner, by increasing x."""
    verts = _vertices(region)
    keep = []
    for v in verts:
        dominated = any(u != v and u[0] >= v[0] and u[1] >= v[1] for u in verts)
        if not dominated:
            keep.append(v)
    return sorted(keep)


def region_boundary(region: RateRegion, n: int) -> list:
    """``n`` points along the Pareto boundary, sorted by the first rate.

    Points are spaced by arc length; interior corners replace the nearest
    sample so every corner appears in the trace.
    """
    if n < 2:
        raise MalformedInputError("need at least two boundary points")
    corners = pareto_vertices(region)
    if len(corners) == 1:
        return [corners[0]] * n

    pts = np.array(corners, dtype=np.float64)
    seg = np.hypot(*np.diff(pts, axis=0).T)
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    s = np.linspace(0.0, cum[-1], n)
    xs = np.interp(s, cum, pts[:, 0])
    ys = np.interp(s, cum, pts[:, 1])
    out = [(float(x), float(y)) for x, y in zip(xs, ys)]
    out[0], out[-1] = corners[0], corners[-1]
    for k in range(1, len(corners) - 1):
        nearest = int(np.argmin(np.abs(s - cum[k])))
        out[nearest] = corners[k]
    return sorted(out)
