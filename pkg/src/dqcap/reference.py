"""Known gaussian-model capacities and bounds, for gap reporting."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .phase_model import PowerBudget, _check_lambda, _check_nonneg

LN2 = math.log(2.0)

EXACT_CAPACITY = "exact_capacity"
LOWER_BOUND = "lower_bound"
ACHIEVABLE_HOLEVO = "achievable_holevo"
REFERENCE_KINDS = (EXACT_CAPACITY, LOWER_BOUND, ACHIEVABLE_HOLEVO)


def g(x: float) -> float:
    """Entropy in nats of a thermal state with mean photon number ``x``.

    Evaluated as ``ln(1+x) + x*ln(1+1/x)``, which avoids the cancellation in
    ``(x+1)ln(x+1) - x ln x`` at large ``x``.
    """
    if not x >= 0.0:
        raise ValueError(f"g is defined for x >= 0, got {x!r}")
    if x < 1e-12:
        return 0.0
    if math.isinf(x):
        return math.inf
    return math.log1p(x) + x * math.log1p(1.0 / x)


def attenuation_capacity_exact(lam: float, budget: PowerBudget) -> float:
    _check_lambda(lam)
    return g(lam * (budget.w - 0.5)) / LN2


def classical_noise_lower_bound(mu2: float, budget: PowerBudget) -> float:
    # achieved by displaced vacuum states
    _check_nonneg("mu2", mu2)
    return (g(budget.w - 0.5 + mu2) - g(mu2)) / LN2


def dephasing_holevo(mu2: float, budget: PowerBudget) -> float:
    """Holevo rate of maximally squeezed pure states through Q-dephasing."""
    _check_nonneg("mu2", mu2)
    w = budget.w
    root = math.sqrt(1.0 + mu2 / (2.0 * w))
    return (g((2.0 * w * root - 1.0) / 2.0) - g((root - 1.0) / 2.0)) / LN2


def attenuation_quantum_exact(lam: float) -> float:
    """Quantum capacity of pure loss; ``math.inf`` for the identity channel."""
    _check_lambda(lam)
    if lam == 1.0:
        return math.inf
    return max(0.0, math.log2(lam) - math.log2(1.0 - lam))


@dataclass(frozen=True)
class GapReport:
    dq_bits: float
    reference_bits: float
    gap_bits: float
    reference_kind: str

    def as_dict(self) -> dict:
        return {
            "dq_bits": self.dq_bits,
            "reference_bits": self.reference_bits,
            "gap_bits": self.gap_bits,
            "reference_kind": self.reference_kind,
        }


def gap_report(dq, ref_bits: float, kind: str) -> GapReport:
    """Signed gap ``dq - reference``. ``dq`` is a CapacityResult or plain bits."""
    if kind not in REFERENCE_KINDS:
        raise ValueError(f"unknown reference kind {kind!r}")
    dq_bits = float(getattr(dq, "bits", dq))
    if not (math.isfinite(dq_bits) and math.isfinite(ref_bits)):
        raise ValueError("gap is only defined between finite rates")
    return GapReport(dq_bits, float(ref_bits), dq_bits - ref_bits, kind)
