"""DQ classical, quantum and private capacities of single-user channels."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .exceptions import MalformedInputError
from .multiuser import RateRegion, make_region
from .optimizer import GridSpec, search
from .phase_model import (
    AdditiveGaussian,
    Attenuation,
    ChannelModel,
    ClassicalNoise,
    Dephasing,
    ModulationScheme,
    PowerBudget,
    ThermalNoise,
    symmetric_scheme,
)
from .result import (
    BELOW_ONE_LEVEL,
    CLOSED_FORM,
    POWER_LIMITED,
    CapacityResult,
)


@dataclass(frozen=True)
class ThermalDecomposition:
    """Thermal channel as pure loss ``lambda_tilde`` followed by gain ``gain``."""

    lambda_tilde: float
    gain: float


def thermal_decomposition(channel: ThermalNoise) -> ThermalDecomposition:
    if not isinstance(channel, ThermalNoise):
        raise MalformedInputError("thermal decomposition needs a ThermalNoise channel")
    gain = (1.0 - channel.lam) * channel.n_e + 1.0
    return ThermalDecomposition(channel.lam / gain, gain)


def _as_thermal(channel: ChannelModel) -> ThermalNoise:
    if isinstance(channel, ThermalNoise):
        return channel
    if isinstance(channel, Attenuation):
        return ThermalNoise(channel.lam, 0.0)
    raise MalformedInputError(
        f"quantum capacity is only modelled for attenuation and thermal noise, "
        f"not {channel.tag}")


def _log_states(count: float, integer_levels: bool) -> tuple:
    """(clamped bits, raw bits) for an output state count."""
    raw = math.log2(count) if count > 0 else -math.inf
    if integer_levels and count > 0:
        # ceiling of a positive count is at least one level; the relative
        # nudge keeps a count like 8.000000000000002 at 8 levels
        return math.log2(math.ceil(count * (1.0 - 1e-12))), raw
    return max(0.0, raw), raw


def _closed_form(channel: ChannelModel, w: float):
    """Output state count and attaining scheme, or None without a closed form."""
    budget = PowerBudget(w)
    if isinstance(channel, Dephasing):
        # all signal squeezed into the noiseless P quadrature; exact within the
        # tile model while mu2 <= W, and kept noise-independent beyond that
        root = math.sqrt(w)
        return 2.0 * w, ModulationScheme(root, root, 1.0 / (2.0 * root), root)
    if isinstance(channel, ClassicalNoise):
        return w / max(0.5, channel.mu2), symmetric_scheme(budget)
    if isinstance(channel, AdditiveGaussian) and channel.sigma_r != channel.sigma_s:
        return None
    add = channel.as_additive()
    noise = (1.0 - add.lam) * add.sigma_r ** 2
    return add.lam * w / max(0.5, noise), symmetric_scheme(budget)


def classical_capacity(channel: ChannelModel, budget: PowerBudget,
                       integer_levels: bool = False,
                       grid: GridSpec = GridSpec()) -> CapacityResult:
    """DQ classical capacity in bits per channel use.

    Closed forms cover attenuation, thermal noise, classical noise, dephasing
    and any additive channel with equal quadrature noise. Additive channels
    with ``sigma_r != sigma_s`` go to the grid optimizer.
    """
    known = _closed_form(channel, budget.w)
    if known is None:
        found = search(channel, budget, grid)
        count = 2.0 ** found.raw_bits
        scheme, method = found.optimizer_scheme, found.method
    else:
        count, scheme = known
        method = CLOSED_FORM
    bits, raw = _log_states(count, integer_levels)
    flags = (BELOW_ONE_LEVEL,) if count < 1.0 else ()
    return CapacityResult(bits=bits, optimizer_scheme=scheme, method=method,
                          integer_levels=integer_levels, raw_bits=raw, flags=flags)


def environment_leakage(channel: ThermalNoise, scheme: ModulationScheme) -> tuple:
    """Bits reaching the two environment modes (``s1``, ``s2``), clamped at 0."""
    dec = thermal_decomposition(channel)
    spread = scheme.sigma_p * scheme.sigma_q
    s1 = 2.0 * (1.0 - channel.lam / dec.gain) * spread
    s2 = 2.0 * (dec.gain - 1.0) * spread / dec.gain
    return tuple(math.log2(x) if x > 1.0 else 0.0 for x in (s1, s2))


def min_quantum_power(lam: float) -> float:
    """Power above which the level counts behind the quantum rate are integers
    (order of magnitude; the threshold is asymptotic)."""
    return 1.0 / lam


def quantum_capacity(channel: ChannelModel, budget: PowerBudget) -> CapacityResult:
    """DQ quantum capacity, independent of power once above ~1/lambda.

    The environment learns the high-order ``s1`` bits; only output states it
    knows nothing about carry coherent information.
    """
    thermal = _as_thermal(channel)
    lam = thermal.lam
    dec = thermal_decomposition(thermal)
    leak = 1.0 - lam / dec.gain
    raw = math.inf if leak == 0.0 else math.log2(lam) - math.log2(leak)
    flags = []
    if raw < 0:
        flags.append(BELOW_ONE_LEVEL)
    if budget.w < min_quantum_power(lam):
        flags.append(POWER_LIMITED)
    return CapacityResult(bits=max(0.0, raw), optimizer_scheme=symmetric_scheme(budget),
                          method=CLOSED_FORM, kind="quantum", raw_bits=raw,
                          flags=tuple(flags))


def private_capacity(channel: ChannelModel, budget: PowerBudget) -> CapacityResult:
    """Identical to the quantum capacity: the tile model cannot tell them apart."""
    return replace(quantum_capacity(channel, budget), kind="private")


def cq_tradeoff_region(channel: Attenuation, budget: PowerBudget) -> RateRegion:
    """Simultaneous classical/quantum rates ``(C, Q)`` over pure loss.

    The high-order bits seen by the environment stay classical-only. The
    remaining bits carry either kind, hence ``Q <= Q_max`` and ``C + Q <= C_max``.
    """
    if not isinstance(channel, Attenuation):
        raise MalformedInputError("trade-off region is defined for attenuation only")
    if not 0.0 < channel.lam < 1.0:
        raise MalformedInputError("trade-off region needs 0 < lambda < 1")
    c_max = classical_capacity(channel, budget).bits
    q_max = quantum_capacity(channel, budget).bits
    # below ~1/(2(1-lambda)) power the quantum rate cannot exceed the classical one
    return make_region(("C", "Q"), {
        (0, 1): min(q_max, c_max),
        (1, 1): c_max,
    })
