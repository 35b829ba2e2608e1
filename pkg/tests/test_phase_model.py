import math

import pytest

from dqcap import (
    AdditiveGaussian,
    Attenuation,
    ClassicalNoise,
    Dephasing,
    MalformedInputError,
    ModulationScheme,
    PowerBudget,
    ThermalNoise,
    effective_tile,
    state_count,
    validate_scheme,
)
from dqcap.exceptions import InvalidPowerError

H = math.sqrt(0.5)


def test_validate_pass():
    s = ModulationScheme(math.sqrt(8), math.sqrt(8), H, H)
    assert validate_scheme(s, PowerBudget(8)) == []


def test_validate_uncertainty():
    s = ModulationScheme(1, 1, 0.5, 0.5)
    assert validate_scheme(s, PowerBudget(1)) == ["uncertainty"]


def test_validate_power():
    s = ModulationScheme(3, 3, H, H)
    assert validate_scheme(s, PowerBudget(4)) == ["power"]


def test_validate_fit():
    s = ModulationScheme(1, 1, 2, 0.3)
    assert "fit" in validate_scheme(s, PowerBudget(4))


@pytest.mark.parametrize("bad", [
    ModulationScheme(1, 1, 0.0, 1),
    ModulationScheme(1, 1, -1, 1),
    ModulationScheme(math.nan, 1, 1, 1),
    ModulationScheme(1, 1, 1, math.inf),
])
def test_validate_malformed(bad):
    with pytest.raises(MalformedInputError):
        validate_scheme(bad, PowerBudget(4))


def test_power_budget_floor():
    PowerBudget(0.5)
    with pytest.raises(InvalidPowerError):
        PowerBudget(0.49)


@pytest.mark.parametrize("make", [
    lambda: Attenuation(0.0), lambda: Attenuation(1.5), lambda: ThermalNoise(0.5, -1),
    lambda: ClassicalNoise(-0.1), lambda: Dephasing(math.nan),
    lambda: AdditiveGaussian(0.5, 0.1, 1.0),
])
def test_channel_validation(make):
    with pytest.raises(MalformedInputError):
        make()


def test_attenuation_and_thermal_expand_consistently():
    assert Attenuation(0.3).as_additive() == AdditiveGaussian(0.3, H, H)
    assert ThermalNoise(0.3, 0.0).as_additive() == Attenuation(0.3).as_additive()
    assert ThermalNoise(0.3, 2.0).as_additive().sigma_r == pytest.approx(math.sqrt(2.5))


def test_tile_attenuation_half_floors_to_uncertainty():
    t = effective_tile(Attenuation(0.5), ModulationScheme(math.sqrt(8), math.sqrt(8), H, H))
    # raw maxima 0.5 x 0.5 lifted to area 1/2
    assert t.dp == pytest.approx(H, abs=1e-15)
    assert t.dq == pytest.approx(H, abs=1e-15)


def test_tile_classical_noise():
    t = effective_tile(ClassicalNoise(2), ModulationScheme(4, 4, H, H))
    assert t.dp == pytest.approx(math.sqrt(2))
    assert t.dq == pytest.approx(math.sqrt(2))
    assert t.area == pytest.approx(2.0)


def test_tile_identity():
    s = ModulationScheme(3, 2, 1.5, 0.8)
    t = effective_tile(Attenuation(1.0), s)
    assert (t.dp, t.dq) == (1.5, 0.8)


def test_tile_dephasing_leaves_p():
    s = ModulationScheme(2, 2, 0.25, 2.0)
    t = effective_tile(Dephasing(9.0), s)
    assert t.dp == 0.25 and t.dq == 3.0


def test_tile_floor_keeps_aspect():
    # raw 0.2 x 0.8 -> scaled by sqrt(0.5/0.16)
    t = effective_tile(Dephasing(0.64), ModulationScheme(1, 1, 0.2, 0.5))
    assert t.area == pytest.approx(0.5)
    assert t.dq / t.dp == pytest.approx(0.8 / 0.2)


def test_state_count():
    assert state_count(ModulationScheme(math.sqrt(8), math.sqrt(8), H, H)) == pytest.approx(16)
    assert state_count(ModulationScheme(0.9, 0.7, 0.9, 0.7)) == 1.0
    w = 13.0
    assert state_count(ModulationScheme(math.sqrt(w), math.sqrt(w), H, H)) == pytest.approx(2 * w)
