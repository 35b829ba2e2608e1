import math

import numpy as np
import pytest

from dqcap import (
    AdditiveGaussian,
    Attenuation,
    ClassicalNoise,
    Dephasing,
    GridSpec,
    MalformedInputError,
    PowerBudget,
    ThermalNoise,
    classical_capacity,
    maximize_classical,
    refine,
    validate_scheme,
)
from dqcap import kernels
from dqcap.optimizer import evaluate_grid, initial_grid, objective, search
from dqcap.phase_model import ModulationScheme

W = PowerBudget
SMALL = GridSpec(65, 65)


def test_attenuation_grid_hits_closed_form():
    r = maximize_classical(Attenuation(0.5), W(8))
    assert r.bits == pytest.approx(3.0, abs=1e-9)
    s = r.optimizer_scheme
    assert s.sigma_p == pytest.approx(math.sqrt(8)) and s.sigma_q == pytest.approx(math.sqrt(8))
    assert s.delta_p == pytest.approx(math.sqrt(0.5)) and s.delta_q == pytest.approx(math.sqrt(0.5))


def test_dephasing_grid():
    w, mu2 = 8.0, 1.0
    r = maximize_classical(Dephasing(mu2), W(w))
    assert r.bits == pytest.approx(4.0, abs=1e-9)
    # every Q tile between the noise and the spread is optimal
    assert math.sqrt(mu2) <= r.optimizer_scheme.delta_q <= math.sqrt(w) * (1 + 1e-12)
    # the squeezed scheme reported by the closed form is on the optimal set
    squeezed = ModulationScheme(math.sqrt(w), math.sqrt(w), 1 / (2 * math.sqrt(w)), math.sqrt(w))
    assert objective(Dephasing(mu2), squeezed) == pytest.approx(r.bits, abs=1e-12)


def test_classical_noise_grid():
    assert maximize_classical(ClassicalNoise(2), W(16)).bits == pytest.approx(3.0, abs=1e-9)


def test_refine_keeps_incumbent():
    ch, b = AdditiveGaussian(0.6, 0.8, 2.5), W(12)
    coarse = maximize_classical(ch, b, SMALL)
    one = refine(ch, b, coarse, 0.5, 1, SMALL)
    assert one.raw_bits >= coarse.raw_bits
    assert refine(ch, b, coarse, 0.5, 0, SMALL) is coarse


def test_refine_monotone_over_rounds():
    ch, b = AdditiveGaussian(0.45, 0.9, 4.0), W(30)
    coarse = maximize_classical(ch, b, SMALL)
    values = [refine(ch, b, coarse, 0.5, r, SMALL).raw_bits for r in range(5)]
    assert all(b2 >= b1 for b1, b2 in zip(values, values[1:]))


@pytest.mark.parametrize("ch,w", [
    (Attenuation(0.3), 20.0), (ClassicalNoise(3.0), 40.0),
    (Dephasing(2.0), 10.0), (ThermalNoise(0.7, 2.0), 15.0),
])
def test_refine_converges_to_closed_form(ch, w):
    r = search(ch, W(w), rounds=3)
    assert r.bits == pytest.approx(classical_capacity(ch, W(w)).bits, abs=1e-6)


def test_refine_arguments():
    coarse = maximize_classical(Attenuation(0.5), W(2), SMALL)
    with pytest.raises(MalformedInputError):
        refine(Attenuation(0.5), W(2), coarse, 1.5, 1, SMALL)
    with pytest.raises(MalformedInputError):
        refine(Attenuation(0.5), W(2), coarse, 0.5, -1, SMALL)


def test_grid_spec_guards():
    with pytest.raises(MalformedInputError):
        maximize_classical(Attenuation(0.5), W(8), GridSpec(1, 10))
    with pytest.raises(MalformedInputError):
        maximize_classical(Attenuation(0.5), W(8), GridSpec(9, 9, aspect_range=5.0))


def test_returned_scheme_is_feasible():
    rng = np.random.default_rng(7)
    for _ in range(20):
        lam = rng.uniform(0.05, 1.0)
        ch = AdditiveGaussian(lam, rng.uniform(0.71, 5), rng.uniform(0.71, 5))
        b = W(rng.uniform(0.5, 200))
        r = search(ch, b, SMALL, rounds=2)
        assert validate_scheme(r.optimizer_scheme, b) == []


def test_grid_mirror_symmetry():
    b = W(9.0)
    theta, sp, sq, la = initial_grid(b, GridSpec(33, 41))
    assert np.array_equal(sp[::-1], sq)
    assert np.array_equal(la[::-1], -la)
    for ch in (Attenuation(0.4), ClassicalNoise(1.3), ThermalNoise(0.6, 2.0)):
        v = evaluate_grid(ch, sp, sq, la)
        assert np.array_equal(v, v[::-1, ::-1])
        mid = v[len(theta) // 2]
        assert np.array_equal(mid, mid[::-1])


def test_kernel_agrees_with_scalar_objective():
    b = W(5.0)
    ch = AdditiveGaussian(0.55, 1.1, 2.2)
    theta, sp, sq, la = initial_grid(b, GridSpec(9, 11))
    v = evaluate_grid(ch, sp, sq, la)
    half = math.sqrt(0.5)
    for i in range(len(sp)):
        for j in range(len(la)):
            s = ModulationScheme(sp[i], sq[i],
                                 half * math.exp(la[j] / 2), half * math.exp(-la[j] / 2))
            if validate_scheme(s, b):
                assert v[i, j] == -np.inf
            else:
                assert v[i, j] == pytest.approx(objective(ch, s), abs=1e-12)


@pytest.mark.skipif("cython" not in kernels.available_backends(),
                    reason="compiled kernel not built")
def test_backends_agree():
    backends = kernels.available_backends()
    b = W(25.0)
    theta, sp, sq, la = initial_grid(b, GridSpec())
    for ch in (AdditiveGaussian(0.3, 2.0, 0.8), Dephasing(4.0), ClassicalNoise(0.2)):
        vc = evaluate_grid(ch, sp, sq, la, backends["cython"])
        vp = evaluate_grid(ch, sp, sq, la, backends["python"])
        assert np.array_equal(np.isinf(vc), np.isinf(vp))
        ok = np.isfinite(vc)
        assert np.allclose(vc[ok], vp[ok], rtol=0, atol=1e-12)
        rc = search(ch, b, GridSpec(65, 65), backend=backends["cython"])
        rp = search(ch, b, GridSpec(65, 65), backend=backends["python"])
        assert rc.bits == pytest.approx(rp.bits, abs=1e-12)


def test_area_half_never_worse_than_area_one():
    rng = np.random.default_rng(11)
    for _ in range(200):
        ch = AdditiveGaussian(rng.uniform(0.01, 1), rng.uniform(0.71, 6), rng.uniform(0.71, 6))
        dp = rng.uniform(0.3, 3.0)
        big = ModulationScheme(5, 5, dp, 1.0 / dp)
        small = ModulationScheme(5, 5, dp / math.sqrt(2), 1.0 / dp / math.sqrt(2))
        assert objective(ch, small) >= objective(ch, big) - 1e-12
