import math

import numpy as np
import pytest

from vdcset import blocks
from vdcset import combinatorics as cb
from vdcset import measures as ms


def test_params_ledger_names_violations():
    good = blocks.BlockParams(2, 64, 0)
    assert good.violations() == []
    bad = blocks.BlockParams(2, 8, 0)
    names = bad.violations()
    assert "Q > 4*ell" in names
    with pytest.raises(blocks.BlockParamsError, match="Q > 4\\*ell"):
        bad.validate()
    odd = blocks.BlockParams(2, 63, 0)
    assert "Q even" in odd.violations()


def test_block_polynomial_coefficients():
    p, r, s = blocks.block_polynomials(blocks.BlockParams(2, 64, 0))
    # low-band coefficient values of p
    assert p.coeff(0) == pytest.approx(1 - math.cos(2 * math.pi * 2 / 64), abs=1e-12)
    assert p.coeff(1) == pytest.approx(1 - math.cos(2 * math.pi * 1 / 64), abs=1e-12)
    assert p.coeff(2) == 0.0  # edge value vanishes
    # spike coefficients of r
    assert r.coeff(2) == pytest.approx(1.0)
    assert r.coeff(30) == pytest.approx(-0.5)
    assert r.coeff(34) == pytest.approx(-0.5)
    assert r.coeff(3) == 0.0
    # grid positivity of the assembled polynomial
    from vdcset import trigpoly as tp

    assert tp.grid_min(s, 4096) >= -1e-9


def test_block_mass_formula():
    # the sampled mass excess equals 16*ell*(1 - cos(2 pi ell / Q)) exactly
    for ell, q in ((2, 64), (3, 128)):
        sigma = blocks.build_block(blocks.BlockParams(ell, q, 0))
        predicted = 1.0 + 16 * ell * (1 - math.cos(2 * math.pi * ell / q))
        assert sigma.mass() == pytest.approx(predicted, abs=1e-9)


@pytest.mark.parametrize("ell", [2, 3])
@pytest.mark.parametrize("q", [64, 128])
@pytest.mark.parametrize("k", [0, 1])
def test_block_bullets_full_matrix(ell, q, k):
    params = blocks.BlockParams(ell, q, k)
    sigma = blocks.build_block(params)
    assert sigma.order == q ** (k + 1)
    res = blocks.block_residuals(sigma, params)
    assert res["mass_excess"] <= 1e-9
    assert res["plus_band_residual"] < 1e-9
    assert res["minus_band_residual"] < 1e-9
    assert res["min_weight"] >= -1e-12


def test_block_spot_frequencies():
    sigma = blocks.build_block(blocks.BlockParams(2, 64, 0))
    assert sigma.fourier(1) == pytest.approx(1.0, abs=1e-9)
    assert sigma.fourier(32) == pytest.approx(-1.0, abs=1e-9)
    sigma1 = blocks.build_block(blocks.BlockParams(2, 64, 1))
    assert sigma1.mass() <= 1 + 320 * 8 / 4096 + 1e-9


def test_block_budget_guard(monkeypatch):
    monkeypatch.setenv("VDC_ATOM_BUDGET", "1000")
    with pytest.raises(blocks.AtomBudgetError):
        blocks.build_block(blocks.BlockParams(2, 64, 1))
    monkeypatch.delenv("VDC_ATOM_BUDGET")
    assert blocks.atom_budget() == blocks.DEFAULT_ATOM_BUDGET


def test_witness_params_ledger():
    wp = blocks.WitnessParams(1, 0.01, 64, 2)
    assert wp.canonical_p == math.floor(64 * math.log(2)) + 1 == 45
    assert wp.relaxed
    wp.validate()
    with pytest.raises(blocks.BlockParamsError, match="Q/2 \\+ 8\\*j < Q"):
        blocks.WitnessParams(1, 0.01, 16, 1).validate()


def test_witness_depth_budget():
    with pytest.raises(blocks.AtomBudgetError) as err:
        blocks.build_witness(blocks.WitnessParams(1, 0.01, 64, 45))
    assert err.value.max_feasible_p == 4


@pytest.mark.parametrize("p", [1, 2])
def test_witness_normalisation_and_zeros(p):
    mu, sigma = blocks.build_witness(blocks.WitnessParams(1, 0.01, 64, p))
    assert mu.order == 64**p
    assert mu.mass() == pytest.approx(1.0, abs=1e-12)
    assert mu.weights[0] > 0
    members = blocks.digit_pattern_members(1, 64, p)
    assert len(members) == p * 8 * 7 ** (p - 1)
    for y in members:
        assert abs(mu.fourier(y)) < 1e-9


def test_witness_product_spectrum():
    mu, sigma = blocks.build_witness(blocks.WitnessParams(1, 0.01, 64, 2))
    parts = [blocks.build_block(blocks.BlockParams(8, 64, k)) for k in range(2)]
    rng = np.random.default_rng(0)
    for y in rng.integers(0, 64**2, size=100):
        y = int(y)
        digits = cb.int_to_digits(y, 64, 2)
        partial, predicted = 0, 1.0 + 0.0j
        for k in range(2):
            partial += digits[k] * 64**k
            predicted *= parts[k].fourier(partial)
        assert abs(sigma.fourier(y) - predicted) < 1e-9


def test_digit_pattern_members_small():
    assert blocks.digit_pattern_members(1, 64, 1) == list(range(32, 40))
    members = blocks.digit_pattern_members(1, 64, 2)
    assert len(members) == 112
    assert members == sorted(members)
    for y in members:
        digits = cb.int_to_digits(y, 64, 2)
        marked = [i for i, d in enumerate(digits) if 32 <= d < 40]
        assert len(marked) == 1
        other = digits[1 - marked[0]]
        assert 1 <= other < 8


def test_zero_set_basics():
    assert blocks.zero_set(ms.uniform(8), 7, 1e-9) == set(range(1, 8))
    assert blocks.zero_set(ms.dirac(8, 0), 8, 1e-9) == set()
    with pytest.raises(ValueError):
        blocks.zero_set(ms.uniform(8), 9)


def test_zero_set_contains_all_patterns():
    mu, _ = blocks.build_witness(blocks.WitnessParams(1, 0.01, 64, 2))
    zeros = blocks.zero_set(mu, 4095, 1e-9)
    assert set(blocks.digit_pattern_members(1, 64, 2)) <= zeros


def test_block_transform_identity_every_frequency():
    # independent cross-check at all frequencies, not just the bands:
    # sigma_hat(m) = cos(2 pi m / N) + s_hat(m) + s_hat(m - N)
    params = blocks.BlockParams(2, 64, 0)
    _, _, s = blocks.block_polynomials(params)
    sigma = blocks.build_block(params)
    n_total = params.order
    for m in range(n_total):
        predicted = (
            math.cos(2 * math.pi * m / n_total)
            + s.coeff(m).real
            + s.coeff(m - n_total).real
        )
        assert sigma.fourier(m).real == pytest.approx(predicted, abs=1e-9)
        assert abs(sigma.fourier(m).imag) < 1e-9
