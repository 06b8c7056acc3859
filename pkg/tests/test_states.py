"""Tests for the benchmark input-state constructors."""

import math

import numpy as np
import pytest

from fringelab import (
    PhysicsError,
    build_state,
    dual_fock,
    full_fisher,
    generator_variance,
    hb_state,
    noon_state,
    snl_state,
)

from oracles import bs_matrix_oracle, fisher_sum_oracle

SQRT2 = math.sqrt(2.0)


class TestDualFock:
    def test_six_photons(self):
        state = dual_fock(6)
        assert state.amplitudes[3] == 1.0
        assert np.count_nonzero(state.amplitudes) == 1

    def test_two_photons(self):
        state = dual_fock(2)
        assert state.amplitudes[1] == 1.0

    @pytest.mark.parametrize("total", [1, 3, 5, 0])
    def test_odd_or_empty_rejected(self, total):
        with pytest.raises(PhysicsError, match="even"):
            dual_fock(total)

    def test_negative_total_rejected(self):
        with pytest.raises(PhysicsError, match="non-negative"):
            dual_fock(-2)


class TestHbState:
    def test_six_photon_expansion(self):
        expected = np.array(
            [-math.sqrt(5), 0, math.sqrt(3), 0, -math.sqrt(3), 0, math.sqrt(5)]
        ) / 4.0
        np.testing.assert_allclose(hb_state(6).amplitudes, expected, atol=1e-12)

    def test_two_photon_expansion(self):
        np.testing.assert_allclose(
            hb_state(2).amplitudes, [-1 / SQRT2, 0, 1 / SQRT2], atol=1e-12
        )

    def test_four_photon_expansion(self):
        expected = [math.sqrt(6) / 4, 0, -0.5, 0, math.sqrt(6) / 4]
        np.testing.assert_allclose(hb_state(4).amplitudes, expected, atol=1e-12)

    @pytest.mark.parametrize("total", range(2, 13, 2))
    def test_matches_oracle_including_zero_pattern(self, total):
        column = bs_matrix_oracle(total)[:, total // 2]
        amps = hb_state(total).amplitudes
        np.testing.assert_allclose(amps.real, column, atol=1e-12)
        # Exact zeros land exactly where the expansion says they do.
        np.testing.assert_array_equal(amps == 0.0, column == 0.0)

    def test_odd_rejected(self):
        with pytest.raises(PhysicsError):
            hb_state(5)


class TestNoonState:
    def test_six_photon_amplitudes(self):
        amps = noon_state(6).amplitudes
        assert amps[0] == pytest.approx(1 / SQRT2)
        assert amps[6] == pytest.approx(1 / SQRT2)
        assert np.count_nonzero(amps) == 2

    def test_single_photon(self):
        np.testing.assert_allclose(
            noon_state(1).amplitudes, [1 / SQRT2, 1 / SQRT2], atol=1e-15
        )

    @pytest.mark.parametrize("total", range(1, 13))
    def test_generator_variance_is_heisenberg(self, total):
        assert generator_variance(noon_state(total)) == pytest.approx(
            total**2, abs=1e-10
        )

    def test_empty_rejected(self):
        with pytest.raises(PhysicsError):
            noon_state(0)


class TestSnlState:
    @pytest.mark.parametrize("total", range(1, 13))
    def test_generator_variance_is_shot_noise(self, total):
        assert generator_variance(snl_state(total)) == pytest.approx(
            total, abs=1e-10
        )

    def test_single_photon_gauge_sign(self):
        np.testing.assert_allclose(
            snl_state(1).amplitudes, [1 / SQRT2, 1 / SQRT2], atol=1e-15
        )

    def test_binomial_path_distribution(self):
        probs = np.abs(snl_state(4).amplitudes) ** 2
        expected = [math.comb(4, k) / 16 for k in range(5)]
        np.testing.assert_allclose(probs, expected, atol=1e-12)

    def test_full_fisher_matches_sum_oracle(self):
        state = snl_state(4)
        value = full_fisher(state, 0.3)
        assert value == pytest.approx(4.0, abs=1e-8)
        oracle = fisher_sum_oracle(4, state.amplitudes, 0.3)
        assert value == pytest.approx(oracle, abs=1e-5)

    def test_empty_rejected(self):
        with pytest.raises(PhysicsError):
            snl_state(0)


class TestRealGauge:
    @pytest.mark.parametrize("total", [2, 4, 6, 8, 10, 12])
    def test_families_have_real_amplitudes(self, total):
        for state in (hb_state(total), noon_state(total), snl_state(total)):
            assert np.max(np.abs(state.amplitudes.imag)) < 1e-12


class TestBuildState:
    @pytest.mark.parametrize(
        "kind,builder",
        [("dual", dual_fock), ("hb", hb_state), ("noon", noon_state), ("snl", snl_state)],
    )
    def test_lookup(self, kind, builder):
        np.testing.assert_array_equal(
            build_state(kind, 6).amplitudes, builder(6).amplitudes
        )

    def test_unknown_kind(self):
        with pytest.raises(PhysicsError, match="unknown state kind"):
            build_state("ghz", 6)
