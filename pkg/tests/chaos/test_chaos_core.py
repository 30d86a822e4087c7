"""Unit tests for sboxlab/chaos/chaos_core.py."""

import numpy as np
import pytest

from sboxlab.chaos.chaos_core import (
    INITIAL_KEY_BYTES,
    EcmParams,
    MapKind,
    SeedMapParams,
    State2D,
    ecm_orbit,
    ecm_step,
    frac,
    iter_ecm,
    seed_from_key,
    seed_map_orbit,
    seed_map_step,
)
from sboxlab.errors import InvalidInputError


class TestSeedMapStep:
    def test_logistic_peak(self):
        assert seed_map_step(SeedMapParams(MapKind.LOGISTIC, mu=4.0), 0.5) == 1.0

    def test_logistic_origin_is_fixed(self):
        assert seed_map_step(SeedMapParams(MapKind.LOGISTIC, mu=4.0), 0.0) == 0.0

    def test_quadratic_at_zero(self):
        assert seed_map_step(SeedMapParams(MapKind.QUADRATIC, gamma1d=2.0), 0.0) == 2.0

    def test_rejects_state_outside_domain(self):
        with pytest.raises(InvalidInputError, match="state must lie"):
            seed_map_step(SeedMapParams(MapKind.LOGISTIC), 1.5)
        with pytest.raises(InvalidInputError):
            seed_map_step(SeedMapParams(MapKind.QUADRATIC), -2.5)

    def test_rejects_parameter_out_of_range(self):
        with pytest.raises(InvalidInputError, match="mu"):
            SeedMapParams(MapKind.LOGISTIC, mu=4.5)
        with pytest.raises(InvalidInputError, match="Quadratic"):
            SeedMapParams(MapKind.QUADRATIC, gamma1d=2.1)

    def test_orbit_stays_in_domain(self):
        params = SeedMapParams(MapKind.QUADRATIC, gamma1d=2.0)
        xs = seed_map_orbit(params, 0.1, 300, 2000)
        assert len(xs) == 2000
        assert all(-2.0 <= x <= 2.0 for x in xs)


class TestEcmParams:
    @pytest.mark.parametrize("gamma", [0.0, -1.0, 18.5, float("nan")])
    def test_rejects_bad_gamma(self, gamma):
        with pytest.raises(InvalidInputError):
            EcmParams(gamma, 7)

    @pytest.mark.parametrize("k", [2, 18, 7.0, True])
    def test_rejects_bad_k(self, k):
        with pytest.raises(InvalidInputError):
            EcmParams(5.0, k)

    def test_gains(self):
        p = EcmParams(1.0, 3)
        assert p.x_gain == 8.0
        assert p.y_gain == 27.0

    @pytest.mark.parametrize("x, y", [(1.0, 0.5), (0.5, -0.1), (float("inf"), 0.0)])
    def test_state_rejects_out_of_range(self, x, y):
        with pytest.raises(InvalidInputError):
            State2D(x, y)


class TestEcmStep:
    def test_sequential_coupling_uses_new_x(self):
        s = ecm_step(EcmParams(1.0, 3), State2D(0.5, 0.5))
        assert s == State2D(0.0, 0.5)

    def test_origin_maps_to_origin(self):
        assert ecm_step(EcmParams(1.0, 3), State2D(0.0, 0.0)) == State2D(0.0, 0.0)

    def test_reference_step(self, ecm_params, ecm_seed):
        s = ecm_step(ecm_params, ecm_seed)
        assert s.x == pytest.approx(0.91320589949270925, abs=1e-12)
        assert s.y == pytest.approx(0.95570405035005024, abs=1e-9)

    def test_negative_intermediate_wraps(self):
        # y - x'^2 < 0 here
        s = ecm_step(EcmParams(1.0, 3), State2D(0.1, 0.01))
        assert 0.0 <= s.y < 1.0

    def test_frac_never_returns_one(self):
        assert frac(-1e-20) == 0.0
        assert frac(2.75) == 0.75
        assert frac(-0.25) == 0.75


class TestEcmOrbit:
    def test_single_step_orbit(self, ecm_params, ecm_seed):
        orbit = ecm_orbit(ecm_params, ecm_seed, 0, 1)
        assert orbit.samples == (ecm_step(ecm_params, ecm_seed),)

    def test_transient_is_prefix_drop(self, ecm_params, ecm_seed):
        long = ecm_orbit(ecm_params, ecm_seed, 0, 860)
        short = ecm_orbit(ecm_params, ecm_seed, 300, 560)
        assert len(short) == 560
        assert short.transient_dropped == 300
        assert short.samples[0] == long.samples[300]
        assert short.samples == long.samples[300:]

    def test_deterministic(self, ecm_params, ecm_seed):
        assert ecm_orbit(ecm_params, ecm_seed, 300, 560) == ecm_orbit(
            ecm_params, ecm_seed, 300, 560
        )

    def test_fast_iterator_matches_steps(self, ecm_params, ecm_seed):
        orbit = ecm_orbit(ecm_params, ecm_seed, 10, 50)
        fast = iter_ecm(ecm_params, ecm_seed, 10)
        for s in orbit.samples:
            assert next(fast) == (s.x, s.y)

    def test_channels(self, ecm_params, ecm_seed):
        orbit = ecm_orbit(ecm_params, ecm_seed, 0, 5)
        assert orbit.channel("x") == [s.x for s in orbit.samples]
        with pytest.raises(InvalidInputError):
            orbit.channel("z")

    def test_rejects_bad_counts(self, ecm_params, ecm_seed):
        with pytest.raises(InvalidInputError):
            ecm_orbit(ecm_params, ecm_seed, -1, 5)
        with pytest.raises(InvalidInputError):
            ecm_orbit(ecm_params, ecm_seed, 0, 0)


class TestSeedFromKey:
    def test_all_zero_key_is_guarded(self):
        params, s0 = seed_from_key(bytes(32))
        assert s0.x > 0.0 and s0.y > 0.0
        assert params.k == 3
        assert params.gamma == 1.0

    def test_all_ones_key_in_range(self):
        params, s0 = seed_from_key(b"\xff" * 32)
        assert 0.0 < params.gamma <= 18.0
        assert 3 <= params.k <= 17
        assert s0.x < 1.0 and s0.y < 1.0

    def test_single_bit_flips_change_the_seed(self, sample_ik):
        reference = seed_from_key(sample_ik)
        for bit in range(8 * INITIAL_KEY_BYTES):
            flipped = bytearray(sample_ik)
            flipped[bit // 8] ^= 1 << (bit % 8)
            assert seed_from_key(bytes(flipped)) != reference, bit

    def test_random_keys_satisfy_invariants(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            params, s0 = seed_from_key(rng.bytes(32))
            assert 0.0 < params.gamma <= 18.0
            assert 3 <= params.k <= 17
            assert not s0.is_origin

    def test_wrong_length_rejected(self):
        with pytest.raises(InvalidInputError, match="32 bytes"):
            seed_from_key(bytes(31))
