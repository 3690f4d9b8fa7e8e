"""Tests for the DFT codebook and the user-side beam scan.

Covers:
- Property 8: DFT codebooks with L >= M have orthogonal rows
- Property 9: The gain ratio peaks at M and nulls at 2/M
- Property 10: The user picks the strongest beam, ties to the lowest index
- Property 41: The user cascade collapses to one steering product
- Property 42: Noisy scans agree with the noiseless best beam
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isac_beamscan.config import SystemConfig
from isac_beamscan.errors import InvalidSize
from isac_beamscan.model import (
    Phase,
    build_channels,
    steering_from_psi,
    transmit_beamformer,
    trial_rng,
)
from isac_beamscan.training import (
    beamforming_gain,
    dft_codebook,
    gain_ratio,
    simulate_user_scan,
)
from isac_beamscan.training.scan import beam_offset, select_best_beam, wrap_psi


class TestCodebook:
    """Beam grid layout."""

    def test_psi_grid(self):
        """Beam sines SHALL be -1 + (2i - 1) / L for i = 1..L."""
        cb = dft_codebook(4, 4)
        np.testing.assert_allclose(cb.psi_grid, [-0.75, -0.25, 0.25, 0.75])

    def test_shape_and_modulus(self):
        cb = dft_codebook(16, 32)
        assert cb.beams.shape == (16, 32)
        assert (cb.size, cb.n_elements) == (32, 16)
        np.testing.assert_allclose(np.abs(cb.beams), 1.0)

    def test_beam_is_one_based(self):
        """beam(i) SHALL return column i - 1."""
        cb = dft_codebook(8, 8)
        np.testing.assert_array_equal(cb.beam(1), cb.beams[:, 0])
        np.testing.assert_array_equal(cb.beam(8), cb.beams[:, 7])

    def test_angles_are_arcsines(self):
        cb = dft_codebook(8, 16)
        np.testing.assert_allclose(np.sin(cb.angles), cb.psi_grid)

    @pytest.mark.parametrize("m,n_beams", [(16, 8), (0, 4)])
    def test_undersized_codebook_rejected(self, m: int, n_beams: int):
        """L < M or M < 1 SHALL raise InvalidSize."""
        with pytest.raises(InvalidSize):
            dft_codebook(m, n_beams)


# **Feature: isac-beamscan, Property 8: DFT codebooks with L >= M have orthogonal rows**
@given(m=st.integers(min_value=1, max_value=32), extra=st.integers(min_value=0, max_value=32))
@settings(max_examples=100)
def test_codebook_covariance_is_scaled_identity(m: int, extra: int):
    """For any L >= M, Phi Phi^H SHALL equal L * I_M."""
    n_beams = m + extra
    beams = dft_codebook(m, n_beams).beams
    np.testing.assert_allclose(
        beams @ beams.conj().T, n_beams * np.eye(m), atol=1e-9 * n_beams
    )


# **Feature: isac-beamscan, Property 9: The gain ratio peaks at M and nulls at 2/M**
class TestGainRatio:
    """|sin(pi M delta / 2) / sin(pi delta / 2)|."""

    def test_peak_at_zero(self):
        """The ratio SHALL equal M at perfect alignment."""
        assert gain_ratio(0.0, 64) == 64.0

    def test_first_null(self):
        """The ratio SHALL vanish at delta = 2 / M."""
        assert gain_ratio(2.0 / 64, 64) < 1e-9

    def test_half_beam_offset(self):
        """At delta = 1 / M the ratio SHALL be 1 / sin(pi / (2 M))."""
        value = gain_ratio(1.0 / 64, 64)
        assert value == pytest.approx(1.0 / math.sin(math.pi / 128), rel=1e-12)
        assert value == pytest.approx(40.748, abs=1e-3)

    def test_monotone_on_main_lobe(self):
        """The ratio SHALL decrease strictly on (0, 2 / M)."""
        deltas = np.linspace(0.0, 2.0 / 64, 200)[:-1]
        values = gain_ratio(deltas, 64)
        assert np.all(np.diff(values) < 0)

    def test_vectorised(self):
        values = gain_ratio(np.array([0.0, 1.0 / 16]), 16)
        assert values.shape == (2,)
        assert values[0] == 16.0

    @given(
        delta=st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
        m=st.integers(min_value=1, max_value=128),
    )
    @settings(max_examples=100)
    def test_bounded_and_symmetric(self, delta: float, m: int):
        """The ratio SHALL lie in [0, M] and be even in delta."""
        value = gain_ratio(delta, m)
        assert 0.0 <= value <= m * (1 + 1e-12)
        assert gain_ratio(-delta, m) == pytest.approx(value, rel=1e-12, abs=1e-12)


class TestOffsets:
    """Sine-domain misalignment."""

    def test_wrap_into_principal_interval(self):
        np.testing.assert_allclose(wrap_psi([1.5, -1.5, 0.25]), [-0.5, 0.5, 0.25])

    def test_offset_wraps_around(self):
        """Directions near +1 and -1 SHALL be close in the sine domain."""
        assert beam_offset(0.99, -0.99) == pytest.approx(0.02)

    def test_offset_non_negative(self):
        assert beam_offset(0.1, 0.3) == pytest.approx(0.2)


# **Feature: isac-beamscan, Property 10: The user picks the strongest beam**
class TestUserScan:
    """Noiseless and noisy beam sweeps at the reference scenario."""

    def test_tie_goes_to_lowest_index(self):
        """Near-equal energies SHALL resolve to the lowest beam index."""
        assert select_best_beam(np.array([1.0, 3.0, 3.0 * (1 - 1e-15), 2.0])) == 2

    def test_noiseless_best_beam(self, reference_cfg: SystemConfig):
        """With the user at psi = 0.5, beams 48 and 49 tie and beam 48 SHALL win."""
        channels = build_channels(reference_cfg)
        cb = dft_codebook(64, 64)
        obs = simulate_user_scan(channels, cb, reference_cfg, rng=None)
        assert obs.best_index == 48
        assert obs.delta == pytest.approx(1.0 / 64)
        assert obs.y_user.shape == (64, 1)

    def test_realised_gain_matches_ratio(self, reference_cfg: SystemConfig):
        """|a^H(psi_IU) phi(48)| SHALL equal the gain ratio at delta = 1/64."""
        channels = build_channels(reference_cfg)
        cb = dft_codebook(64, 64)
        assert beamforming_gain(channels, cb, 48) == pytest.approx(
            gain_ratio(1.0 / 64, 64), rel=1e-9
        )

    def test_symbols_per_beam_repeat(self, reference_cfg: SystemConfig):
        """With K symbols per beam each row SHALL hold K identical noiseless samples."""
        cfg = reference_cfg.replace(symbols_per_beam=3)
        obs = simulate_user_scan(build_channels(cfg), dft_codebook(64, 64), cfg, rng=None)
        assert obs.y_user.shape == (64, 3)
        np.testing.assert_allclose(obs.y_user[:, 0], obs.y_user[:, 2])

    def test_noisy_scan_is_reproducible(self, reference_cfg: SystemConfig):
        """Equal (seed, trial, phase) SHALL give identical observations."""
        channels = build_channels(reference_cfg)
        cb = dft_codebook(64, 64)
        first = simulate_user_scan(channels, cb, reference_cfg, trial_rng(3, 0, Phase.USER_SCAN))
        second = simulate_user_scan(channels, cb, reference_cfg, trial_rng(3, 0, Phase.USER_SCAN))
        np.testing.assert_array_equal(first.y_user, second.y_user)
        assert first.best_index in (48, 49)

    def test_energies(self, reference_cfg: SystemConfig):
        obs = simulate_user_scan(
            build_channels(reference_cfg), dft_codebook(64, 64), reference_cfg, rng=None
        )
        assert obs.energies.shape == (64,)
        assert int(np.argmax(obs.energies)) + 1 in (48, 49)


# **Feature: isac-beamscan, Property 41: The user cascade collapses to one steering product**
class TestUserCascade:
    """h_u^H diag(phi) G w = sqrt(N) alpha_g conj(alpha_h) a_r^H(psi_IU) phi."""

    def test_identity_for_arbitrary_phases(self, reference_cfg: SystemConfig):
        """The identity SHALL hold for any unit-modulus IRS phase vector."""
        channels = build_channels(reference_cfg)
        gw = channels.g @ transmit_beamformer(reference_cfg)
        phis = np.exp(2j * np.pi * np.random.default_rng(5).random((64, 100)))
        a_iu = steering_from_psi(channels.psi_iu, 64).elements
        scale = math.sqrt(64) * channels.alpha_g.value * np.conj(channels.alpha_h.value)

        actual = (channels.h_u.conj() * gw) @ phis
        expected = scale * (a_iu.conj() @ phis)
        atol = 1e-12 * np.abs(expected).max()
        np.testing.assert_allclose(actual, expected, rtol=1e-9, atol=atol)

    def test_best_beam_amplitude(self, reference_cfg: SystemConfig):
        """|y_user| on the best beam SHALL be sqrt(N P_t) |alpha_g| |alpha_h| G(delta)."""
        channels = build_channels(reference_cfg)
        obs = simulate_user_scan(channels, dft_codebook(64, 64), reference_cfg, rng=None)
        expected = (
            math.sqrt(64 * reference_cfg.tx_power)
            * channels.alpha_g.magnitude
            * channels.alpha_h.magnitude
            * gain_ratio(obs.delta, 64)
        )
        assert abs(obs.y_user[obs.best_index - 1, 0]) == pytest.approx(expected, rel=1e-9)


# **Feature: isac-beamscan, Property 42: Noisy scans agree with the noiseless best beam**
def test_noisy_best_beam_matches_noiseless(reference_cfg: SystemConfig):
    """At the reference noise floor, 99% of seeded scans SHALL pick the noiseless best beam.

    The user sits at psi = 63/128, a quarter beam spacing from beam 48, so there is no tie.
    """
    cfg = reference_cfg.replace(theta_iu=math.asin(-1.0 / 128))
    channels = build_channels(cfg)
    cb = dft_codebook(64, 64)
    noiseless = simulate_user_scan(channels, cb, cfg, rng=None)
    assert noiseless.best_index == 48
    assert noiseless.delta == pytest.approx(1.0 / 128)

    hits = 0
    for t in range(1000):
        rng = trial_rng(cfg.rng_seed, t, Phase.USER_SCAN)
        hits += simulate_user_scan(channels, cb, cfg, rng).best_index == noiseless.best_index
    assert hits >= 990
