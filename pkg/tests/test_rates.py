"""Tests for STAS and OTAS achievable rates.

Covers:
- Property 11: Scan overhead scales the rate by (T - tau - tau_s) / T
- Property 12: The delta-averaged rate rises then falls with the sweep length
- Property 13: The averaged rate does not depend on the quadrature order
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from isac_beamscan.config import SystemConfig
from isac_beamscan.errors import DurationOverflow, InvalidSize
from isac_beamscan.model import build_channels
from isac_beamscan.training import (
    ScanProtocol,
    average_rate_over_delta,
    dft_codebook,
    gain_ratio,
    link_snr,
    otas_rate,
    scan_rate,
    simulate_user_scan,
    stas_rate,
)
from isac_beamscan.training.rates import rate_points

DOUBLING_GRID = (64, 128, 256, 512)
FINE_GRID = (64, 72, 80, 96, 128, 256, 512)


class TestLinkSnr:
    """Receive SNR before the IRS beamforming gain."""

    def test_reference_value(self, reference_cfg: SystemConfig):
        """At the reference scenario the aligned SNR M^2 * snr SHALL be about 153.5."""
        assert link_snr(reference_cfg) * 64**2 == pytest.approx(153.5, rel=5e-3)

    def test_scales_with_power(self, reference_cfg: SystemConfig):
        """Ten times the transmit power SHALL give ten times the SNR."""
        louder = reference_cfg.replace(tx_power=reference_cfg.tx_power * 10)
        assert link_snr(louder) == pytest.approx(10 * link_snr(reference_cfg))


# **Feature: isac-beamscan, Property 11: Scan overhead scales the rate**
class TestProtocolRates:
    """STAS and OTAS at fixed misalignment."""

    def test_stas_closed_form(self, reference_cfg: SystemConfig):
        """R = (T - tau) / T * log2(1 + snr * G(delta)^2)."""
        expected = (1000 - 64) / 1000 * math.log2(1 + link_snr(reference_cfg) * 64**2)
        assert stas_rate(reference_cfg, 0.0, 64) == pytest.approx(expected, rel=1e-12)

    def test_stas_is_otas_without_sensing_scan(self, reference_cfg: SystemConfig):
        assert stas_rate(reference_cfg, 0.01, 128) == otas_rate(reference_cfg, 0.01, 128, 0)

    @given(
        delta=st.floats(min_value=0.0, max_value=1.0 / 64),
        tau=st.integers(min_value=1, max_value=499),
    )
    @settings(max_examples=100)
    def test_stas_over_otas_ratio(self, reference_cfg: SystemConfig, delta: float, tau: int):
        """For any delta and tau with 2 tau < T, STAS / OTAS SHALL equal (T - tau) / (T - 2 tau)."""
        ratio = stas_rate(reference_cfg, delta, tau) / otas_rate(reference_cfg, delta, tau, tau)
        assert ratio == pytest.approx((1000 - tau) / (1000 - 2 * tau), rel=1e-12)

    def test_misalignment_lowers_rate(self, reference_cfg: SystemConfig):
        """The rate at delta = 1/L SHALL be below the rate at delta = 0."""
        assert stas_rate(reference_cfg, 1.0 / 64, 64) < stas_rate(reference_cfg, 0.0, 64)

    def test_rate_at_null_is_zero(self, reference_cfg: SystemConfig):
        """At the first null of the array pattern the rate SHALL vanish."""
        assert stas_rate(reference_cfg, 2.0 / 64, 64) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("tau,tau_s", [(1001, 0), (600, 500), (-1, 0), (10, -1)])
    def test_duration_overflow(self, reference_cfg: SystemConfig, tau: int, tau_s: int):
        """Scans that do not fit in [0, T] SHALL raise DurationOverflow."""
        with pytest.raises(DurationOverflow):
            otas_rate(reference_cfg, 0.0, tau, tau_s)

    def test_full_coherence_time_gives_zero(self, reference_cfg: SystemConfig):
        """tau + tau_s = T SHALL leave no time for data."""
        assert otas_rate(reference_cfg, 0.0, 500, 500) == 0.0

    def test_scan_rate_uses_selected_beam(self, reference_cfg: SystemConfig):
        """scan_rate SHALL evaluate STAS at the misalignment the scan produced."""
        obs = simulate_user_scan(
            build_channels(reference_cfg), dft_codebook(64, 64), reference_cfg, rng=None
        )
        expected = stas_rate(reference_cfg, 1.0 / 64, 64)
        assert scan_rate(reference_cfg, obs, 64) == pytest.approx(expected)


# **Feature: isac-beamscan, Property 12: The averaged rate rises then falls with L**
class TestAveragedRate:
    """Rate averaged over delta ~ U(0, 1/L)."""

    def test_reference_value(self, reference_cfg: SystemConfig):
        """At L = M the averaged STAS rate SHALL be about 6.42 bps/Hz."""
        assert average_rate_over_delta(reference_cfg, 64) == pytest.approx(6.4185, abs=5e-3)

    def test_between_extremes(self, reference_cfg: SystemConfig):
        """The average SHALL lie between the rates at delta = 1/L and delta = 0."""
        for n_beams in DOUBLING_GRID:
            tau = n_beams
            low = stas_rate(reference_cfg, 1.0 / n_beams, tau)
            high = stas_rate(reference_cfg, 0.0, tau)
            assert low < average_rate_over_delta(reference_cfg, n_beams) < high

    def test_aligned_rate_falls_on_doubling_grid(self, reference_cfg: SystemConfig):
        """The rate at delta = 0 SHALL decrease strictly as L doubles."""
        rates = [stas_rate(reference_cfg, 0.0, n) for n in DOUBLING_GRID]
        assert all(a > b for a, b in zip(rates, rates[1:]))

    def test_interior_maximum_on_fine_grid(self, reference_cfg: SystemConfig):
        """Finer beams first pay off, then the scan overhead dominates:
        the maximum SHALL lie strictly inside the sweep.
        """
        rates = [average_rate_over_delta(reference_cfg, n) for n in FINE_GRID]
        best = int(np.argmax(rates))
        assert 0 < best < len(FINE_GRID) - 1
        assert rates[0] < rates[best]
        assert rates[-1] < rates[best]

    def test_otas_average_ratio(self, reference_cfg: SystemConfig):
        """The averaged STAS / OTAS ratio SHALL be (T - tau) / (T - 2 tau)."""
        for n_beams in (64, 128, 256):
            ratio = average_rate_over_delta(reference_cfg, n_beams) / average_rate_over_delta(
                reference_cfg, n_beams, tau_s=n_beams
            )
            assert ratio == pytest.approx((1000 - n_beams) / (1000 - 2 * n_beams), rel=1e-12)

    def test_otas_overflow_at_512(self, reference_cfg: SystemConfig):
        """2 * 512 > T SHALL raise DurationOverflow for OTAS."""
        with pytest.raises(DurationOverflow):
            average_rate_over_delta(reference_cfg, 512, tau_s=512)

    def test_codebook_smaller_than_array(self, reference_cfg: SystemConfig):
        with pytest.raises(InvalidSize):
            average_rate_over_delta(reference_cfg, 32)

    def test_rate_points(self, reference_cfg: SystemConfig):
        points = rate_points(reference_cfg, 128, tau_s=128)
        assert [p.delta for p in points] == [0.0, 1.0 / 128, None]
        assert all(p.protocol is ScanProtocol.OTAS and p.tau == 128 for p in points)
        assert points[1].rate < points[2].rate < points[0].rate


# **Feature: isac-beamscan, Property 13: Quadrature order does not matter**
class TestQuadrature:
    """Gauss-Legendre averaging against adaptive quadrature."""

    @pytest.mark.parametrize("n_beams", [64, 128, 512])
    def test_node_count_invariance(self, reference_cfg: SystemConfig, n_beams: int):
        """32, 64 and 128 nodes SHALL agree to 1e-9."""
        ref = average_rate_over_delta(reference_cfg, n_beams, nodes=64)
        for nodes in (32, 128):
            assert average_rate_over_delta(reference_cfg, n_beams, nodes=nodes) == pytest.approx(
                ref, rel=1e-9
            )

    def test_matches_adaptive_quadrature(self, reference_cfg: SystemConfig):
        n_beams = 128
        snr = link_snr(reference_cfg)

        def integrand(d: float) -> float:
            return math.log2(1 + snr * gain_ratio(d, 64) ** 2)

        integral, _ = quad(integrand, 0.0, 1.0 / n_beams, epsabs=1e-13, epsrel=1e-12)
        expected = n_beams * integral * (1000 - n_beams) / 1000
        assert average_rate_over_delta(reference_cfg, n_beams) == pytest.approx(expected, rel=1e-9)
