"""Pytest configuration, Hypothesis profiles and shared scenarios."""

import pytest
from hypothesis import settings

from isac_beamscan.config import SystemConfig, load_config, parse_config

# Register Hypothesis profiles
settings.register_profile("ci", max_examples=100)
settings.register_profile("dev", max_examples=20)

# Load dev profile by default, CI can override via --hypothesis-profile=ci
settings.load_profile("dev")


SMALL_SCENARIO = """\
n_bs_antennas = 8
n_res = 16
n_ses = 4
codebook_size = 16
symbols_per_beam = 1
tx_power_dbm = 20
noise_power_dbm = -120
carrier_freq_ghz = 28
coherence_time_symbols = 1000
d_bs_irs_m = 30
d_irs_user_m = 10
d_irs_target_m = 5
theta_bi_deg = -30
theta_it_deg = 40
theta_iu_deg = 0
rcs_dbsm = 7
rng_seed = 7
mc_trials = 20
"""


@pytest.fixture(scope="session")
def anyio_backend() -> str:
    """Use asyncio as the async backend for pytest-asyncio."""
    return "asyncio"


@pytest.fixture(scope="session")
def reference_cfg() -> SystemConfig:
    """The packaged reference scenario (M=64, M_s=8, N=64, L=64, 20 dBm)."""
    return load_config()


@pytest.fixture
def small_scenario_text() -> str:
    return SMALL_SCENARIO


@pytest.fixture
def small_cfg() -> SystemConfig:
    """A scaled-down scenario that keeps Monte Carlo and pipeline tests fast."""
    return parse_config(SMALL_SCENARIO)


@pytest.fixture
def small_scenario_file(tmp_path, small_scenario_text):
    path = tmp_path / "small.conf"
    path.write_text(small_scenario_text, encoding="utf-8")
    return path
