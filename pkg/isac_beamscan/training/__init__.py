"""IRS beam training: DFT codebook, user-side scan and achievable rates."""

from isac_beamscan.training.codebook import Codebook, dft_codebook
from isac_beamscan.training.rates import (
    RatePoint,
    ScanProtocol,
    average_rate_over_delta,
    link_snr,
    otas_rate,
    scan_rate,
    stas_rate,
)
from isac_beamscan.training.scan import (
    ScanObservation,
    beamforming_gain,
    gain_ratio,
    simulate_user_scan,
)

__all__ = [
    "Codebook",
    "RatePoint",
    "ScanObservation",
    "ScanProtocol",
    "average_rate_over_delta",
    "beamforming_gain",
    "dft_codebook",
    "gain_ratio",
    "link_snr",
    "otas_rate",
    "scan_rate",
    "simulate_user_scan",
    "stas_rate",
]
