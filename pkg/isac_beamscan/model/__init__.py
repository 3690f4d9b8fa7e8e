"""Array geometry, LoS channel construction and seeded noise streams."""

from isac_beamscan.model.channel import (
    ChannelSet,
    PathGain,
    build_channels,
    path_gain_one_way,
    path_gain_roundtrip,
    transmit_beamformer,
)
from isac_beamscan.model.geometry import (
    SpatialFrequency,
    SteeringVector,
    derivative_norm_sq,
    effective_derivative,
    element_offsets,
    endfire_cos,
    steering_derivative,
    steering_from_psi,
    steering_matrix,
    steering_vector,
    zeta_matrix,
)
from isac_beamscan.model.noise import Phase, complex_awgn, trial_rng

__all__ = [
    "ChannelSet",
    "PathGain",
    "Phase",
    "SpatialFrequency",
    "SteeringVector",
    "build_channels",
    "complex_awgn",
    "derivative_norm_sq",
    "effective_derivative",
    "element_offsets",
    "endfire_cos",
    "path_gain_one_way",
    "path_gain_roundtrip",
    "steering_derivative",
    "steering_from_psi",
    "steering_matrix",
    "steering_vector",
    "transmit_beamformer",
    "trial_rng",
    "zeta_matrix",
]
