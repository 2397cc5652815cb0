"""Relativistic spin dynamics of two-particle states under Lorentz boosts.

Computes how a boost transforms the reduced spin density matrix of two
massive spin-1/2 particles carrying Gaussian momentum distributions, via
momentum-averaged Wigner rotations, and sweeps entanglement measures over
the boost rapidity.
"""

__version__ = "0.1.0"

from .channel import ChannelBuilder, SpinChannel, TransferOperator, boost_spin_state, boost_spin_state_direct
from .errors import ConfigError, NumericalError, OrbitError, UnknownPresetError
from .kinematics import (
    BoostSpec,
    boost_matrix,
    boost_momentum,
    energy,
    rotation_angle,
    rotation_axis,
    wigner_angle,
    wigner_angle_from_composition,
    wigner_unitaries,
    wigner_unitary,
)
from .momentum import (
    GaussianLobe,
    ModelKind,
    MomentumModel,
    QuadratureGrid,
    build_grid,
    make_model,
    model_amplitude,
    normalize,
)
from .scenarios import (
    DEFAULT_TWR_MOMENTA,
    OrbitPoint,
    RotationType,
    ScenarioConfig,
    orbit,
    preset,
    preset_names,
    preset_summary,
    rotation_type,
    twr_samples,
    twr_surface,
    zero_crossings,
)
from .spin import (
    BELL_T_VECTORS,
    bell_state,
    concurrence,
    correlation_data,
    is_bell_diagonal,
    in_separable_octahedron,
    t_vector,
    validate_density_matrix,
)

__all__ = [
    "__version__",
    "BoostSpec",
    "energy",
    "boost_matrix",
    "boost_momentum",
    "wigner_angle",
    "wigner_angle_from_composition",
    "wigner_unitary",
    "wigner_unitaries",
    "rotation_angle",
    "rotation_axis",
    "GaussianLobe",
    "ModelKind",
    "MomentumModel",
    "QuadratureGrid",
    "make_model",
    "build_grid",
    "normalize",
    "model_amplitude",
    "TransferOperator",
    "SpinChannel",
    "ChannelBuilder",
    "boost_spin_state",
    "boost_spin_state_direct",
    "BELL_T_VECTORS",
    "bell_state",
    "concurrence",
    "correlation_data",
    "t_vector",
    "is_bell_diagonal",
    "in_separable_octahedron",
    "validate_density_matrix",
    "ScenarioConfig",
    "OrbitPoint",
    "RotationType",
    "preset",
    "preset_names",
    "preset_summary",
    "rotation_type",
    "orbit",
    "zero_crossings",
    "twr_surface",
    "twr_samples",
    "DEFAULT_TWR_MOMENTA",
    "ConfigError",
    "UnknownPresetError",
    "NumericalError",
    "OrbitError",
]
