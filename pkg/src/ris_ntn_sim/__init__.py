"""Simulator and phase-shift optimizer for a relay-surface-assisted satellite downlink."""

__version__ = "0.1.0"

from .channel_model import (
    KA_BAND_HZ,
    SPEED_OF_LIGHT,
    FadingSpec,
    LinkGeometry,
    build_geometry,
    fspl_amplitude,
    generate_channels,
    path_loss_db,
)
from .config import ConfigError, SimConfig, format_config, parse_config
from .errors import (
    ConstraintViolated,
    DimensionMismatch,
    InvalidAltitudes,
    NonPositiveInput,
    NonPositivePower,
    SimulatorError,
    SingularInput,
    SweepError,
    TooLarge,
    WrongDimension,
)
from .link_metrics import (
    LinkReport,
    RfConfig,
    dbm_to_watts,
    energy_efficiency,
    link_report,
    noise_power_dbm,
    noise_power_watts,
    rate_bps,
    snr_db,
    snr_linear,
    watts_to_dbm,
)
from .phase_optimizer import (
    OptimizeResult,
    brute_force_fc2,
    brute_force_sc,
    optimize,
    optimize_fc,
    optimize_gc,
    optimize_sc,
)
from .ris_core import (
    UNIT_TOLERANCE,
    Architecture,
    ChannelSet,
    PhaseShiftMatrix,
    effective_channel,
    project_to_unitary,
    validate,
)
from .sweep import CSV_HEADER, SweepRecord, derive_trial_seed, emit_csv, run_sweep

__all__ = [
    "__version__",
    "Architecture", "PhaseShiftMatrix", "ChannelSet", "UNIT_TOLERANCE",
    "validate", "effective_channel", "project_to_unitary",
    "SPEED_OF_LIGHT", "KA_BAND_HZ", "LinkGeometry", "FadingSpec",
    "fspl_amplitude", "path_loss_db", "build_geometry", "generate_channels",
    "OptimizeResult", "optimize", "optimize_sc", "optimize_fc", "optimize_gc",
    "brute_force_sc", "brute_force_fc2",
    "RfConfig", "LinkReport", "dbm_to_watts", "watts_to_dbm",
    "noise_power_dbm", "noise_power_watts", "snr_linear", "snr_db",
    "rate_bps", "energy_efficiency", "link_report",
    "SimConfig", "parse_config", "format_config", "ConfigError",
    "SweepRecord", "run_sweep", "emit_csv", "derive_trial_seed", "CSV_HEADER",
    "SimulatorError", "DimensionMismatch", "ConstraintViolated", "SingularInput",
    "NonPositiveInput", "InvalidAltitudes", "TooLarge", "WrongDimension",
    "NonPositivePower", "SweepError",
]
