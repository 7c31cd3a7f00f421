"""Metro access broadband planning: optical reach, service feasibility,
per-Gb energy footprint, micro-registration and best-practice pricing."""

from .catalog import (
    GBPS,
    LEGACY_HD_AVC,
    EncodingProfile,
    SplitPlan,
    TechnologySpec,
    builtin_catalog,
    builtin_encodings,
    max_supported_split,
    reach_km,
)
from .config import ModelData, load_config
from .energy import (
    EnergyCoefficients,
    PowerParams,
    builtin_coefficients,
    burst_energy_per_gb,
    derive_coefficients,
    energy_matrix,
    energy_per_gb,
    per_video_second,
)
from .errors import (
    BelowBaseline,
    ConfigError,
    MissingParams,
    NotReachable,
    ResolutionMismatch,
    UnknownIdentifier,
    Unsupported,
)
from .feasibility import (
    Enhancements,
    Scenario,
    aggregate_demand,
    builtin_scenarios,
    check_feasibility,
    enhancement_summary,
    feasibility_matrix,
    per_home_demand,
    select_encoding,
)

__version__ = "0.1.0"
