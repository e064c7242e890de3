"""Linear programming bounds for spherical codes and sphere packings."""

__version__ = "0.1.0"

from .errors import LPBoundsError, ParameterError  # noqa: E402
from .orthopoly import PrecisionConfig, basis_for, gauss_rule  # noqa: E402
from .extremal import Extremal, levenshtein_binomial, levenshtein_code_bound, levenshtein_log_bound  # noqa: E402
from .geometry import comparison_bounds, derive_angles, packing_exponent, theta_star  # noqa: E402
from .density import SupportSpec, density_profile, mc_oracle  # noqa: E402
from .testfn import (CheckConfig, SweepConfig, asymptotic_constants, cz_l79_bound,  # noqa: E402
                     new_code_bound, new_packing_bound, table2_cell)
from .reports import BoundReport  # noqa: E402

__all__ = [
    "LPBoundsError", "ParameterError", "PrecisionConfig", "basis_for", "gauss_rule", "Extremal",
    "levenshtein_binomial", "levenshtein_code_bound", "levenshtein_log_bound", "comparison_bounds",
    "derive_angles", "packing_exponent", "theta_star", "SupportSpec", "density_profile", "mc_oracle",
    "CheckConfig", "SweepConfig", "asymptotic_constants", "cz_l79_bound", "new_code_bound",
    "new_packing_bound", "table2_cell", "BoundReport",
]
