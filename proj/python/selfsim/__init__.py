"""Numerical renormalization-group runs for self-similar PDE asymptotics."""

from ._selfsim import (
    Config,
    Report,
    SelfsimError,
    absorption_alpha_theory,
    cole_wagner_alpha,
    compare,
    dipole_profile,
    erfcx,
    estimate_costs,
    gaussian_phi,
    kdv_direct_simulation,
    li_qi_constants,
    load_config,
    parse_config,
    run,
    sweep,
    table_a1,
    whitham_g,
    write_run_outputs,
)

__all__ = [
    "Config",
    "Report",
    "SelfsimError",
    "absorption_alpha_theory",
    "cole_wagner_alpha",
    "compare",
    "dipole_profile",
    "erfcx",
    "estimate_costs",
    "gaussian_phi",
    "kdv_direct_simulation",
    "li_qi_constants",
    "load_config",
    "parse_config",
    "run",
    "sweep",
    "table_a1",
    "whitham_g",
    "write_run_outputs",
]
__version__ = "0.1.0"
