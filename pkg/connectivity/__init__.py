from connectivity.amplify import ec_amplified
from connectivity.config import CutbenchSettings, EcConfig, load_config
from connectivity.cut_query import ec_linear, ec_loglog, min_degree_by_queries
from connectivity.mdcp import ec_mdcp
from connectivity.outcome import Diagnostics, EcOutcome
from connectivity.sequential import ec_sequential

__all__ = [
    "CutbenchSettings",
    "Diagnostics",
    "EcConfig",
    "EcOutcome",
    "ec_amplified",
    "ec_linear",
    "ec_loglog",
    "ec_mdcp",
    "ec_sequential",
    "load_config",
    "min_degree_by_queries",
]
