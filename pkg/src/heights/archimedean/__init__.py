from .agm import (
    AgmInput,
    CorrectionLedger,
    LedgerEntry,
    agm_lambda,
    agm_sequences,
    lambda_infinity,
    log_max_one,
    on_egg,
    psi_infinity,
    reduce_to_agm_data,
    truncation_index,
)
from .base import AgmMethod, ArchimedeanMethod, SeriesMethod, get_archimedean_method
from .roots import Dyadic, RealCubic, largest_real_root, real_root_count
from .series import SeriesResult, log_phi_bound, psi_infinity_oracle_series, psi_infinity_series

__all__ = [
    "AgmInput",
    "AgmMethod",
    "ArchimedeanMethod",
    "CorrectionLedger",
    "Dyadic",
    "LedgerEntry",
    "RealCubic",
    "SeriesMethod",
    "SeriesResult",
    "agm_lambda",
    "agm_sequences",
    "get_archimedean_method",
    "lambda_infinity",
    "largest_real_root",
    "log_max_one",
    "log_phi_bound",
    "on_egg",
    "psi_infinity",
    "psi_infinity_oracle_series",
    "psi_infinity_series",
    "real_root_count",
    "reduce_to_agm_data",
    "truncation_index",
]
