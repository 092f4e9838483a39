from .height import (
    HeightBreakdown,
    canonical_height,
    canonical_height_limit_oracle,
    height_pairing,
    is_torsion,
    local_height_archimedean,
    local_height_nonarch,
    naive_height,
    silverman_normalized,
)
from .nonarch_global import FormalLogSum, PsiFiniteOptions, eval_log_sum, psi_finite
from .nonarch_local import LocalMu, epsilon_at, mu_at, mu_oracle

# HeightPipeline lives in .pipeline and is imported from there; it depends on
# utils.config, which itself imports this package.

__all__ = [
    "FormalLogSum",
    "HeightBreakdown",
    "LocalMu",
    "PsiFiniteOptions",
    "canonical_height",
    "canonical_height_limit_oracle",
    "epsilon_at",
    "eval_log_sum",
    "height_pairing",
    "is_torsion",
    "local_height_archimedean",
    "local_height_nonarch",
    "mu_at",
    "mu_oracle",
    "naive_height",
    "psi_finite",
    "silverman_normalized",
]
