from abc import ABC, abstractmethod
from typing import Dict, Type

from ...arith.bigreal import BigReal
from ...model.points import RationalPoint
from ...model.weierstrass import WeierstrassModel
from .agm import log_max_one, psi_infinity
from .series import psi_infinity_series


class ArchimedeanMethod(ABC):
    """Abstract base class for the ways of computing Ψ∞."""

    def __init__(self):
        self.name = self.__class__.__name__

    @abstractmethod
    def psi_infinity(self, model: WeierstrassModel, point: RationalPoint, bits: int) -> BigReal:
        """
        Compute Ψ∞(P).

        Args:
            model: Integral Weierstrass model
            point: Affine point with 2P != O
            bits: Absolute accuracy wanted

        Returns:
            Ψ∞(P) as a BigReal
        """
        pass

    def local_height(self, model: WeierstrassModel, point: RationalPoint, bits: int) -> BigReal:
        """λ̂∞(P) = log max(1, |x(P)|) - Ψ∞(P)."""
        return log_max_one(point.x, bits + 2) - self.psi_infinity(model, point, bits + 2)


class AgmMethod(ArchimedeanMethod):
    """Quadratically convergent AGM / 2-isogeny method (the production path)."""

    def psi_infinity(self, model: WeierstrassModel, point: RationalPoint, bits: int) -> BigReal:
        return psi_infinity(model, point, bits)


class SeriesMethod(ArchimedeanMethod):
    """Partial sums of the defining series; linear convergence, for cross-checks."""

    def __init__(self, terms: int = 40):
        super().__init__()
        self.terms = terms

    def psi_infinity(self, model: WeierstrassModel, point: RationalPoint, bits: int) -> BigReal:
        return psi_infinity_series(model, point, self.terms, bits).value


METHODS: Dict[str, Type[ArchimedeanMethod]] = {
    "agm": AgmMethod,
    "series": SeriesMethod,
}


def get_archimedean_method(name: str, series_terms: int = 40) -> ArchimedeanMethod:
    """
    Look up an archimedean method by its command-line name.

    Args:
        name: "agm" or "series"
        series_terms: Number of terms used by the series method

    Returns:
        An ArchimedeanMethod instance
    """
    if name not in METHODS:
        raise ValueError(f"Unknown archimedean method '{name}', expected one of {sorted(METHODS)}")
    if name == "series":
        return SeriesMethod(series_terms)
    return METHODS[name]()
