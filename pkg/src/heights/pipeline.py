from typing import Optional
import asyncio
import logging

from ..arith.bigreal import BigReal
from ..model.points import RationalPoint, require_on_curve, torsion_order
from ..model.weierstrass import WeierstrassModel
from ..utils.config import Config
from .archimedean.base import get_archimedean_method
from .height import HeightBreakdown, assemble_breakdown, needs_archimedean
from .nonarch_global import PsiFiniteOptions, psi_finite

SELF_CHECK_BITS = 64


class HeightPipeline:
    """Orchestrates the finite and archimedean parts of a canonical height."""

    def __init__(self, config: Config, options: Optional[PsiFiniteOptions] = None,
                 method_name: Optional[str] = None):
        """
        Initialize the height pipeline.

        Args:
            config: Configuration object
            options: Overrides the Ψ^f switches from the configuration
            method_name: Overrides the archimedean method from the configuration
        """
        self.config = config
        self.logger = self._setup_logger()

        # Initialize components
        self.options = options or config.psi_finite_config.to_options()
        self.method = get_archimedean_method(
            method_name or config.archimedean_config.method,
            series_terms=config.archimedean_config.series_terms
        )

    def _setup_logger(self) -> logging.Logger:
        """Set up logging configuration."""
        logger = logging.getLogger(__name__)
        level = getattr(logging, self.config.logging_config.level, logging.INFO)
        logger.setLevel(level)

        if not logger.handlers:
            # Create console handler
            handler = logging.StreamHandler()
            handler.setLevel(level)

            # Create formatter
            formatter = logging.Formatter(self.config.logging_config.format)
            handler.setFormatter(formatter)

            # Add handler to logger
            logger.addHandler(handler)
            logger.propagate = False

        return logger

    async def compute(
        self,
        model: WeierstrassModel,
        point: RationalPoint,
        bits: int
    ) -> Optional[HeightBreakdown]:
        """
        Compute ĥ(P), running Ψ^f and Ψ∞ concurrently.

        Args:
            model: Integral Weierstrass model
            point: Point on the model
            bits: Requested absolute precision

        Returns:
            HeightBreakdown, or None if the computation failed
        """
        try:
            require_on_curve(model, point)
            order = torsion_order(model, point)
            work = bits + self.config.precision_config.guard_bits
            self.logger.info(
                f"Computing height of {point} on {model} to {bits} bits "
                f"with {self.method.name}"
            )

            loop = asyncio.get_running_loop()
            finite_task = loop.run_in_executor(None, psi_finite, point, model, self.options)
            if needs_archimedean(point, order):
                arch_task = loop.run_in_executor(
                    None, self.method.psi_infinity, model, point, work
                )
                finite, archimedean = await asyncio.gather(finite_task, arch_task)
                if self.config.precision_config.self_check:
                    await self._self_check(model, point, work, archimedean)
            else:
                finite = await finite_task
                archimedean = BigReal.zero(work) if point.is_infinity else None

            breakdown = assemble_breakdown(point, bits, order, finite, archimedean)
            self.logger.info("Height computed successfully")
            return breakdown

        except Exception as e:
            self.logger.error(f"Error computing height: {str(e)}")
            return None

    async def _self_check(
        self,
        model: WeierstrassModel,
        point: RationalPoint,
        work: int,
        archimedean: BigReal
    ) -> bool:
        """Recompute Ψ∞ with extra bits and warn when the two values disagree."""
        loop = asyncio.get_running_loop()
        check = await loop.run_in_executor(
            None, self.method.psi_infinity, model, point, work + SELF_CHECK_BITS
        )
        difference = abs(check - archimedean)
        if not difference.is_zero() and difference.mag > -work + 1:
            self.logger.warning(
                f"Self-check mismatch for Psi_inf: difference {float(difference):.3e}"
            )
            return False
        return True
