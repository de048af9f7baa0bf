"""
Fiber Capability.

Single-fiber arithmetic for --lambda (dot digits, constant term first) in
F_{p^deg}: trace, kind, P(T) and the unit root mod p^M.
"""

from unitroot.capabilities.base import BaseCapability
from unitroot.config import RunConfig
from unitroot.context_classes import FiberContext
from unitroot.errors import ErrorClassification, ErrorSeverity, FeatureDisabled, classify_error
from unitroot.ffield import canonical_context
from unitroot.legendre import fiber_data
from unitroot.logger import get_logger
from unitroot.trace_store import TraceStore

logger = get_logger("cli")


class FiberCapability(BaseCapability):
    """One Legendre fiber over the canonical F_{p^deg}."""

    name = "fiber"
    description = "Trace of Frobenius, classification, P(T) and unit root of one fiber"
    provides = ["FIBER"]
    requires = ["lam"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> FiberContext:
        ctx = canonical_context(config.p, config.deg)
        lam = ctx.parse(config.lam)
        logger.info(f"🔬 Fiber lambda={lam} over F_{ctx.q}")
        data = fiber_data(ctx, lam, config.prec, analytic=config.analytic_unit_root)
        return FiberContext(config=config.echo(), fiber=data.to_dict())

    @staticmethod
    def classify_error(exc: Exception, context: dict) -> ErrorClassification:
        if isinstance(exc, FeatureDisabled):
            return ErrorClassification(
                severity=ErrorSeverity.USAGE,
                user_message=f"{exc}; enable it with --analytic-unit-root or in config.yml",
                metadata={"type": "feature_disabled"},
            )
        return classify_error(exc)
