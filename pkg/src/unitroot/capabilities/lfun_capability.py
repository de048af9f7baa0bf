"""
L-function and Fredholm Determinant Capabilities.

lfun      L(k, T) as an Euler product over the closed points of X
fredholm  D(k, T) = prod_{j < M} L(k - 2 - 2j, p^j T)
"""

from unitroot.capabilities.base import BaseCapability
from unitroot.config import RunConfig
from unitroot.context_classes import SeriesContext
from unitroot.lfun import get_engine
from unitroot.logger import get_logger
from unitroot.trace_store import TraceStore

logger = get_logger("cli")


def _series_context(config: RunConfig, store: TraceStore, obj: str) -> SeriesContext:
    engine = get_engine(config.p, config.tdeg, config.prec, store)
    series = engine.series(obj, config.k)
    logger.info(f"📈 {obj}(k={config.k}) = {series}")
    return SeriesContext(
        config=config.echo(),
        metadata={"object": obj, "k": config.k, "p": config.p},
        series=series.to_dict(),
    )


class LFunctionCapability(BaseCapability):
    name = "lfun"
    description = "Unit-root L-function L(k, T) mod (p^M, T^(N+1))"
    provides = ["SERIES"]
    requires = ["k"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> SeriesContext:
        return _series_context(config, store, "L")


class FredholmCapability(BaseCapability):
    name = "fredholm"
    description = "Fredholm determinant D(k, T) mod (p^M, T^(N+1)) via the product formula"
    provides = ["SERIES"]
    requires = ["k"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> SeriesContext:
        return _series_context(config, store, "D")
