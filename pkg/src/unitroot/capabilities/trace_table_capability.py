"""
Trace Table Capability.

Computes (or finds) the trace table of X for one prime up to --max-deg and
leaves it in the cache directory for the engine to reuse.
"""

from unitroot.capabilities.base import BaseCapability
from unitroot.config import RunConfig
from unitroot.context_classes import TraceTableContext
from unitroot.logger import get_logger
from unitroot.trace_store import TraceStore

logger = get_logger("cli")


class TraceTableCapability(BaseCapability):
    """Build or refresh the cached trace table for (p, max-degree)."""

    name = "trace-table"
    description = "Compute Frobenius traces of all ordinary closed points of X up to a degree"
    provides = ["TRACE_TABLE"]
    requires = []

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> TraceTableContext:
        table = store.get_table(config.p, config.max_deg)
        path = str(store.path_for(config.p, config.max_deg)) if store.cache_dir else None
        context = TraceTableContext(
            config=config.echo(),
            p=table.p,
            max_degree=table.max_degree,
            rows_per_degree=table.counts(),
            moduli_hash=table.moduli_hash,
            path=path,
            text=table.to_text(),
        )
        logger.info(f"✅ Trace table ready: {context.get_summary()}")
        return context
