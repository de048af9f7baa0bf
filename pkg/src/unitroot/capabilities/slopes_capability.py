"""
Slopes Capability.

Certified Newton polygon of D(k, T) with the degree functions d_s(k) and
d'_s(k). --out csv emits the polygon as plot-ready rows.
"""

from unitroot.capabilities.base import BaseCapability
from unitroot.config import RunConfig
from unitroot.context_classes import DegreeTableContext
from unitroot.logger import get_logger
from unitroot.slopes import d_polygon, degree_table_d, l_table_from_d_tables, table_from_polygon
from unitroot.trace_store import TraceStore

logger = get_logger("cli")


class SlopesCapability(BaseCapability):
    name = "slopes"
    description = "Certified slopes of D(k, T) and the degree tables d_s(k), d'_s(k)"
    provides = ["DEGREE_TABLE"]
    requires = ["k"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> DegreeTableContext:
        p, k, N, M = config.p, config.k, config.tdeg, config.prec
        polygon = d_polygon(p, k, N, M, store)
        d_table = table_from_polygon(polygon, k)
        l_table = l_table_from_d_tables(degree_table_d(p, k + 2, N, M, store), d_table)
        logger.info(f"📐 k={k}: {len(polygon.degrees())} certified slopes below {polygon.certified_bound}")
        return DegreeTableContext(
            config=config.echo(),
            polygon=polygon.to_dict(),
            d_table=d_table.to_dict(),
            l_table=l_table.to_dict(),
            polygon_csv=polygon.to_csv(),
        )
