"""
Identity Check Capabilities.

congruence   L (or D) at k1 = k2 mod (p-1)p^m agree mod p^(m+1)
thm22-check  D(k+2, T) = L(k, T) D(k, pT)

Both are proven statements: a FAIL is reported with status FAIL (exit 1),
never as a probe finding.
"""

from unitroot.capabilities.base import BaseCapability
from unitroot.config import RunConfig
from unitroot.context_classes import CheckContext
from unitroot.lfun import congruence_check, theorem22_check
from unitroot.logger import get_logger
from unitroot.trace_store import TraceStore

logger = get_logger("cli")


class CongruenceCapability(BaseCapability):
    name = "congruence"
    description = "Check L(k1) = L(k2) (or D) mod p^(m+1) for k1 = k2 mod (p-1)p^m"
    provides = ["CHECK"]
    requires = ["k1", "k2", "m"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> CheckContext:
        report = congruence_check(
            config.p, config.k1, config.k2, config.m, config.tdeg, config.prec,
            on=config.on, store=store,
        )
        status = "PASS" if report.passed else "FAIL"
        logger.info(f"{'✅' if report.passed else '❌'} congruence {config.on}: {status}")
        return CheckContext(config=config.echo(), status=status, check="congruence", report=report.to_dict())


class Theorem22Capability(BaseCapability):
    name = "thm22-check"
    description = "Check D(k+2, T) = L(k, T) D(k, pT) mod (p^M, T^(N+1))"
    provides = ["CHECK"]
    requires = ["k"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> CheckContext:
        report = theorem22_check(config.p, config.k, config.tdeg, config.prec, store)
        status = "PASS" if report.passed else "FAIL"
        logger.info(f"{'✅' if report.passed else '❌'} thm22 k={config.k}: {status}")
        return CheckContext(config=config.echo(), status=status, check="thm22", report=report.to_dict())
