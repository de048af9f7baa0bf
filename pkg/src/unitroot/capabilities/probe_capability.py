"""
Conjecture Probe Capabilities.

gm-probe    degree functions across weights congruent mod (p-1)p^m
denom-scan  denominators of certified slopes of D and L
avg-bound   average slope density up to A (--smax), empirical c_p

Probes report witnesses as findings (exit 2). Only proven identities abort.
"""

from unitroot.capabilities.base import BaseCapability
from unitroot.config import RunConfig
from unitroot.context_classes import ProbeContext
from unitroot.errors import (
    ErrorClassification,
    ErrorSeverity,
    InsufficientCertification,
    MissingParameter,
    classify_error,
)
from unitroot.logger import get_logger
from unitroot.slopes import (
    ProbeReport,
    average_bound_scan,
    denominator_scan,
    empirical_m,
    gm_probe,
)
from unitroot.trace_store import TraceStore

logger = get_logger("cli")


def _probe_context(config: RunConfig, report: ProbeReport) -> ProbeContext:
    status = "PASS" if report.passed else "FINDINGS"
    logger.info(f"📋 {report.probe}: {len(report.findings)} findings")
    return ProbeContext(
        config=config.echo(),
        status=status,
        probe=report.probe,
        params=report.params,
        findings=report.findings,
        summary=report.summary,
    )


class _ProbeCapability(BaseCapability):
    provides = ["PROBE_REPORT"]

    @staticmethod
    def classify_error(exc: Exception, context: dict) -> ErrorClassification:
        if isinstance(exc, InsufficientCertification):
            return ErrorClassification(
                severity=ErrorSeverity.DATA,
                user_message=f"{exc}; raise --prec/--tdeg or lower --smax",
                metadata={"type": "insufficient_certification"},
            )
        return classify_error(exc)


class GMProbeCapability(_ProbeCapability):
    name = "gm-probe"
    description = "Compare d_s and d'_s up to s_max across weights congruent mod (p-1)p^m"
    requires = ["smax", "m", "weights"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> ProbeContext:
        p, N, M = config.p, config.tdeg, config.prec
        report = gm_probe(p, config.slope_bound, config.m, config.weights, N, M, store)
        if report.summary.get("pairs"):
            try:
                report.summary["empirical_m"] = empirical_m(
                    p, config.slope_bound, config.weights, config.m, N, M, store
                )
            except InsufficientCertification as exc:
                logger.warning(f"⚠️  empirical m skipped: {exc}")
                report.summary["empirical_m"] = None
        return _probe_context(config, report)


class DenominatorScanCapability(_ProbeCapability):
    name = "denom-scan"
    description = "Denominators of certified slopes of D(k, T) and L(k, T) over a weight range"
    requires = ["weights"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> ProbeContext:
        report = denominator_scan(config.p, config.weights, config.tdeg, config.prec, store)
        return _probe_context(config, report)


class AverageBoundCapability(_ProbeCapability):
    name = "avg-bound"
    description = "Average of d_s(k) over s <= A and the empirical uniform constant"
    requires = ["smax"]

    @staticmethod
    def execute(config: RunConfig, store: TraceStore) -> ProbeContext:
        if config.weights is not None:
            weights = config.weights
        elif config.k is not None:
            weights = [config.k]
        else:
            raise MissingParameter("--weights or --k is required for avg-bound")
        report = average_bound_scan(
            config.p, weights, config.slope_bound, config.tdeg, config.prec, store
        )
        return _probe_context(config, report)
