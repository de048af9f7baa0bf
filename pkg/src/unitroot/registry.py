"""
Workbench Capability Registry.

Maps every CLI command to the capability class that runs it. Classes are
imported lazily from their module path, so `unitroot fiber` never pays for
importing the probe machinery.

━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
CAPABILITIES REGISTERED:
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

  - trace-table: Build/refresh the cached trace table
  - fiber: One Legendre fiber
  - lfun / fredholm: L(k, T) and D(k, T)
  - congruence / thm22-check: Proven identities, PASS or FAIL
  - slopes: Certified Newton polygon and degree tables
  - gm-probe / denom-scan / avg-bound: Conjecture probes
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
"""

import importlib
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Type

from unitroot.logger import get_logger

logger = get_logger("base")


@dataclass(frozen=True)
class CapabilityRegistration:
    name: str
    module_path: str
    class_name: str
    description: str
    provides: List[str] = field(default_factory=list)
    requires: List[str] = field(default_factory=list)


REGISTRATIONS = [

    # ────────────────────────────────────────────────────────
    # TRACE DATA
    # ────────────────────────────────────────────────────────
    CapabilityRegistration(
        name="trace-table",
        module_path="unitroot.capabilities.trace_table_capability",
        class_name="TraceTableCapability",
        description="Compute Frobenius traces of all ordinary closed points of X up to a degree",
        provides=["TRACE_TABLE"],
    ),
    CapabilityRegistration(
        name="fiber",
        module_path="unitroot.capabilities.fiber_capability",
        class_name="FiberCapability",
        description="Trace of Frobenius, classification, P(T) and unit root of one fiber",
        provides=["FIBER"],
        requires=["lam"],
    ),

    # ────────────────────────────────────────────────────────
    # SERIES
    # ────────────────────────────────────────────────────────
    CapabilityRegistration(
        name="lfun",
        module_path="unitroot.capabilities.lfun_capability",
        class_name="LFunctionCapability",
        description="Unit-root L-function L(k, T)",
        provides=["SERIES"],
        requires=["k"],
    ),
    CapabilityRegistration(
        name="fredholm",
        module_path="unitroot.capabilities.lfun_capability",
        class_name="FredholmCapability",
        description="Fredholm determinant D(k, T)",
        provides=["SERIES"],
        requires=["k"],
    ),

    # ────────────────────────────────────────────────────────
    # PROVEN IDENTITIES
    # ────────────────────────────────────────────────────────
    CapabilityRegistration(
        name="congruence",
        module_path="unitroot.capabilities.check_capability",
        class_name="CongruenceCapability",
        description="Weight congruence of L or D",
        provides=["CHECK"],
        requires=["k1", "k2", "m"],
    ),
    CapabilityRegistration(
        name="thm22-check",
        module_path="unitroot.capabilities.check_capability",
        class_name="Theorem22Capability",
        description="D(k+2, T) = L(k, T) D(k, pT)",
        provides=["CHECK"],
        requires=["k"],
    ),

    # ────────────────────────────────────────────────────────
    # SLOPES AND PROBES
    # ────────────────────────────────────────────────────────
    CapabilityRegistration(
        name="slopes",
        module_path="unitroot.capabilities.slopes_capability",
        class_name="SlopesCapability",
        description="Certified slopes and degree tables",
        provides=["DEGREE_TABLE"],
        requires=["k"],
    ),
    CapabilityRegistration(
        name="gm-probe",
        module_path="unitroot.capabilities.probe_capability",
        class_name="GMProbeCapability",
        description="Degree functions across congruent weights",
        provides=["PROBE_REPORT"],
        requires=["smax", "m", "weights"],
    ),
    CapabilityRegistration(
        name="denom-scan",
        module_path="unitroot.capabilities.probe_capability",
        class_name="DenominatorScanCapability",
        description="Slope denominators over a weight range",
        provides=["PROBE_REPORT"],
        requires=["weights"],
    ),
    CapabilityRegistration(
        name="avg-bound",
        module_path="unitroot.capabilities.probe_capability",
        class_name="AverageBoundCapability",
        description="Average slope density and empirical uniform constant",
        provides=["PROBE_REPORT"],
        requires=["smax"],
    ),
]


class CapabilityRegistry:
    """Lazy name -> capability class lookup."""

    def __init__(self, registrations: List[CapabilityRegistration]):
        self.registrations: Dict[str, CapabilityRegistration] = {r.name: r for r in registrations}
        self._classes: Dict[str, Type] = {}

    @property
    def names(self) -> List[str]:
        return list(self.registrations)

    def get_capability(self, name: str) -> Type:
        if name not in self._classes:
            registration = self.registrations.get(name)
            if registration is None:
                raise KeyError(f"no capability registered for {name!r}")
            module = importlib.import_module(registration.module_path)
            self._classes[name] = getattr(module, registration.class_name)
            logger.debug(f"loaded {registration.class_name} for {name}")
        return self._classes[name]


_registry: Optional[CapabilityRegistry] = None


def get_registry() -> CapabilityRegistry:
    global _registry
    if _registry is None:
        _registry = CapabilityRegistry(REGISTRATIONS)
    return _registry
