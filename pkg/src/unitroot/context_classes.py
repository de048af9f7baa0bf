"""
Workbench Context Classes.

The artifacts capabilities return and the CLI emits. Every artifact carries
the RunConfig echo, so a JSON file alone says how to reproduce it.

━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
CONTEXT CLASSES:
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

1. TraceTableContext   - trace-table: cache file, rows per degree
2. FiberContext        - fiber: trace, kind, P(T), unit root
3. SeriesContext       - lfun, fredholm: truncated series + metadata block
4. CheckContext        - congruence, thm22-check: PASS/FAIL report
5. DegreeTableContext  - slopes: certified Newton polygon, d_s and d'_s tables
6. ProbeContext        - gm-probe, denom-scan, avg-bound: findings + summary

Status drives the exit code: OK/PASS -> 0, FAIL -> 1, FINDINGS -> 2.
"""

import csv
import io
import json
from typing import Any, ClassVar, Dict, List, Optional

from pydantic import BaseModel, Field

STATUS_EXIT_CODES = {"OK": 0, "PASS": 0, "FAIL": 1, "FINDINGS": 2}


class WorkbenchContext(BaseModel):
    """Base artifact: config echo plus a status."""

    CONTEXT_TYPE: ClassVar[str] = "WORKBENCH"

    config: Dict[str, Any] = Field(description="RunConfig echo (execution-only fields excluded)")
    status: str = Field(default="OK", description="OK | PASS | FAIL | FINDINGS")

    @property
    def exit_code(self) -> int:
        return STATUS_EXIT_CODES[self.status]

    def to_json(self) -> str:
        payload = {"type": self.CONTEXT_TYPE, **self.model_dump()}
        return json.dumps(payload, indent=2) + "\n"

    def to_csv(self) -> str:
        raise ValueError(f"--out csv is not available for {self.CONTEXT_TYPE} artifacts")

    def render(self, out: str) -> str:
        return self.to_csv() if out == "csv" else self.to_json()

    def get_summary(self) -> Dict[str, Any]:
        return {"type": self.CONTEXT_TYPE, "status": self.status}


class TraceTableContext(WorkbenchContext):
    """Trace table written to (or found in) the cache."""

    CONTEXT_TYPE: ClassVar[str] = "TRACE_TABLE"

    p: int = Field(description="Odd prime")
    max_degree: int = Field(description="Largest closed-point degree in the table")
    rows_per_degree: Dict[int, int] = Field(description="Ordinary points of X per degree")
    moduli_hash: str = Field(description="sha256 over p and the canonical moduli")
    path: Optional[str] = Field(default=None, description="Cache file (not echoed in JSON)", exclude=True)
    text: str = Field(default="", description="Cache file content", exclude=True)

    def to_csv(self) -> str:
        return self.text

    def get_summary(self) -> Dict[str, Any]:
        return {
            "type": "Trace Table",
            "p": self.p,
            "max_degree": self.max_degree,
            "rows": sum(self.rows_per_degree.values()),
        }


class FiberContext(WorkbenchContext):
    """One Legendre fiber."""

    CONTEXT_TYPE: ClassVar[str] = "FIBER"

    fiber: Dict[str, Any] = Field(description="lambda, minpoly, q, trace, kind, P(T), unit root")

    def get_summary(self) -> Dict[str, Any]:
        return {
            "type": "Fiber",
            "lambda": self.fiber["lambda"],
            "trace": self.fiber["trace"],
            "kind": self.fiber["kind"],
        }


class SeriesContext(WorkbenchContext):
    """L(k, T) or D(k, T) with its metadata block."""

    CONTEXT_TYPE: ClassVar[str] = "SERIES"

    metadata: Dict[str, Any] = Field(description='{"object": "L" | "D", "k": ..., "p": ...}')
    series: Dict[str, Any] = Field(description="p, M, N and decimal residue strings")

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n", "coefficient"])
        for n, c in enumerate(self.series["coeffs"]):
            writer.writerow([n, c])
        return buffer.getvalue()

    def get_summary(self) -> Dict[str, Any]:
        return {
            "type": f"{self.metadata['object']}-series",
            "k": self.metadata["k"],
            "terms": len(self.series["coeffs"]),
        }


class CheckContext(WorkbenchContext):
    """Identity check; FAIL means a bug or a disproof, never a finding."""

    CONTEXT_TYPE: ClassVar[str] = "CHECK"

    check: str = Field(description="congruence | thm22")
    report: Dict[str, Any] = Field(description="Per-coefficient comparison")

    def get_summary(self) -> Dict[str, Any]:
        return {"type": "Check", "check": self.check, "status": self.status}


class DegreeTableContext(WorkbenchContext):
    """Certified slopes of D(k, T) and the degree functions derived from them."""

    CONTEXT_TYPE: ClassVar[str] = "DEGREE_TABLE"

    polygon: Dict[str, Any] = Field(description="Certified vertices, slopes and bound of D(k, T)")
    d_table: Dict[str, Any] = Field(description="d_s(k)")
    l_table: Dict[str, Any] = Field(description="d'_s(k) = d_s(k+2) - d_{s-1}(k)")
    polygon_csv: str = Field(default="", exclude=True)

    def to_csv(self) -> str:
        return self.polygon_csv

    def get_summary(self) -> Dict[str, Any]:
        return {
            "type": "Degree Table",
            "k": self.d_table["k"],
            "certified_bound": self.d_table["certified_bound"],
        }


class ProbeContext(WorkbenchContext):
    """Conjecture probe output. Findings are witnesses, not failures."""

    CONTEXT_TYPE: ClassVar[str] = "PROBE_REPORT"

    probe: str = Field(description="gm-probe | denom-scan | avg-bound")
    params: Dict[str, Any] = Field(description="Scanned parameter ranges")
    findings: List[Dict[str, Any]] = Field(default_factory=list, description="Mismatch/violation witnesses")
    summary: Dict[str, Any] = Field(default_factory=dict, description="Summary statistics")

    def get_summary(self) -> Dict[str, Any]:
        return {"type": "Probe", "probe": self.probe, "findings": len(self.findings)}
