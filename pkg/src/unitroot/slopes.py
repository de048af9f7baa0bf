"""
Slope Analytics.

Degree functions read off certified Newton polygons:

    d_s(k)   multiplicity of slope s in the polygon of D(k, T)
    d'_s(k)  = d_s(k + 2) - d_{s-1}(k), the net slope-s count of L(k, T)

and the probes built on them. Proven facts (the d' identity, its inverse sum,
s = 0 stability) are asserted and raise ProvenIdentityViolation. Conjectural
statements are only reported as findings.

D tables come from the open-tail polygon of D(k, T): the segment that runs
into T^N is never counted, and a window shorter than unit_part_degree_bound(p)
certifies nothing.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import ceil, floor, lcm
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from unitroot.errors import InsufficientCertification, ProvenIdentityViolation
from unitroot.lfun import fredholm_d, unit_part_degree_bound
from unitroot.logger import get_logger
from unitroot.newton import NewtonPolygon, newton_polygon
from unitroot.padic import SlopeRational
from unitroot.trace_store import TraceStore, get_trace_store

logger = get_logger("slopes")


# ============================================================================
# Data Models
# ============================================================================

@dataclass
class DegreeTable:
    """slope -> degree for one weight; entries only below certified_bound."""
    k: int
    degrees: Dict[SlopeRational, int]
    certified_bound: SlopeRational
    kind: str = "D"
    vertices: List[Tuple[int, Fraction]] = field(default_factory=list)

    def __post_init__(self):
        self.degrees = {s: d for s, d in sorted(self.degrees.items()) if d != 0}
        for s in self.degrees:
            if s >= self.certified_bound:
                raise ValueError(f"slope {s} is not below the certified bound {self.certified_bound}")
        if self.kind == "D" and any(d < 0 for d in self.degrees.values()):
            raise ValueError("d_s(k) cannot be negative")

    def get(self, s: SlopeRational) -> int:
        if s < 0:
            return 0
        if s >= self.certified_bound:
            raise InsufficientCertification(
                f"{self.kind}-table of k={self.k}: slope {s} not below certified bound {self.certified_bound}"
            )
        return self.degrees.get(Fraction(s), 0)

    def up_to(self, s_max: SlopeRational) -> Dict[SlopeRational, int]:
        return {s: d for s, d in self.degrees.items() if s <= s_max}

    def slopes(self) -> List[SlopeRational]:
        return list(self.degrees)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "object": self.kind,
            "k": self.k,
            "degrees": {str(s): d for s, d in self.degrees.items()},
            "certified_bound": str(self.certified_bound),
        }


@dataclass
class ProbeReport:
    """Outcome of one conjecture probe. Empty findings means PASS."""
    probe: str
    params: Dict[str, Any]
    findings: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.findings

    def to_dict(self) -> Dict[str, Any]:
        return {
            "probe": self.probe,
            "params": self.params,
            "findings": self.findings,
            "summary": self.summary,
            "status": "PASS" if self.passed else "FINDINGS",
        }


# ============================================================================
# Degree tables
# ============================================================================

def table_from_polygon(polygon: NewtonPolygon, k: int, kind: str = "D") -> DegreeTable:
    return DegreeTable(k, polygon.degrees(), polygon.certified_bound, kind, list(polygon.vertices))


def d_polygon(p: int, k: int, N: int, M: int, store: Optional[TraceStore] = None) -> NewtonPolygon:
    """Newton polygon of D(k, T) with the open tail past T^N."""
    return newton_polygon(fredholm_d(p, k, N, M, store), open_tail=True, unit_span=unit_part_degree_bound(p))


@lru_cache(maxsize=512)
def _d_table(p: int, k: int, N: int, M: int, store: TraceStore) -> DegreeTable:
    return table_from_polygon(d_polygon(p, k, N, M, store), k)


def degree_table_d(p: int, k: int, N: int, M: int, store: Optional[TraceStore] = None) -> DegreeTable:
    """
    d_s(k) for the certified slopes of D(k, T).

    Args:
        p: odd prime
        k: weight
        N: T-degree of the window; below unit_part_degree_bound(p) nothing is certified
        M: precision exponent
        store: trace-table store

    Returns:
        DegreeTable whose entries all lie below the final slope seen in the window
    """
    return _d_table(p, k, N, M, store or get_trace_store())


def assert_l_identity(l_table: DegreeTable, d_next: DegreeTable, d_cur: DegreeTable) -> None:
    """d'_s(k) = d_s(k+2) - d_{s-1}(k) on every certified slope."""
    for s in set(l_table.degrees) | set(d_next.degrees) | {s + 1 for s in d_cur.degrees}:
        if s >= l_table.certified_bound:
            continue
        if l_table.get(s) != d_next.get(s) - d_cur.get(s - 1):
            raise ProvenIdentityViolation(
                f"d'_{s}({l_table.k}) = {l_table.get(s)} but d_{s}({d_next.k}) - d_{s - 1}({d_cur.k}) "
                f"= {d_next.get(s) - d_cur.get(s - 1)}"
            )


def l_table_from_d_tables(d_next: DegreeTable, d_cur: DegreeTable) -> DegreeTable:
    """L-side table of weight d_cur.k from the D tables at k + 2 and k."""
    if d_next.k != d_cur.k + 2:
        raise ValueError(f"need D tables at k+2 and k, got {d_next.k} and {d_cur.k}")
    bound = min(d_next.certified_bound, d_cur.certified_bound + 1)
    candidates = set(d_next.degrees) | {s + 1 for s in d_cur.degrees}
    degrees = {
        s: d_next.get(s) - d_cur.get(s - 1)
        for s in sorted(candidates)
        if s < bound
    }
    table = DegreeTable(d_cur.k, degrees, bound, kind="L")
    assert_l_identity(table, d_next, d_cur)
    return table


def degree_table_l(p: int, k: int, N: int, M: int, store: Optional[TraceStore] = None) -> DegreeTable:
    """d'_s(k) for the certified slopes, via the two D tables."""
    return l_table_from_d_tables(
        degree_table_d(p, k + 2, N, M, store),
        degree_table_d(p, k, N, M, store),
    )


def degree_from_l_tables(l_tables: Dict[int, DegreeTable], k: int, s: SlopeRational) -> int:
    """d_s(k) = sum over integers 0 <= j <= s of d'_{s-j}(k - 2 - 2j)."""
    total = 0
    for j in range(floor(s) + 1):
        weight = k - 2 - 2 * j
        if weight not in l_tables:
            raise InsufficientCertification(f"no L table for weight {weight}")
        total += l_tables[weight].get(s - j)
    return total


def assert_d_from_l(d_table: DegreeTable, l_tables: Dict[int, DegreeTable]) -> int:
    """Re-derive every certified d_s from the L tables; returns how many slopes were checked."""
    checked = 0
    for s in d_table.slopes():
        try:
            derived = degree_from_l_tables(l_tables, d_table.k, s)
        except InsufficientCertification:
            continue
        if derived != d_table.get(s):
            raise ProvenIdentityViolation(
                f"d_{s}({d_table.k}) = {d_table.get(s)} but the L tables sum to {derived}"
            )
        checked += 1
    return checked


def table_is_prefix(low: DegreeTable, high: DegreeTable) -> bool:
    """True when every certified entry of low is reproduced by high."""
    if high.certified_bound < low.certified_bound:
        return False
    return tables_agree(low, high)


def tables_agree(first: DegreeTable, second: DegreeTable) -> bool:
    """Both tables give the same d_s, implicit zeros included, below the smaller bound."""
    bound = min(first.certified_bound, second.certified_bound)
    slopes = {s for s in set(first.degrees) | set(second.degrees) if s < bound}
    return all(first.get(s) == second.get(s) for s in slopes)


# ============================================================================
# Congruent-weight probe
# ============================================================================

def congruent_pairs(p: int, m: int, weights: Iterable[int]) -> List[Tuple[int, int]]:
    period = (p - 1) * p ** m
    ordered = sorted(set(weights))
    return [(a, b) for a, b in combinations(ordered, 2) if (b - a) % period == 0]


def _mismatches(t1: DegreeTable, t2: DegreeTable, s_max: SlopeRational) -> List[Tuple[SlopeRational, int, int]]:
    bound = min(t1.certified_bound, t2.certified_bound)
    slopes = sorted(s for s in set(t1.degrees) | set(t2.degrees) if s <= s_max and s < bound)
    return [(s, t1.get(s), t2.get(s)) for s in slopes if t1.get(s) != t2.get(s)]


def _require_certified(tables: Dict[int, DegreeTable], s_max: SlopeRational) -> None:
    short = sorted(k for k, t in tables.items() if t.certified_bound <= s_max)
    if short:
        raise InsufficientCertification(
            f"certified bound does not exceed s_max={s_max} for weights {short}"
        )


def _assert_unit_slope_stability(p: int, tables: Dict[int, DegreeTable]) -> None:
    """d_0(k1) = d_0(k2) whenever k1 = k2 mod p - 1."""
    for k1, k2 in congruent_pairs(p, 0, tables):
        t1, t2 = tables[k1], tables[k2]
        if t1.certified_bound > 0 and t2.certified_bound > 0 and t1.get(0) != t2.get(0):
            raise ProvenIdentityViolation(f"d_0({k1}) = {t1.get(0)} != d_0({k2}) = {t2.get(0)}")


def gm_probe(p: int, s_max: SlopeRational, m: int, weights: Sequence[int], N: int, M: int,
             store: Optional[TraceStore] = None) -> ProbeReport:
    """
    Compare degree functions up to s_max across weights congruent mod (p-1)p^m.

    Args:
        p: odd prime
        s_max: largest slope compared
        m: congruence level; pairs satisfy k1 = k2 mod (p-1)p^m
        weights: weights to pair up
        N, M: window and precision of every D(k, T)
        store: trace-table store

    Returns:
        ProbeReport with one finding per disagreeing (pair, slope, object)

    Raises:
        InsufficientCertification: some weight is not certified past s_max
        ProvenIdentityViolation: d_0 differs between weights that agree mod p - 1
    """
    s_max = Fraction(s_max)
    params = {"p": p, "s_max": str(s_max), "m": m, "weights": sorted(set(weights)), "N": N, "M": M}
    pairs = congruent_pairs(p, m, weights)
    if not pairs:
        return ProbeReport("gm-probe", params, summary={"pairs": 0})

    involved = sorted({k for pair in pairs for k in pair})
    logger.info(f"🔍 gm-probe p={p} m={m}: {len(pairs)} pairs over {len(involved)} weights")
    d_tables = {k: degree_table_d(p, k, N, M, store) for k in involved}
    _require_certified(d_tables, s_max)
    _assert_unit_slope_stability(p, d_tables)

    l_tables = {
        k: l_table_from_d_tables(degree_table_d(p, k + 2, N, M, store), d_tables[k])
        for k in involved
    }

    findings = []
    d_pairs, l_pairs = set(), set()
    for k1, k2 in pairs:
        for obj, tables, hits in (("D", d_tables, d_pairs), ("L", l_tables, l_pairs)):
            for s, a, b in _mismatches(tables[k1], tables[k2], s_max):
                hits.add((k1, k2))
                findings.append({"object": obj, "k1": k1, "k2": k2, "slope": str(s), "d1": a, "d2": b})

    l_short = sorted(k for k, t in l_tables.items() if t.certified_bound <= s_max)
    summary = {
        "pairs": len(pairs),
        "d_mismatch_pairs": len(d_pairs),
        "l_mismatch_pairs": len(l_pairs),
        "mismatch_sets_coincide": d_pairs == l_pairs,
        "l_tables_short_of_s_max": l_short,
        "ceil_s_max": ceil(s_max),
    }
    if findings:
        logger.warning(f"⚠️  {len(findings)} degree mismatches up to slope {s_max}")
    return ProbeReport("gm-probe", params, findings, summary)


def empirical_m(p: int, s: SlopeRational, weights: Sequence[int], m_cap: int, N: int, M: int,
                store: Optional[TraceStore] = None) -> Dict[str, Any]:
    """Smallest m <= m_cap with no disagreement up to slope s among the scanned pairs."""
    s = Fraction(s)
    d_tables: Dict[int, DegreeTable] = {}
    per_level = []
    found: Optional[int] = None
    for m in range(m_cap + 1):
        pairs = congruent_pairs(p, m, weights)
        for k in sorted({k for pair in pairs for k in pair}):
            if k not in d_tables:
                d_tables[k] = degree_table_d(p, k, N, M, store)
        _require_certified({k: d_tables[k] for pair in pairs for k in pair}, s)
        bad = [pair for pair in pairs if _mismatches(d_tables[pair[0]], d_tables[pair[1]], s)]
        per_level.append({"m": m, "pairs": len(pairs), "disagreeing_pairs": len(bad)})
        if not bad:
            found = m
            break
    return {
        "s": str(s),
        "empirical_m": found,
        "levels": per_level,
        "exceeds_ceil_s": found is None or found > ceil(s),
    }


# ============================================================================
# Denominators
# ============================================================================

def denominator_stats(slopes: Iterable[SlopeRational]) -> Tuple[int, int]:
    """(max denominator, lcm of denominators); (1, 1) for no slopes."""
    dens = [Fraction(s).denominator for s in slopes]
    if not dens:
        return 1, 1
    return max(dens), lcm(*dens)


def denominator_scan(p: int, weights: Sequence[int], N: int, M: int,
                     store: Optional[TraceStore] = None) -> ProbeReport:
    """Denominators of certified slopes of D(k, T) and L(k, T) across weights."""
    weights = sorted(set(weights))
    params = {"p": p, "weights": weights, "N": N, "M": M}
    logger.info(f"🔍 denom-scan p={p} over {len(weights)} weights")

    per_weight = []
    all_s, all_s_prime = set(), set()
    max_degree = 0
    for k in weights:
        d_cur = degree_table_d(p, k, N, M, store)
        d_next = degree_table_d(p, k + 2, N, M, store)
        l_table = l_table_from_d_tables(d_next, d_cur)

        s_set = set(d_cur.slopes())
        s_prime = {s for s, d in l_table.degrees.items() if d != 0}
        allowed = set(d_next.slopes()) | {s + 1 for s in s_set}
        stray = sorted(s for s in s_prime if s not in allowed)
        if stray:
            raise ProvenIdentityViolation(f"k={k}: L slopes {stray} outside S(k+2) and S(k)+1")

        all_s |= s_set
        all_s_prime |= s_prime
        max_degree = max([max_degree] + list(d_cur.degrees.values()))
        max_den, den_lcm = denominator_stats(s_set)
        max_den_l, den_lcm_l = denominator_stats(s_prime)
        per_weight.append({
            "k": k,
            "certified_bound": str(d_cur.certified_bound),
            "slopes": [str(s) for s in sorted(s_set)],
            "max_denominator": max_den,
            "lcm_denominator": den_lcm,
            "l_slopes": [str(s) for s in sorted(s_prime)],
            "l_max_denominator": max_den_l,
            "l_lcm_denominator": den_lcm_l,
        })

    max_den, den_lcm = denominator_stats(all_s)
    max_den_l, den_lcm_l = denominator_stats(all_s_prime)
    summary = {
        "max_denominator": max_den,
        "lcm_denominator": den_lcm,
        "l_max_denominator": max_den_l,
        "l_lcm_denominator": den_lcm_l,
        "max_degree": max_degree,
        "per_weight": per_weight,
    }
    return ProbeReport("denom-scan", params, summary=summary)


# ============================================================================
# Average bound
# ============================================================================

def average_from_table(degrees: Dict[SlopeRational, int], A: SlopeRational) -> Fraction:
    """(1/A) sum_{0 <= s <= A} d_s."""
    A = Fraction(A)
    if A <= 0:
        raise ValueError(f"averaging bound must be positive, got {A}")
    return Fraction(sum(d for s, d in degrees.items() if 0 <= s <= A)) / A


def _quadratic_fit(vertices: List[Tuple[int, Fraction]]) -> Optional[List[float]]:
    if len(vertices) < 3:
        return None
    x = np.array([n for n, _ in vertices], dtype=float)
    y = np.array([float(v) for _, v in vertices], dtype=float)
    return [round(float(c), 12) for c in np.polyfit(x, y, 2)]


def average_bound(p: int, k: int, A: SlopeRational, N: int, M: int,
                  store: Optional[TraceStore] = None) -> Dict[str, Any]:
    """
    Average slope density up to A for one weight, plus the quadratic-growth witnesses.

    Returns:
        record with the average, the degree sums, the quadratic fit of the
        polygon vertices and the degrees it was taken over

    Raises:
        InsufficientCertification: the table is not certified through A
    """
    A = Fraction(A)
    table = degree_table_d(p, k, N, M, store)
    if table.certified_bound <= A:
        raise InsufficientCertification(
            f"k={k}: slopes certified only below {table.certified_bound}, need through {A}"
        )
    within = table.up_to(A)
    return {
        "k": k,
        "A": str(A),
        "average": str(average_from_table(within, A)),
        "sum_degrees": sum(within.values()),
        "sum_slope_degrees": str(sum((s * d for s, d in within.items()), Fraction(0))),
        "quadratic_fit": _quadratic_fit(table.vertices),
        "degrees": {str(s): d for s, d in within.items()},
    }


def average_bound_scan(p: int, weights: Sequence[int], A: SlopeRational, N: int, M: int,
                       store: Optional[TraceStore] = None) -> ProbeReport:
    """average_bound over weights; c_hat is the running maximum of the averages."""
    A = Fraction(A)
    weights = sorted(set(weights))
    params = {"p": p, "weights": weights, "A": str(A), "N": N, "M": M}
    logger.info(f"🔍 avg-bound p={p} A={A} over {len(weights)} weights")

    records = [average_bound(p, k, A, N, M, store) for k in weights]
    c_hat = max((Fraction(r["average"]) for r in records), default=Fraction(0))

    findings = []
    for record in records:
        for s_text, d in record["degrees"].items():
            s = Fraction(s_text)
            if s > 0 and d > c_hat * s:
                findings.append({"k": record["k"], "slope": s_text, "d": d, "bound": str(c_hat * s)})

    summary = {"c_hat": str(c_hat), "records": records}
    return ProbeReport("avg-bound", params, findings, summary)
