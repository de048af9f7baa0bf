"""
Unit-Root L-functions and Fredholm Determinants.

    L(k, T) = prod_{x in X} 1 / (1 - alpha(x)^k T^{deg x})
    D(k, T) = prod_{j >= 0} L(k - 2 - 2j, p^j T)

Both are computed mod (p^M, T^{N+1}). The j-th factor of D has its T^n
coefficient divisible by p^{jn}, so the product stops at j = M - 1.

Checks in this module return reports; a failed check is never turned into a
silent success. Callers decide how loudly to fail (the CLI exits non-zero).
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from unitroot.errors import InvalidPrimeContext, NotCongruentWeights
from unitroot.ffield import irreducible_count
from unitroot.logger import get_logger
from unitroot.padic import PadicResidue, PrimeContext, hensel_unit_root, residue_pow
from unitroot.series import (
    TruncSeries,
    euler_factor,
    polynomial_factor,
    series_mul,
    series_product,
    series_scale,
)
from unitroot.trace_store import TraceStore, TraceTable, get_trace_store

logger = get_logger("lfun")


# ============================================================================
# Data Models
# ============================================================================

@dataclass(frozen=True)
class LSeriesRequest:
    """One L(k, T) computation: weight exponent k (any sign), T-degree N, precision M."""
    p: int
    k: int
    N: int
    M: int

    def __post_init__(self):
        PrimeContext(self.p, self.M, self.N)


@dataclass
class CongruenceReport:
    """Coefficientwise comparison of two weights mod p^(m+1)."""
    p: int
    k1: int
    k2: int
    m: int
    N: int
    M: int
    on: str
    coefficient_pass: List[bool] = field(default_factory=list)

    @property
    def modexp(self) -> int:
        return self.m + 1

    @property
    def first_failure(self) -> Optional[int]:
        for n, ok in enumerate(self.coefficient_pass):
            if not ok:
                return n
        return None

    @property
    def passed(self) -> bool:
        return all(self.coefficient_pass)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "object": self.on,
            "k1": self.k1,
            "k2": self.k2,
            "m": self.m,
            "modulus": f"{self.p}^{self.modexp}",
            "coefficient_pass": self.coefficient_pass,
            "first_failure": self.first_failure,
            "status": "PASS" if self.passed else "FAIL",
        }


@dataclass
class CheckReport:
    """Result of an identity check between two independently assembled series."""
    name: str
    lhs: TruncSeries
    rhs: TruncSeries
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def first_discrepancy(self) -> Optional[int]:
        for n, (a, b) in enumerate(zip(self.lhs.coeffs, self.rhs.coeffs)):
            if a != b:
                return n
        return None

    @property
    def passed(self) -> bool:
        return self.first_discrepancy is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            **self.params,
            "lhs": self.lhs.to_dict(),
            "rhs": self.rhs.to_dict(),
            "first_discrepancy": self.first_discrepancy,
            "status": "PASS" if self.passed else "FAIL",
        }


# ============================================================================
# Engine
# ============================================================================

class UnitRootEngine:
    """
    Unit roots of every ordinary closed point of X with degree <= N, mod p^M.

    L(k, T) is memoised per k, so D(k, T) and the scans share Euler products.
    """

    def __init__(self, p: int, N: int, M: int, table: Optional[TraceTable] = None,
                 store: Optional[TraceStore] = None):
        self.context = PrimeContext(p, M, N)
        self.p, self.N, self.M = p, N, M
        self._cache: Dict[int, TruncSeries] = {}

        self.points: List[Tuple[int, PadicResidue]] = []
        self.table: Optional[TraceTable] = None
        if N == 0:
            return
        if table is None:
            table = (store or get_trace_store()).get_table(p, N)
        self.table = table.restrict(N) if table.max_degree > N else table
        for row in self.table.rows:
            alpha = hensel_unit_root(row.a, p ** row.d, M, p)
            self.points.append((row.d, alpha))
        logger.debug(f"engine p={p} N={N} M={M}: {len(self.points)} unit roots")

    def euler_product(self, k: int) -> TruncSeries:
        """L(k, T) from scratch: per-degree partial products, then their product."""
        partials = []
        for d in range(1, self.N + 1):
            factors = (euler_factor(a, k, deg, self.N, self.M) for deg, a in self.points if deg == d)
            partials.append(series_product(factors, self.p, self.M, self.N))
        return series_product(partials, self.p, self.M, self.N)

    def l_function(self, k: int) -> TruncSeries:
        if k not in self._cache:
            self._cache[k] = self.euler_product(k)
        return self._cache[k]

    def fredholm_d(self, k: int) -> TruncSeries:
        """prod_{j < M} L(k - 2 - 2j, p^j T)."""
        factors = (series_scale(self.l_function(k - 2 - 2 * j), j) for j in range(self.M))
        return series_product(factors, self.p, self.M, self.N)

    def fredholm_d_flat(self, k: int) -> TruncSeries:
        """
        D(k, T) straight from the unit roots, without going through L.

        Each closed point x contributes prod_{j < M} 1 / (1 - alpha^(k-2-2j) p^(j deg x) T^(deg x)),
        built by the in-place recurrence g_n += beta * g_(n - deg x).
        """
        modulus = self.p ** self.M
        factors = []
        for deg, alpha in self.points:
            coeffs = [1] + [0] * self.N
            for j in range(self.M):
                shift = PadicResidue.of(self.p ** (j * deg), self.p, self.M)
                beta = (residue_pow(alpha, k - 2 - 2 * j) * shift).value
                if beta == 0:
                    break
                for n in range(deg, self.N + 1):
                    coeffs[n] = (coeffs[n] + beta * coeffs[n - deg]) % modulus
            factors.append(TruncSeries(self.p, self.M, self.N, tuple(coeffs)))
        return series_product(factors, self.p, self.M, self.N)

    def series(self, obj: str, k: int) -> TruncSeries:
        return self.l_function(k) if obj == "L" else self.fredholm_d(k)


@lru_cache(maxsize=8)
def _engine(p: int, N: int, M: int, store: TraceStore) -> UnitRootEngine:
    return UnitRootEngine(p, N, M, store=store)


def get_engine(p: int, N: int, M: int, store: Optional[TraceStore] = None) -> UnitRootEngine:
    """Shared engine per (p, N, M, store); the few most recent ones stay in memory."""
    return _engine(p, N, M, store or get_trace_store())


def unit_part_degree_bound(p: int) -> int:
    """
    D(k, T) mod p is a polynomial of at most this degree, for every k.

    D(k, T) = L(k - 2, T) mod p, and L mod p is the L-function of a tame rank-one
    sheaf on the line minus 0, 1, infinity and the (p - 1) / 2 roots of the Hasse
    polynomial. Its degree is (p + 1) / 2, or (p + 3) / 2 for the trivial character.
    """
    return (p + 3) // 2


# ============================================================================
# Operations
# ============================================================================

def l_function(req: LSeriesRequest, store: Optional[TraceStore] = None) -> TruncSeries:
    """
    L(k, T) mod (p^M, T^(N+1)) as the Euler product over the closed points of X.

    Args:
        req: weight exponent k (any sign) and the (p, N, M) window
        store: trace-table store; the process-wide one when omitted

    Returns:
        TruncSeries with constant term 1
    """
    return get_engine(req.p, req.N, req.M, store).l_function(req.k)


def fredholm_d(p: int, k: int, N: int, M: int, store: Optional[TraceStore] = None) -> TruncSeries:
    """
    D(k, T) = prod_{j < M} L(k - 2 - 2j, p^j T) mod (p^M, T^(N+1)).

    Factors with j >= M are 1 mod p^M past the constant term, so the cutoff is exact.
    """
    return get_engine(p, N, M, store).fredholm_d(k)


def congruence_check(p: int, k1: int, k2: int, m: int, N: int, M: int, on: str = "L",
                     store: Optional[TraceStore] = None) -> CongruenceReport:
    """
    Compare L (or D) at weights k1 = k2 mod (p-1)p^m, coefficientwise mod p^(m+1).

    Args:
        m: congruence level; the weights must agree mod (p-1)p^m
        on: "L" or "D"

    Returns:
        CongruenceReport with one pass flag per coefficient

    Raises:
        NotCongruentWeights: k1 - k2 is not a multiple of (p-1)p^m
        InvalidPrimeContext: M < m + 1
    """
    period = (p - 1) * p ** m
    if (k1 - k2) % period:
        raise NotCongruentWeights(f"{k1} and {k2} are not congruent mod {period}")
    if M < m + 1:
        raise InvalidPrimeContext(f"precision M={M} cannot see congruences mod {p}^{m + 1}")

    engine = get_engine(p, N, M, store)
    f, g = engine.series(on, k1), engine.series(on, k2)
    modulus = p ** (m + 1)
    report = CongruenceReport(p, k1, k2, m, N, M, on)
    report.coefficient_pass = [(a - b) % modulus == 0 for a, b in zip(f.coeffs, g.coeffs)]
    if not report.passed:
        logger.error(f"❌ {on}({k1}) != {on}({k2}) mod {p}^{m + 1} at T^{report.first_failure}")
    return report


def theorem22_check(p: int, k: int, N: int, M: int, store: Optional[TraceStore] = None) -> CheckReport:
    """
    D(k+2, T) = L(k, T) * D(k, pT) mod (p^M, T^(N+1)).

    Both D's come from fredholm_d_flat and L(k) from a fresh Euler product, so
    the two sides share the unit roots and nothing else.

    Args:
        p: odd prime
        k: weight exponent of the L-function
        N: T-degree of the window
        M: precision exponent
        store: trace-table store

    Returns:
        CheckReport with lhs = D(k+2, T) and rhs = L(k, T) D(k, pT)
    """
    engine = get_engine(p, N, M, store)
    lhs = engine.fredholm_d_flat(k + 2)
    rhs = series_mul(engine.euler_product(k), series_scale(engine.fredholm_d_flat(k), 1))
    report = CheckReport("thm22", lhs, rhs, {"p": p, "k": k})
    if not report.passed:
        logger.error(f"❌ D({k + 2}) != L({k}) D({k}, pT) at T^{report.first_discrepancy}")
    return report


def excluded_point_counts(p: int, table: TraceTable, N: int) -> Dict[int, int]:
    """Closed points of A^1 of each degree <= N missing from X."""
    present = Counter(row.d for row in table.rows if row.d <= N)
    return {d: irreducible_count(p, d) - present.get(d, 0) for d in range(1, N + 1)}


def rationality_check(p: int, N: int, M: int, store: Optional[TraceStore] = None) -> CheckReport:
    """L(0, T)(1 - pT) = prod over excluded points e of (1 - T^{deg e})."""
    engine = get_engine(p, N, M, store)
    lhs = series_mul(engine.l_function(0), polynomial_factor(p, 1, p, M, N))
    factors = []
    if N > 0:
        for d, count in excluded_point_counts(p, engine.table, N).items():
            factors += [polynomial_factor(1, d, p, M, N)] * count
    rhs = series_product(factors, p, M, N)
    return CheckReport("rationality", lhs, rhs, {"p": p, "k": 0})


def precision_check(p: int, k: int, N: int, M: int, obj: str = "L",
                    store: Optional[TraceStore] = None) -> CheckReport:
    """Result at (N, M) against the reduction of the result at (N + 2, M + 1)."""
    low = get_engine(p, N, M, store).series(obj, k)
    high = get_engine(p, N + 2, M + 1, store).series(obj, k).reduce(N, M)
    return CheckReport("precision", low, high, {"p": p, "k": k, "object": obj})
