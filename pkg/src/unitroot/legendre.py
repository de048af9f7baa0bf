"""
Legendre Family Fibers.

Per-fiber arithmetic of E_lambda: y^2 = x (x - 1) (x - lambda).

Convention: #E_lambda(F_q) = q + 1 - a with exactly one point at infinity, so
    a(lambda) = -sum_{y in F_q} chi(y (y - 1) (y - lambda))
with chi the quadratic character of F_q.

The scalar functions here evaluate chi by exponentiation and serve single
fibers. trace_sweep covers every closed point of one degree with the numpy
square table of ffield.FieldTable and fans out over dask.bag partitions.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Any, Dict, List, Optional, Tuple

import dask.bag as db

from unitroot.errors import (
    DegenerateFiber,
    FeatureDisabled,
    HasseDisagreement,
    ProvenIdentityViolation,
)
from unitroot.ffield import (
    ClosedPoint,
    FqContext,
    FqElem,
    closed_points,
    field_table,
    poly_derivative,
    poly_gcd,
    poly_to_digits,
    poly_trim,
)
from unitroot.logger import get_logger
from unitroot.padic import PadicResidue, hensel_unit_root

logger = get_logger("legendre")


class FiberKind(str, Enum):
    ORDINARY = "Ordinary"
    SUPERSINGULAR = "Supersingular"


# ============================================================================
# Hasse polynomial
# ============================================================================

@dataclass(frozen=True)
class HassePolynomial:
    """H_p(lambda) = sum_i C((p-1)/2, i)^2 lambda^i over F_p."""
    p: int
    coeffs: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(poly_trim(self.coeffs)) - 1

    def evaluate(self, ctx: FqContext, lam: FqElem) -> FqElem:
        return ctx.evaluate(self.coeffs, lam)

    def vanishes_at(self, ctx: FqContext, lam: FqElem) -> bool:
        return ctx.is_zero(self.evaluate(ctx, lam))

    def is_squarefree(self) -> bool:
        derivative = poly_derivative(self.coeffs, self.p)
        return poly_gcd(self.coeffs, derivative, self.p) == (1,)

    def __str__(self) -> str:
        return poly_to_digits(self.coeffs)


@lru_cache(maxsize=None)
def hasse_polynomial(p: int) -> HassePolynomial:
    half = (p - 1) // 2
    return HassePolynomial(p, tuple(comb(half, i) ** 2 % p for i in range(half + 1)))


# ============================================================================
# Scalar fiber arithmetic
# ============================================================================

def _require_nondegenerate(ctx: FqContext, lam: FqElem) -> None:
    if lam == ctx.zero or lam == ctx.one:
        raise DegenerateFiber(f"lambda = {lam} gives a singular fiber")


def quadratic_character(ctx: FqContext, u: FqElem) -> int:
    if ctx.is_zero(u):
        return 0
    return 1 if ctx.pow(u, (ctx.q - 1) // 2) == ctx.one else -1


def _legendre_rhs(ctx: FqContext, y: FqElem, lam: FqElem) -> FqElem:
    return ctx.mul(ctx.mul(y, ctx.sub(y, ctx.one)), ctx.sub(y, lam))


def trace_of_frobenius(ctx: FqContext, lam: FqElem) -> int:
    """Frobenius trace of E_lambda over F_q via the character sum."""
    _require_nondegenerate(ctx, lam)
    return -sum(quadratic_character(ctx, _legendre_rhs(ctx, y, lam)) for y in ctx.elements())


def naive_point_count(ctx: FqContext, lam: FqElem) -> int:
    """#E_lambda(F_q) by enumerating (y1, y2) pairs, plus the point at infinity."""
    _require_nondegenerate(ctx, lam)
    square_roots: Dict[FqElem, int] = {}
    for y1 in ctx.elements():
        sq = ctx.mul(y1, y1)
        square_roots[sq] = square_roots.get(sq, 0) + 1
    affine = sum(square_roots.get(_legendre_rhs(ctx, y2, lam), 0) for y2 in ctx.elements())
    return affine + 1


@dataclass(frozen=True)
class FiberZeta:
    """Z(E_lambda, T) = P(T) / ((1 - T)(1 - qT)) with P(T) = 1 - aT + qT^2."""
    trace: int
    q: int

    @property
    def numerator(self) -> Tuple[int, int, int]:
        return (1, -self.trace, self.q)

    @property
    def denominator(self) -> Tuple[int, int, int]:
        return (1, -(1 + self.q), self.q)

    def point_count(self, r: int = 1) -> int:
        """#E(F_{q^r}) from the power sums of the reciprocal roots."""
        # s_n = alpha^n + beta^n via s_n = a s_{n-1} - q s_{n-2}
        s_prev, s_cur = 2, self.trace
        for _ in range(r - 1):
            s_prev, s_cur = s_cur, self.trace * s_cur - self.q * s_prev
        return self.q ** r + 1 - s_cur

    def to_dict(self) -> Dict[str, Any]:
        return {"P": list(self.numerator), "denominator": list(self.denominator)}


def fiber_zeta(ctx: FqContext, lam: FqElem) -> FiberZeta:
    return FiberZeta(trace_of_frobenius(ctx, lam), ctx.q)


def _kind_of_trace(trace: int, p: int) -> FiberKind:
    return FiberKind.SUPERSINGULAR if trace % p == 0 else FiberKind.ORDINARY


def _check_hasse_agreement(ctx: FqContext, lam: FqElem, trace: int) -> FiberKind:
    kind = _kind_of_trace(trace, ctx.p)
    hasse_zero = hasse_polynomial(ctx.p).vanishes_at(ctx, lam)
    if hasse_zero != (kind is FiberKind.SUPERSINGULAR):
        raise HasseDisagreement(
            f"p={ctx.p}, lambda={lam}: trace {trace} gives {kind.value} "
            f"but H(lambda) {'=' if hasse_zero else '!='} 0"
        )
    return kind


def classify(ctx: FqContext, lam: FqElem) -> FiberKind:
    """Ordinary or supersingular; the trace test and the Hasse polynomial must agree."""
    return _check_hasse_agreement(ctx, lam, trace_of_frobenius(ctx, lam))


def unit_root(ctx: FqContext, lam: FqElem, M: int) -> PadicResidue:
    """alpha(lambda) mod p^M, the unit reciprocal root of P(T)."""
    return hensel_unit_root(trace_of_frobenius(ctx, lam), ctx.q, M, ctx.p)


def unit_root_analytic(ctx: FqContext, lam: FqElem, M: int, enabled: bool = False) -> PadicResidue:
    """alpha(lambda) from the hypergeometric unit-root formula.

    Switched off unless ``enabled``; the point-count result is always
    recomputed and must agree.
    """
    if not enabled:
        raise FeatureDisabled("analytic unit root is disabled (features.analytic_unit_root)")

    from unitroot.analytic import analytic_unit_root

    expected = unit_root(ctx, lam, M)
    result = analytic_unit_root(ctx, lam, M)
    if result != expected:
        raise ProvenIdentityViolation(
            f"analytic unit root {result.value} != point-count unit root {expected.value} "
            f"for lambda={lam} mod {ctx.p}^{M}"
        )
    return result


# ============================================================================
# Fiber records
# ============================================================================

@dataclass(frozen=True)
class FiberData:
    """Everything known about one fiber at precision M."""
    point: ClosedPoint
    q: int
    trace: int
    kind: FiberKind
    unit_root: Optional[PadicResidue] = None

    @property
    def zeta(self) -> FiberZeta:
        return FiberZeta(self.trace, self.q)

    def to_dict(self) -> Dict[str, Any]:
        alpha = self.unit_root
        return {
            "lambda": str(self.point.representative),
            "minpoly": self.point.key,
            "degree": self.point.degree,
            "q": self.q,
            "trace": self.trace,
            "kind": self.kind.value,
            **self.zeta.to_dict(),
            "unit_root": None if alpha is None else str(alpha.value),
            "unit_root_modulus": None if alpha is None else f"{alpha.p}^{alpha.modexp}",
        }


def fiber_data(ctx: FqContext, lam: FqElem, M: int, analytic: bool = False) -> FiberData:
    """Trace, kind, P(T) and (for ordinary fibers) the unit root of E_lambda over ctx."""
    trace = trace_of_frobenius(ctx, lam)
    kind = _check_hasse_agreement(ctx, lam, trace)
    minpoly = ctx.minimal_polynomial(lam)
    point = ClosedPoint(len(minpoly) - 1, minpoly, lam)

    alpha = None
    if kind is FiberKind.ORDINARY:
        if analytic:
            alpha = unit_root_analytic(ctx, lam, M, enabled=True)
        else:
            alpha = hensel_unit_root(trace, ctx.q, M, ctx.p)
    return FiberData(point=point, q=ctx.q, trace=trace, kind=kind, unit_root=alpha)


# ============================================================================
# Sweep
# ============================================================================

@dataclass(frozen=True)
class FiberRecord:
    """Trace of one closed point of degree d (over F_{p^d})."""
    point: ClosedPoint
    p: int
    trace: int

    @property
    def q(self) -> int:
        return self.p ** self.point.degree

    @property
    def kind(self) -> FiberKind:
        return _kind_of_trace(self.trace, self.p)


def _partition_traces(ranks, p: int, d: int) -> List[Tuple[int, int]]:
    table = field_table(p, d)
    return [(r, table.trace(table.ctx.from_rank(r))) for r in ranks]


def trace_sweep(p: int, d: int, jobs: int = 1, include_supersingular: bool = False) -> List[FiberRecord]:
    """Traces of all closed points of degree d of A^1 - {0, 1}.

    Supersingular points are dropped unless requested; either way each point
    is cross-checked against the Hasse polynomial.
    """
    excluded = {(0, 1), (p - 1, 1)}
    points = [pt for pt in closed_points(p, d) if pt.minpoly not in excluded]
    if not points:
        return []

    table = field_table(p, d)
    ranks = [table.rank(pt.representative) for pt in points]
    logger.info(f"🔢 Sweeping {len(points)} closed points of degree {d} over F_{p} (jobs={jobs})")

    if jobs <= 1:
        bag = db.from_sequence(ranks, npartitions=1)
        pairs = bag.map_partitions(_partition_traces, p, d).compute(scheduler="synchronous")
    else:
        bag = db.from_sequence(ranks, npartitions=min(len(ranks), jobs * 4))
        pairs = bag.map_partitions(_partition_traces, p, d).compute(
            scheduler="processes", num_workers=jobs
        )

    traces = dict(pairs)
    hasse = hasse_polynomial(p)
    records = []
    for pt, r in zip(points, ranks):
        trace = traces[r]
        kind = _kind_of_trace(trace, p)
        if hasse.vanishes_at(table.ctx, pt.representative) != (kind is FiberKind.SUPERSINGULAR):
            raise HasseDisagreement(
                f"p={p}, point {pt.key}: trace {trace} disagrees with the Hasse polynomial"
            )
        if kind is FiberKind.ORDINARY or include_supersingular:
            records.append(FiberRecord(pt, p, trace))

    logger.debug(f"degree {d}: {len(records)} records kept")
    return records
