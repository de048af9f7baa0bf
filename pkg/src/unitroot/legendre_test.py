"""
Legendre fibers: traces, Hasse polynomial, zeta functions, unit roots, sweep.
"""

import pytest

from unitroot.errors import DegenerateFiber, FeatureDisabled
from unitroot.ffield import canonical_context, closed_points, field_table
from unitroot.legendre import (
    FiberKind,
    classify,
    fiber_data,
    fiber_zeta,
    hasse_polynomial,
    naive_point_count,
    quadratic_character,
    trace_of_frobenius,
    trace_sweep,
    unit_root,
    unit_root_analytic,
)
from unitroot.padic import PadicResidue, residue_pow


# 1️⃣ Oracle suite: character sum vs enumeration, Hasse bound, Hasse polynomial

@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_trace_oracles(p, d):
    table = field_table(p, d)
    ctx = table.ctx
    hasse = hasse_polynomial(p)
    for pt in closed_points(p, d):
        lam = pt.representative
        if lam in (ctx.zero, ctx.one):
            continue
        a = table.trace(lam)
        assert naive_point_count(ctx, lam) == ctx.q + 1 - a
        assert a * a <= 4 * ctx.q
        assert (a % p == 0) == hasse.vanishes_at(ctx, lam)


@pytest.mark.parametrize("p, d", [(3, 2), (5, 1), (5, 2), (7, 1)])
def test_scalar_trace_matches_table(p, d):
    table = field_table(p, d)
    ctx = table.ctx
    for lam in ctx.elements():
        if lam in (ctx.zero, ctx.one):
            continue
        assert trace_of_frobenius(ctx, lam) == table.trace(lam)


def test_degenerate_fibers():
    ctx = canonical_context(5, 1)
    with pytest.raises(DegenerateFiber):
        trace_of_frobenius(ctx, ctx.zero)
    with pytest.raises(DegenerateFiber):
        naive_point_count(ctx, ctx.one)


# 2️⃣ Named values

def test_named_traces():
    assert trace_of_frobenius(canonical_context(5, 1), canonical_context(5, 1).from_int(2)) == -2
    assert trace_of_frobenius(canonical_context(3, 1), canonical_context(3, 1).from_int(2)) == 0


def test_named_unit_root():
    ctx = canonical_context(5, 1)
    assert unit_root(ctx, ctx.from_int(2), 2) == PadicResidue(13, 5, 2)


def test_hasse_polynomials():
    assert hasse_polynomial(5).coeffs == (1, 4, 1)
    assert hasse_polynomial(7).coeffs == (1, 2, 2, 1)
    assert hasse_polynomial(3).coeffs == (1, 1)
    for p in (3, 5, 7, 11, 13):
        hasse = hasse_polynomial(p)
        assert hasse.degree == (p - 1) // 2
        assert hasse.is_squarefree()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_supersingular_count(p):
    # every supersingular lambda lies in F_{p^2}
    total = 0
    for d in (1, 2):
        records = trace_sweep(p, d, include_supersingular=True)
        total += sum(d for rec in records if rec.kind is FiberKind.SUPERSINGULAR)
    assert total == (p - 1) // 2


# 3️⃣ Symmetries and base change

@pytest.mark.parametrize("p", [5, 7, 11])
def test_lambda_symmetries(p):
    ctx = canonical_context(p, 1)
    for c in range(2, p):
        lam = ctx.from_int(c)
        a = trace_of_frobenius(ctx, lam)
        chi_minus_one = quadratic_character(ctx, ctx.from_int(-1))
        assert trace_of_frobenius(ctx, ctx.sub(ctx.one, lam)) == chi_minus_one * a
        assert trace_of_frobenius(ctx, ctx.inv(lam)) == quadratic_character(ctx, lam) * a


@pytest.mark.parametrize("p", [3, 5, 7])
def test_trace_over_quadratic_extension(p):
    ctx1, ctx2 = canonical_context(p, 1), canonical_context(p, 2)
    for c in range(2, p):
        a = trace_of_frobenius(ctx1, ctx1.from_int(c))
        assert trace_of_frobenius(ctx2, ctx2.from_int(c)) == a * a - 2 * p


@pytest.mark.parametrize("p", [5, 7])
def test_unit_root_over_quadratic_extension(p):
    ctx1, ctx2 = canonical_context(p, 1), canonical_context(p, 2)
    M = 4
    for c in range(2, p):
        if trace_of_frobenius(ctx1, ctx1.from_int(c)) % p == 0:
            continue
        alpha = unit_root(ctx1, ctx1.from_int(c), M)
        assert unit_root(ctx2, ctx2.from_int(c), M) == residue_pow(alpha, 2)


def test_fiber_zeta():
    ctx = canonical_context(5, 1)
    zeta = fiber_zeta(ctx, ctx.from_int(2))
    assert zeta.numerator == (1, 2, 5)
    assert zeta.point_count(1) == 8
    # a^2 - 2q = -6 over F_25
    assert zeta.point_count(2) == 32
    ctx2 = canonical_context(5, 2)
    assert naive_point_count(ctx2, ctx2.from_int(2)) == 32


# 4️⃣ Fiber data

def test_fiber_data_p5_lambda2():
    ctx = canonical_context(5, 1)
    data = fiber_data(ctx, ctx.from_int(2), 2)
    out = data.to_dict()
    assert out["trace"] == -2
    assert out["kind"] == "Ordinary"
    assert out["P"] == [1, 2, 5]
    assert out["denominator"] == [1, -6, 5]
    assert out["unit_root"] == "13"
    assert out["unit_root_modulus"] == "5^2"
    assert out["minpoly"] == "3.1"


def test_fiber_data_supersingular_has_no_unit_root():
    ctx = canonical_context(3, 1)
    data = fiber_data(ctx, ctx.from_int(2), 3)
    assert data.kind is FiberKind.SUPERSINGULAR
    assert data.unit_root is None
    assert classify(ctx, ctx.from_int(2)) is FiberKind.SUPERSINGULAR


def test_fiber_data_over_extension_reports_point_degree():
    ctx = canonical_context(5, 2)
    data = fiber_data(ctx, ctx.from_int(2), 1)
    assert data.point.degree == 1
    assert data.q == 25
    assert data.trace == -6


# 5️⃣ Analytic unit root

def test_analytic_unit_root_is_off_by_default():
    ctx = canonical_context(5, 1)
    with pytest.raises(FeatureDisabled):
        unit_root_analytic(ctx, ctx.from_int(2), 2)


@pytest.mark.parametrize("p, d", [(5, 1), (7, 1), (5, 2), (3, 2)])
def test_analytic_unit_root_agrees(p, d):
    ctx = canonical_context(p, d)
    for pt in closed_points(p, d)[:6]:
        lam = pt.representative
        if lam in (ctx.zero, ctx.one) or classify(ctx, lam) is FiberKind.SUPERSINGULAR:
            continue
        assert unit_root_analytic(ctx, lam, 3, enabled=True) == unit_root(ctx, lam, 3)


# 6️⃣ Sweep

def test_sweep_p5_degree_one():
    records = trace_sweep(5, 1)
    assert [(rec.point.key, rec.trace) for rec in records] == [("1.1", -2), ("2.1", 2), ("3.1", -2)]


def test_sweep_is_independent_of_jobs():
    serial = trace_sweep(5, 2, jobs=1)
    parallel = trace_sweep(5, 2, jobs=2)
    assert serial == parallel
    assert len(serial) == 9
