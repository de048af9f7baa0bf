"""
Finite field arithmetic, canonical moduli and closed points.
"""

import random

import pytest

from unitroot.errors import DivisionByZero
from unitroot.ffield import (
    FqContext,
    canonical_context,
    canonical_modulus,
    closed_points,
    enumerate_irreducibles,
    field_table,
    fq_arith,
    irreducible_count,
    is_irreducible,
    points_of_X,
    poly_from_digits,
    poly_to_digits,
)
from unitroot.legendre import hasse_polynomial


# 1️⃣ Polynomials and moduli

def test_digit_round_trip():
    assert poly_to_digits((1, 0, 1)) == "1.0.1"
    assert poly_from_digits("1.0.1", 3) == (1, 0, 1)
    with pytest.raises(ValueError):
        poly_from_digits("3.1", 3)


def test_canonical_moduli():
    assert canonical_modulus(3, 2) == (1, 0, 1)
    assert canonical_modulus(5, 2) == (1, 1, 1)
    assert canonical_modulus(7, 1) == (0, 1)


def test_irreducibility():
    assert is_irreducible((1, 0, 1), 3)
    assert not is_irreducible((1, 0, 1), 5)
    assert not is_irreducible((0, 0, 1), 7)


def test_context_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        FqContext(5, 2, (1, 0, 1))


@pytest.mark.parametrize("p, d, count", [(3, 1, 3), (3, 2, 3), (3, 3, 8), (5, 2, 10), (7, 3, 112)])
def test_irreducible_counts(p, d, count):
    assert irreducible_count(p, d) == count
    polys = enumerate_irreducibles(p, d)
    assert len(polys) == count
    assert polys == sorted(polys)
    assert all(is_irreducible(f, p) for f in polys)


# 2️⃣ Scalar arithmetic

def test_field_axioms_f9():
    ctx = canonical_context(3, 2)
    nonzero = [a for a in ctx.elements() if not ctx.is_zero(a)]
    assert len(nonzero) == 8
    for a in nonzero:
        assert ctx.mul(a, ctx.inv(a)) == ctx.one
        assert ctx.pow(a, ctx.q - 1) == ctx.one


def test_zero_has_no_inverse():
    ctx = canonical_context(5, 2)
    with pytest.raises(DivisionByZero):
        ctx.inv(ctx.zero)


def test_frobenius_fixes_prime_field():
    ctx = canonical_context(5, 3)
    for c in range(5):
        assert ctx.frobenius(ctx.from_int(c)) == ctx.from_int(c)
    t = ctx.generator
    assert ctx.pow(t, ctx.q) == t
    assert fq_arith(ctx, "frobenius", t) != t


@pytest.mark.parametrize("p, d", [(5, 3), (3, 4), (7, 2)])
def test_frobenius_has_order_d(p, d):
    ctx = canonical_context(p, d)
    rng = random.Random(p * 10 + d)
    for _ in range(25):
        a = ctx.from_rank(rng.randrange(ctx.q))
        image = a
        for _ in range(d):
            image = ctx.frobenius(image)
        assert image == a


def test_fq_arith_dispatch():
    ctx = canonical_context(3, 2)
    t = ctx.generator
    assert fq_arith(ctx, "mul", t, t) == ctx.from_int(-1)
    assert fq_arith(ctx, "pow", t, 4) == ctx.one
    assert fq_arith(ctx, "inv", t) == ctx.neg(t)
    with pytest.raises(ValueError):
        fq_arith(ctx, "sqrt", t)


def test_minimal_polynomial_of_generator_is_modulus():
    for p, d in [(3, 2), (5, 2), (3, 3)]:
        ctx = canonical_context(p, d)
        assert ctx.minimal_polynomial(ctx.generator) == ctx.modulus


def test_rank_round_trip():
    ctx = canonical_context(3, 3)
    assert [ctx.rank(a) for a in ctx.elements()] == list(range(27))


# 3️⃣ Tables

def test_square_table_matches_scalar_squares():
    table = field_table(5, 2)
    ctx = table.ctx
    for r in range(ctx.q):
        a = ctx.from_rank(r)
        assert table.squares[r] == ctx.rank(ctx.mul(a, a))


def test_frobenius_table_matches_scalar_frobenius():
    table = field_table(3, 3)
    ctx = table.ctx
    for r in range(ctx.q):
        assert table.frobenius_map[r] == ctx.rank(ctx.frobenius(ctx.from_rank(r)))


def test_chi_counts():
    table = field_table(7, 2)
    assert int((table.chi == 1).sum()) == (49 - 1) // 2
    assert int((table.chi == -1).sum()) == (49 - 1) // 2
    assert table.chi[0] == 0


# 4️⃣ Closed points

def test_closed_points_have_exact_degree():
    for pt in closed_points(3, 3):
        assert pt.degree == 3
        assert len(pt.minpoly) == 4
        assert canonical_context(3, 3).minimal_polynomial(pt.representative) == pt.minpoly


def test_points_of_X_p5():
    hasse = hasse_polynomial(5)
    assert [pt.key for pt in points_of_X(5, 1, hasse)] == ["1.1", "2.1", "3.1"]
    assert len(points_of_X(5, 2, hasse)) == 9


def test_points_of_X_p3_excludes_supersingular():
    # H_3 = 1 + lambda vanishes at lambda = 2
    hasse = hasse_polynomial(3)
    assert points_of_X(3, 1, hasse) == []
    assert len(points_of_X(3, 2, hasse.coeffs)) == 3


def test_points_of_X_p7():
    hasse = hasse_polynomial(7)
    points = points_of_X(7, 1, hasse)
    ctx = canonical_context(7, 1)
    assert [pt.representative for pt in points] == [ctx.from_int(5), ctx.from_int(3)]
    assert [pt.key for pt in points] == ["2.1", "4.1"]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_points_of_X_counts(p):
    # the (p - 1) / 2 supersingular lambdas all lie in F_{p^2}
    hasse = hasse_polynomial(p)
    roots_deg1 = irreducible_count(p, 1) - 2 - len(points_of_X(p, 1, hasse))
    roots_deg2 = irreducible_count(p, 2) - len(points_of_X(p, 2, hasse))
    assert roots_deg1 >= 0 and roots_deg2 >= 0
    assert roots_deg1 + 2 * roots_deg2 == (p - 1) // 2
    assert len(points_of_X(p, 3, hasse)) == irreducible_count(p, 3)
