"""
Residue arithmetic, valuations and Hensel unit roots.
"""

import random

import pytest

from unitroot.errors import InvalidPrimeContext, NonUnitNegativePower, SupersingularInput
from unitroot.padic import (
    AtLeast,
    Exact,
    PadicResidue,
    PrimeContext,
    hensel_unit_root,
    residue_pow,
    val,
)


# 1️⃣ PrimeContext validation

@pytest.mark.parametrize("p, M, N", [(2, 1, 0), (9, 1, 0), (1, 1, 0), (5, 0, 0), (5, 1, -1)])
def test_prime_context_rejects_bad_parameters(p, M, N):
    with pytest.raises(InvalidPrimeContext):
        PrimeContext(p, M, N)


def test_prime_context_modulus():
    assert PrimeContext(5, 3, 2).modulus == 125


# 2️⃣ Valuations

def test_val_exact_and_at_least():
    assert val(PadicResidue(50, 5, 3)) == Exact(2)
    assert val(PadicResidue(7, 5, 3)) == Exact(0)
    assert val(PadicResidue(0, 5, 3)) == AtLeast(3)


def test_residue_range_is_enforced():
    with pytest.raises(ValueError):
        PadicResidue(25, 5, 2)
    assert PadicResidue.of(-1, 5, 2).value == 24


def test_reduce_never_raises_precision():
    r = PadicResidue(13, 5, 2)
    assert r.reduce(1) == PadicResidue(3, 5, 1)
    with pytest.raises(ValueError):
        r.reduce(3)


def test_mixed_moduli_do_not_add():
    with pytest.raises(ValueError):
        PadicResidue(1, 5, 2) * PadicResidue(1, 5, 3)


# 3️⃣ Hensel lift

def test_unit_root_p5_lambda2():
    alpha = hensel_unit_root(-2, 5, 2)
    assert alpha == PadicResidue(13, 5, 2)


@pytest.mark.parametrize("p, a, M", [(5, -2, 6), (7, 4, 5), (3, 1, 8), (5, 3, 4), (7, -1, 3)])
def test_unit_root_solves_quadratic(p, a, M):
    alpha = hensel_unit_root(a, p, M)
    mod = p ** M
    assert (alpha.value ** 2 - a * alpha.value + p) % mod == 0
    assert alpha.is_unit()
    assert alpha.value % p == a % p


def test_unit_root_over_extension_field():
    # q = 25, a = 6: roots of T^2 - 6T + 25 mod 5^4
    alpha = hensel_unit_root(6, 25, 4, p=5)
    assert (alpha.value ** 2 - 6 * alpha.value + 25) % 625 == 0
    assert alpha.value % 5 == 1


def test_unit_root_is_stable_under_precision():
    high = hensel_unit_root(-2, 5, 5)
    assert high.reduce(2) == hensel_unit_root(-2, 5, 2)


def test_supersingular_trace_is_rejected():
    with pytest.raises(SupersingularInput):
        hensel_unit_root(0, 3, 2)
    with pytest.raises(SupersingularInput):
        hensel_unit_root(5, 5, 2)


# 4️⃣ Powers

def test_residue_pow_negative_exponent():
    a = PadicResidue(13, 5, 2)
    inv = residue_pow(a, -1)
    assert (inv.value * 13) % 25 == 1
    assert residue_pow(a, 0) == PadicResidue(1, 5, 2)


def test_residue_pow_non_unit_negative_exponent():
    with pytest.raises(NonUnitNegativePower):
        residue_pow(PadicResidue(10, 5, 2), -2)


def test_residue_pow_inverse_pairs():
    rng = random.Random(11)
    for _ in range(200):
        a = PadicResidue.of(rng.randrange(1, 5 ** 4), 5, 4)
        if not a.is_unit():
            continue
        k = rng.randint(-40, 40)
        assert residue_pow(a, k) * residue_pow(a, -k) == PadicResidue(1, 5, 4)


# 5️⃣ Valuation additivity and root uniqueness

def test_val_is_additive_below_the_modulus():
    rng = random.Random(3)
    for _ in range(500):
        a = PadicResidue.of(rng.randrange(1, 5 ** 6), 5, 6)
        b = PadicResidue.of(rng.randrange(1, 5 ** 6), 5, 6)
        va, vb = val(a), val(b)
        if va.v + vb.v < 6:
            assert val(a * b) == Exact(va.v + vb.v)
        else:
            assert val(a * b) == AtLeast(6)


@pytest.mark.parametrize("p, q, a, M", [(5, 5, -2, 4), (7, 7, 4, 3), (3, 9, 2, 6), (5, 25, 6, 3)])
def test_unit_root_is_the_only_unit_solution(p, q, a, M):
    mod = p ** M
    units = [x for x in range(mod) if x % p and (x * x - a * x + q) % mod == 0]
    assert units == [hensel_unit_root(a, q, M, p=p).value]
