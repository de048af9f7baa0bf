"""
Finite Fields F_{p^d} and Closed Points of the Affine Line.

Elements are dense coefficient vectors (constant term first) modulo a fixed
monic irreducible. One canonical context per (p, d): its modulus is the
lexicographically smallest monic irreducible of degree d.

Two layers:
    - FqContext: scalar arithmetic on FqElem values (pure Python)
    - FieldTable: numpy tables over all q elements, used by the sweeps
      (Frobenius permutation, quadratic character via a square table)

Polynomials serialize as dot-joined base-p digits, constant term first:
t^2 + 1 over F_3 is "1.0.1".
"""

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from sympy import divisors, factorint

from unitroot.errors import DivisionByZero
from unitroot.logger import get_logger

logger = get_logger("ffield")

Poly = Tuple[int, ...]


# ============================================================================
# Polynomials over F_p (tuples, constant term first)
# ============================================================================

def poly_trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_to_digits(poly: Sequence[int]) -> str:
    return ".".join(str(c) for c in poly)


def poly_from_digits(text: str, p: int) -> Poly:
    coeffs = tuple(int(part) for part in text.strip().split("."))
    if any(not 0 <= c < p for c in coeffs):
        raise ValueError(f"digits of {text!r} must lie in [0, {p})")
    return coeffs


def poly_sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    a = tuple(a) + (0,) * (n - len(a))
    b = tuple(b) + (0,) * (n - len(b))
    return poly_trim((x - y) % p for x, y in zip(a, b))


def poly_mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(c % p for c in out)


def poly_divmod(a: Poly, f: Poly, p: int) -> Tuple[Poly, Poly]:
    a = list(poly_trim(a))
    f = poly_trim(f)
    if not f:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(f[-1], -1, p)
    quot = [0] * max(len(a) - len(f) + 1, 0)
    while len(a) >= len(f) and a:
        shift = len(a) - len(f)
        factor = a[-1] * inv_lead % p
        quot[shift] = factor
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a = list(poly_trim(a))
    return poly_trim(quot), tuple(a)


def poly_mod(a: Poly, f: Poly, p: int) -> Poly:
    return poly_divmod(a, f, p)[1]


def poly_gcd(a: Poly, b: Poly, p: int) -> Poly:
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if not a:
        return ()
    inv_lead = pow(a[-1], -1, p)
    return tuple(c * inv_lead % p for c in a)


def poly_powmod(base: Poly, exponent: int, f: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = poly_mod(base, f, p)
    while exponent:
        if exponent & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        exponent >>= 1
    return result


def poly_derivative(a: Poly, p: int) -> Poly:
    return poly_trim((i * c) % p for i, c in enumerate(a) if i > 0)


def is_irreducible(f: Poly, p: int) -> bool:
    """Ben-Or test: gcd(t^{p^i} - t, f) = 1 for all i <= deg f / 2."""
    f = poly_trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    t = (0, 1)
    power = t
    for _ in range(d // 2):
        power = poly_powmod(power, p, f, p)
        if poly_gcd(poly_sub(power, t, p), f, p) != (1,):
            return False
    return True


def monic_polynomials(p: int, d: int):
    """All monic polynomials of degree d, in lexicographic order."""
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def irreducible_count(p: int, d: int) -> int:
    """(1/d) * sum_{e | d} mu(e) p^{d/e}."""
    total = 0
    for e in divisors(d):
        factors = factorint(e)
        if any(mult > 1 for mult in factors.values()):
            continue
        total += (-1) ** len(factors) * p ** (d // e)
    return total // d


@lru_cache(maxsize=None)
def canonical_modulus(p: int, d: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree d."""
    for f in monic_polynomials(p, d):
        if is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible of degree {d} over F_{p}")


# ============================================================================
# Scalar field arithmetic
# ============================================================================

@dataclass(frozen=True)
class FqElem:
    """Element of F_{p^d}: coefficient vector of length d, constant term first."""
    coeffs: Tuple[int, ...]

    def __str__(self) -> str:
        return poly_to_digits(self.coeffs)


@dataclass(frozen=True)
class FqContext:
    """F_p[t] / (modulus) with modulus monic irreducible of degree d."""
    p: int
    d: int
    modulus: Poly

    def __post_init__(self):
        if len(self.modulus) != self.d + 1 or self.modulus[-1] != 1:
            raise ValueError(f"modulus {self.modulus} is not monic of degree {self.d}")
        if not is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {poly_to_digits(self.modulus)} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.d

    @cached_property
    def _reductions(self) -> Tuple[Tuple[int, ...], ...]:
        """Coefficients of t^m mod modulus for m = 0 .. 2d-2."""
        rows = []
        for m in range(2 * self.d - 1):
            mono = (0,) * m + (1,)
            rows.append(self._pad(poly_mod(mono, self.modulus, self.p)))
        return tuple(rows)

    def _pad(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        coeffs = tuple(coeffs)
        return coeffs + (0,) * (self.d - len(coeffs))

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    def element(self, coeffs: Sequence[int]) -> FqElem:
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) > self.d:
            coeffs = poly_mod(coeffs, self.modulus, self.p)
        return FqElem(self._pad(coeffs))

    def from_int(self, c: int) -> FqElem:
        return FqElem(self._pad((c % self.p,)))

    def parse(self, text: str) -> FqElem:
        return self.element(poly_from_digits(text, self.p))

    @property
    def zero(self) -> FqElem:
        return FqElem((0,) * self.d)

    @property
    def one(self) -> FqElem:
        return self.from_int(1)

    @property
    def generator(self) -> FqElem:
        """The class of t."""
        return self.element((0, 1))

    def rank(self, a: FqElem) -> int:
        """Lexicographic rank of a (constant term most significant)."""
        r = 0
        for c in a.coeffs:
            r = r * self.p + c
        return r

    def from_rank(self, r: int) -> FqElem:
        coeffs = []
        for _ in range(self.d):
            coeffs.append(r % self.p)
            r //= self.p
        return FqElem(tuple(reversed(coeffs)))

    def elements(self):
        for r in range(self.q):
            yield self.from_rank(r)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def add(self, a: FqElem, b: FqElem) -> FqElem:
        return FqElem(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FqElem, b: FqElem) -> FqElem:
        return FqElem(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FqElem) -> FqElem:
        return FqElem(tuple(-x % self.p for x in a.coeffs))

    def mul(self, a: FqElem, b: FqElem) -> FqElem:
        prod = [0] * (2 * self.d - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        out = [0] * self.d
        for m, c in enumerate(prod):
            if c:
                for i, r in enumerate(self._reductions[m]):
                    out[i] += c * r
        return FqElem(tuple(c % self.p for c in out))

    def pow(self, a: FqElem, exponent: int) -> FqElem:
        if exponent < 0:
            return self.pow(self.inv(a), -exponent)
        result, base = self.one, a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    def inv(self, a: FqElem) -> FqElem:
        if self.is_zero(a):
            raise DivisionByZero(f"0 has no inverse in F_{self.q}")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: FqElem) -> FqElem:
        return self.pow(a, self.p)

    def is_zero(self, a: FqElem) -> bool:
        return not any(a.coeffs)

    def evaluate(self, poly: Sequence[int], x: FqElem) -> FqElem:
        """Value at x of a polynomial with F_p coefficients."""
        acc = self.zero
        for c in reversed(tuple(poly)):
            acc = self.add(self.mul(acc, x), self.from_int(c))
        return acc

    def conjugates(self, a: FqElem) -> List[FqElem]:
        """Frobenius orbit of a, starting with a itself."""
        orbit = [a]
        nxt = self.frobenius(a)
        while nxt != a:
            orbit.append(nxt)
            nxt = self.frobenius(nxt)
        return orbit

    def minimal_polynomial(self, a: FqElem) -> Poly:
        """prod over conjugates c of (t - c), with F_p coefficients."""
        coeffs = [self.one]
        for c in self.conjugates(a):
            shifted = [self.zero] + coeffs
            for i in range(len(coeffs)):
                shifted[i] = self.sub(shifted[i], self.mul(c, coeffs[i]))
            coeffs = shifted
        for elem in coeffs:
            if any(elem.coeffs[1:]):
                raise AssertionError(f"minimal polynomial of {a} left F_{self.p}")
        return tuple(elem.coeffs[0] for elem in coeffs)


@lru_cache(maxsize=None)
def canonical_context(p: int, d: int) -> FqContext:
    return FqContext(p, d, canonical_modulus(p, d))


def fq_arith(ctx: FqContext, op: str, a: FqElem, b=None) -> FqElem:
    """Dispatch one field operation: mul, inv, frobenius or pow."""
    if op == "mul":
        return ctx.mul(a, b)
    elif op == "inv":
        return ctx.inv(a)
    elif op == "frobenius":
        return ctx.frobenius(a)
    elif op == "pow":
        return ctx.pow(a, int(b))
    raise ValueError(f"unknown field operation {op!r}")


# ============================================================================
# Vectorized tables
# ============================================================================

class FieldTable:
    """numpy view of all q elements of one FqContext, indexed by lex rank."""

    def __init__(self, ctx: FqContext):
        self.ctx = ctx
        p, d = ctx.p, ctx.d
        self.q = ctx.q
        self.weights = np.array([p ** (d - 1 - i) for i in range(d)], dtype=np.int64)
        ranks = np.arange(self.q, dtype=np.int64)
        self.digits = (ranks[:, None] // self.weights[None, :]) % p

    def ranks_of(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self.weights

    def rank(self, a: FqElem) -> int:
        return self.ctx.rank(a)

    @cached_property
    def frobenius_map(self) -> np.ndarray:
        """Permutation r -> rank(frobenius(element r))."""
        t_p = self.ctx.frobenius(self.ctx.generator)
        rows = [self.ctx.pow(t_p, i).coeffs for i in range(self.ctx.d)]
        phi = np.array(rows, dtype=np.int64)
        return self.ranks_of((self.digits @ phi) % self.ctx.p)

    @cached_property
    def squares(self) -> np.ndarray:
        """Rank of y^2 for every rank y."""
        p, d = self.ctx.p, self.ctx.d
        red = np.array(self.ctx._reductions, dtype=np.int64)
        out = np.zeros_like(self.digits)
        for m in range(2 * d - 1):
            conv = np.zeros(self.q, dtype=np.int64)
            for i in range(max(0, m - d + 1), min(m, d - 1) + 1):
                conv += self.digits[:, i] * self.digits[:, m - i]
            out += (conv % p)[:, None] * red[m][None, :]
        return self.ranks_of(out % p)

    @cached_property
    def chi(self) -> np.ndarray:
        """Quadratic character by rank: 0 at zero, +1 on squares, -1 otherwise."""
        table = np.full(self.q, -1, dtype=np.int64)
        table[self.squares] = 1
        table[0] = 0
        return table

    def shifted_ranks(self, a: FqElem) -> np.ndarray:
        """Rank of y - a for every rank y."""
        offset = np.array(a.coeffs, dtype=np.int64)
        return self.ranks_of((self.digits - offset[None, :]) % self.ctx.p)

    @cached_property
    def _chi_y_y_minus_one(self) -> np.ndarray:
        return self.chi * self.chi[self.shifted_ranks(self.ctx.one)]

    def trace(self, lam: FqElem) -> int:
        """a(lambda) = -sum_y chi(y (y - 1) (y - lambda))."""
        return -int(np.dot(self._chi_y_y_minus_one, self.chi[self.shifted_ranks(lam)]))

    def subfield_mask(self) -> np.ndarray:
        """True for elements lying in a proper subfield of F_{p^d}."""
        d = self.ctx.d
        mask = np.zeros(self.q, dtype=bool)
        ranks = np.arange(self.q, dtype=np.int64)
        for e in divisors(d):
            if e == d:
                continue
            image = ranks
            for _ in range(e):
                image = self.frobenius_map[image]
            mask |= image == ranks
        return mask

    def orbit_minima(self) -> np.ndarray:
        ranks = np.arange(self.q, dtype=np.int64)
        current, minima = ranks, ranks.copy()
        for _ in range(self.ctx.d - 1):
            current = self.frobenius_map[current]
            np.minimum(minima, current, out=minima)
        return minima


@lru_cache(maxsize=16)
def field_table(p: int, d: int) -> FieldTable:
    return FieldTable(canonical_context(p, d))


# ============================================================================
# Closed points
# ============================================================================

@dataclass(frozen=True)
class ClosedPoint:
    """A Galois orbit of F_{p^d}, keyed by its minimal polynomial."""
    degree: int
    minpoly: Poly
    representative: FqElem

    @property
    def key(self) -> str:
        return poly_to_digits(self.minpoly)


def closed_points(p: int, d: int) -> List[ClosedPoint]:
    """All closed points of degree d of A^1, sorted by minimal polynomial.

    The representative is the lexicographically smallest root.
    """
    table = field_table(p, d)
    ctx = table.ctx
    ranks = np.arange(table.q, dtype=np.int64)
    if d == 1:
        reps = ranks
    else:
        reps = ranks[(~table.subfield_mask()) & (table.orbit_minima() == ranks)]

    points = []
    for r in reps.tolist():
        rep = ctx.from_rank(r)
        points.append(ClosedPoint(d, ctx.minimal_polynomial(rep), rep))
    points.sort(key=lambda pt: pt.minpoly)
    logger.debug(f"F_{p}^{d}: {len(points)} closed points")
    return points


def enumerate_irreducibles(p: int, d: int) -> List[Poly]:
    """Monic irreducibles of degree d over F_p, sorted lexicographically."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    return [pt.minpoly for pt in closed_points(p, d)]


def points_of_X(p: int, d: int, hasse) -> List[ClosedPoint]:
    """Closed points of degree d of A^1 - {0, 1, H = 0}."""
    hasse_coeffs = tuple(getattr(hasse, "coeffs", hasse))
    ctx = canonical_context(p, d)
    excluded = {(0, 1), (p - 1, 1)}
    return [
        pt
        for pt in closed_points(p, d)
        if pt.minpoly not in excluded
        and not ctx.is_zero(ctx.evaluate(hasse_coeffs, pt.representative))
    ]
