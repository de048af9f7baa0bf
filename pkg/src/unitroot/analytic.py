"""
Analytic Unit Root (optional fast path).

For an ordinary lambda of F_q, q = p^d, the unit root is the value of a
p-adic analytic function at the Teichmueller lift omega of lambda:

    alpha(lambda) = prod_{i<d} u(omega^{p^i}),
    u(y) = (-1)^{(p-1)/2} F_M(y) / F_{M-1}(y^p)  mod p^M,

where F(y) = sum_i (C(2i, i) / 4^i)^2 y^i is the Picard-Fuchs solution of the
Legendre family and F_s its truncation below degree p^s.

Arithmetic happens in the unramified ring Z_q / p^M = (Z/p^M)[t] / (f), f the
canonical F_p modulus read with integer coefficients.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from unitroot.errors import ProvenIdentityViolation, SupersingularInput
from unitroot.ffield import FqContext, FqElem
from unitroot.logger import get_logger
from unitroot.padic import PadicResidue

logger = get_logger("analytic")

ZqElem = Tuple[int, ...]


@dataclass(frozen=True)
class ZqContext:
    """Z_q / p^M with elements as length-d integer vectors."""
    field: FqContext
    M: int

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def modulus(self) -> int:
        return self.p ** self.M

    def lift(self, a: FqElem) -> ZqElem:
        return tuple(a.coeffs)

    def reduce(self, a: ZqElem) -> FqElem:
        return self.field.element(a)

    def constant(self, c: int) -> ZqElem:
        return (c % self.modulus,) + (0,) * (self.d - 1)

    def add(self, a: ZqElem, b: ZqElem) -> ZqElem:
        return tuple((x + y) % self.modulus for x, y in zip(a, b))

    def mul(self, a: ZqElem, b: ZqElem) -> ZqElem:
        d, f = self.d, self.field.modulus
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for m in range(2 * d - 2, d - 1, -1):
            c = prod[m]
            if c:
                for i in range(d):
                    prod[m - d + i] -= c * f[i]
        return tuple(c % self.modulus for c in prod[:d])

    def pow(self, a: ZqElem, exponent: int) -> ZqElem:
        result, base = self.constant(1), a
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            exponent >>= 1
        return result

    def inv(self, a: ZqElem) -> ZqElem:
        """Inverse of a unit by Newton iteration from the F_q inverse."""
        x = self.lift(self.field.inv(self.reduce(a)))
        two = self.constant(2)
        prec = 1
        while prec < self.M:
            neg_ax = tuple(-c % self.modulus for c in self.mul(a, x))
            x = self.mul(x, self.add(two, neg_ax))
            prec *= 2
        return x

    def teichmuller(self, a: FqElem) -> ZqElem:
        """The (q-1)-th root of unity reducing to a (a != 0)."""
        x = self.lift(a)
        for _ in range(self.M):
            x = self.pow(x, self.field.q)
        return x

    def evaluate(self, coeffs: Sequence[int], y: ZqElem) -> ZqElem:
        acc = self.constant(0)
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, y), self.constant(c))
        return acc

    def truncation(self, s: int) -> Tuple[int, ...]:
        return hypergeometric_coeffs(self.p, self.M)[: self.p ** s]


def _strip(n: int, p: int) -> Tuple[int, int]:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return n, e


@lru_cache(maxsize=16)
def hypergeometric_coeffs(p: int, M: int) -> Tuple[int, ...]:
    """
    (C(2i, i) / 4^i)^2 mod p^M for i < p^M.

    C(2i, i) = C(2i - 2, i - 1) * 2(2i - 1) / i is carried as unit * p^e, so the
    division by i never leaves Z / p^M.
    """
    modulus = p ** M
    inv16 = pow(16, -1, modulus)
    unit, e, scale = 1, 0, 1
    coeffs = [1]
    for i in range(1, p ** M):
        num, e_num = _strip(2 * (2 * i - 1), p)
        den, e_den = _strip(i, p)
        unit = unit * num * pow(den, -1, modulus) % modulus
        e += e_num - e_den
        scale = scale * inv16 % modulus
        coeffs.append(unit * unit * pow(p, 2 * e, modulus) * scale % modulus)
    return tuple(coeffs)


def _local_unit_root(zq: ZqContext, y: ZqElem) -> ZqElem:
    sign = -1 if (zq.p - 1) // 2 % 2 else 1
    top = zq.evaluate(zq.truncation(zq.M), y)
    bottom = zq.evaluate(zq.truncation(zq.M - 1), zq.pow(y, zq.p))
    if not any(c % zq.p for c in bottom):
        raise SupersingularInput("Hasse invariant vanishes at the Teichmueller lift")
    ratio = zq.mul(top, zq.inv(bottom))
    return tuple(sign * c % zq.modulus for c in ratio)


def analytic_unit_root(ctx: FqContext, lam: FqElem, M: int) -> PadicResidue:
    """Unit root of E_lambda over ctx mod p^M via Teichmueller lift and the hypergeometric ratio."""
    zq = ZqContext(ctx, M)
    omega = zq.teichmuller(lam)

    alpha = zq.constant(1)
    conjugate = omega
    for _ in range(ctx.d):
        alpha = zq.mul(alpha, _local_unit_root(zq, conjugate))
        conjugate = zq.pow(conjugate, ctx.p)

    if any(alpha[1:]):
        raise ProvenIdentityViolation(f"norm of the local unit roots at lambda={lam} is not in Z_p")
    logger.debug(f"analytic unit root at {lam}: {alpha[0]} mod {ctx.p}^{M}")
    return PadicResidue(alpha[0], ctx.p, M)
