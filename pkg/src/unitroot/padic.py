"""
Residues modulo p^M.

The whole pipeline works with one uniform modulus p^M. Valuation information
beyond M is reported as AtLeast(M) and never guessed.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from sympy import isprime, primefactors

from unitroot.errors import InvalidPrimeContext, NonUnitNegativePower, SupersingularInput

SlopeRational = Fraction


# ============================================================================
# Data Models
# ============================================================================

@dataclass(frozen=True)
class PrimeContext:
    """Global parameters: odd prime p, precision exponent M, T-degree N."""
    p: int
    M: int
    N: int

    def __post_init__(self):
        if self.p < 3 or not isprime(self.p):
            raise InvalidPrimeContext(f"p must be an odd prime, got {self.p}")
        if self.M < 1:
            raise InvalidPrimeContext(f"M must be >= 1, got {self.M}")
        if self.N < 0:
            raise InvalidPrimeContext(f"N must be >= 0, got {self.N}")

    @property
    def modulus(self) -> int:
        return self.p ** self.M


@dataclass(frozen=True)
class Exact:
    """Valuation known exactly: p^v divides the residue, p^(v+1) does not."""
    v: int


@dataclass(frozen=True)
class AtLeast:
    """Residue is zero mod p^modexp; the valuation is at least modexp."""
    modexp: int


ValInfo = Union[Exact, AtLeast]


@dataclass(frozen=True)
class PadicResidue:
    """An integer residue modulo p^modexp."""
    value: int
    p: int
    modexp: int

    def __post_init__(self):
        if not 0 <= self.value < self.p ** self.modexp:
            raise ValueError(
                f"residue {self.value} outside [0, {self.p}^{self.modexp})"
            )

    @classmethod
    def of(cls, value: int, p: int, modexp: int) -> "PadicResidue":
        return cls(value % p ** modexp, p, modexp)

    @property
    def modulus(self) -> int:
        return self.p ** self.modexp

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def reduce(self, modexp: int) -> "PadicResidue":
        if modexp > self.modexp:
            raise ValueError(f"cannot raise precision from {self.modexp} to {modexp}")
        return PadicResidue(self.value % self.p ** modexp, self.p, modexp)

    def _check(self, other: "PadicResidue"):
        if (self.p, self.modexp) != (other.p, other.modexp):
            raise ValueError(
                f"residues mod {self.p}^{self.modexp} and {other.p}^{other.modexp} do not mix"
            )

    def __mul__(self, other: "PadicResidue") -> "PadicResidue":
        self._check(other)
        return PadicResidue.of(self.value * other.value, self.p, self.modexp)


# ============================================================================
# Operations
# ============================================================================

def val(a: PadicResidue) -> ValInfo:
    """p-adic valuation of a residue, as far as the modulus allows."""
    if a.value == 0:
        return AtLeast(a.modexp)
    v, x = 0, a.value
    while x % a.p == 0:
        x //= a.p
        v += 1
    return Exact(v)


def hensel_unit_root(a: int, q: int, M: int, p: Optional[int] = None) -> PadicResidue:
    """Unit root of T^2 - aT + q modulo p^M.

    Newton iteration with doubling precision starting from alpha = a mod p.
    The derivative 2*alpha - a is a unit because the two roots are
    incongruent mod p (one is a unit, the other divisible by q).
    """
    if p is None:
        p = primefactors(q)[0]
    if M < 1:
        raise InvalidPrimeContext(f"M must be >= 1, got {M}")
    if a % p == 0:
        raise SupersingularInput(f"trace {a} is divisible by p={p}")

    alpha = a % p
    prec = 1
    while prec < M:
        prec = min(2 * prec, M)
        mod = p ** prec
        f = (alpha * alpha - a * alpha + q) % mod
        df = (2 * alpha - a) % mod
        alpha = (alpha - f * pow(df, -1, mod)) % mod
    return PadicResidue(alpha % p ** M, p, M)


def residue_pow(a: PadicResidue, k: int) -> PadicResidue:
    """a^k mod p^M; negative k goes through the modular inverse."""
    if k < 0 and not a.is_unit():
        raise NonUnitNegativePower(f"{a.value} mod {a.p}^{a.modexp} is not a unit (k={k})")
    return PadicResidue(pow(a.value, k, a.modulus), a.p, a.modexp)

