"""
Truncated power series over Z/p^M.

Every series in the pipeline (L-functions, Fredholm determinants and their
Euler factors) has constant term 1, and TruncSeries refuses anything else.
Coefficients are stored as plain integers in [0, p^M).
"""

from dataclasses import dataclass
from functools import reduce
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from unitroot.errors import NonUnitConstantTerm, PrecisionMismatch
from unitroot.padic import PadicResidue, residue_pow


@dataclass(frozen=True)
class TruncSeries:
    """sum_{n <= N} c_n T^n with c_n mod p^M and c_0 = 1."""
    p: int
    M: int
    N: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.N + 1:
            raise ValueError(f"expected {self.N + 1} coefficients, got {len(self.coeffs)}")
        modulus = self.p ** self.M
        if any(not 0 <= c < modulus for c in self.coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.p}^{self.M})")
        if self.coeffs[0] != 1 % modulus:
            raise NonUnitConstantTerm(f"constant term is {self.coeffs[0]}, expected 1")

    @classmethod
    def from_ints(cls, p: int, M: int, coeffs: Sequence[int], N: Optional[int] = None) -> "TruncSeries":
        """Reduce integers mod p^M, pad or truncate to N + 1 terms."""
        modulus = p ** M
        N = len(coeffs) - 1 if N is None else N
        values = [c % modulus for c in coeffs[: N + 1]]
        values += [0] * (N + 1 - len(values))
        return cls(p, M, N, tuple(values))

    @classmethod
    def one(cls, p: int, M: int, N: int) -> "TruncSeries":
        return cls.from_ints(p, M, [1], N)

    @property
    def modulus(self) -> int:
        return self.p ** self.M

    @property
    def residues(self) -> List[PadicResidue]:
        return [PadicResidue(c, self.p, self.M) for c in self.coeffs]

    def reduce(self, N: int, M: int) -> "TruncSeries":
        """Truncate to T^N and reduce to p^M (both no larger than the current ones)."""
        if N > self.N or M > self.M:
            raise PrecisionMismatch(
                f"cannot raise (N, M) = ({self.N}, {self.M}) to ({N}, {M})"
            )
        return TruncSeries.from_ints(self.p, M, self.coeffs[: N + 1], N)

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "M": self.M, "N": self.N, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TruncSeries":
        return cls(int(data["p"]), int(data["M"]), int(data["N"]), tuple(int(c) for c in data["coeffs"]))

    def __str__(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs):
            if c == 0 and n > 0:
                continue
            terms.append(str(c) if n == 0 else f"{c}T" if n == 1 else f"{c}T^{n}")
        return " + ".join(terms) + f" (mod {self.p}^{self.M}, T^{self.N + 1})"


def _check_compatible(f: TruncSeries, g: TruncSeries) -> None:
    if (f.p, f.M, f.N) != (g.p, g.M, g.N):
        raise PrecisionMismatch(
            f"series at (p, M, N) = {(f.p, f.M, f.N)} and {(g.p, g.M, g.N)} do not mix"
        )


def series_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at T^N, coefficients mod p^M."""
    _check_compatible(f, g)
    N, modulus = f.N, f.modulus
    out = [0] * (N + 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j in range(N + 1 - i):
                b = g.coeffs[j]
                if b:
                    out[i + j] += a * b
    return TruncSeries(f.p, f.M, N, tuple(c % modulus for c in out))


def series_product(factors: Iterable[TruncSeries], p: int, M: int, N: int) -> TruncSeries:
    return reduce(series_mul, factors, TruncSeries.one(p, M, N))


def euler_factor(alpha: PadicResidue, k: int, d: int, N: int, M: Optional[int] = None) -> TruncSeries:
    """1 / (1 - alpha^k T^d) = sum_m alpha^{km} T^{dm}, truncated at T^N."""
    if d < 1:
        raise ValueError(f"point degree must be >= 1, got {d}")
    M = alpha.modexp if M is None else M
    if M > alpha.modexp:
        raise PrecisionMismatch(f"alpha known mod {alpha.p}^{alpha.modexp}, asked for M={M}")
    alpha = alpha.reduce(M)
    ratio = residue_pow(alpha, k).value
    coeffs = [0] * (N + 1)
    term = 1
    for n in range(0, N + 1, d):
        coeffs[n] = term
        term = term * ratio % alpha.modulus
    return TruncSeries.from_ints(alpha.p, M, coeffs, N)


def polynomial_factor(c: int, d: int, p: int, M: int, N: int) -> TruncSeries:
    """1 - c T^d, truncated at T^N."""
    coeffs = [1] + [0] * N
    if d <= N:
        coeffs[d] -= c
    return TruncSeries.from_ints(p, M, coeffs, N)


def series_scale(f: TruncSeries, j: int) -> TruncSeries:
    """f(p^j T)."""
    if j < 0:
        raise ValueError(f"scale exponent must be >= 0, got {j}")
    modulus = f.modulus
    factor = pow(f.p, j, modulus)
    coeffs, power = [], 1
    for c in f.coeffs:
        coeffs.append(c * power % modulus)
        power = power * factor % modulus
    return TruncSeries(f.p, f.M, f.N, tuple(coeffs))


def series_reciprocal(f: TruncSeries) -> TruncSeries:
    """g with f * g = 1 truncated; requires f(0) = 1."""
    if f.coeffs[0] != 1 % f.modulus:
        raise NonUnitConstantTerm(f"constant term is {f.coeffs[0]}, expected 1")
    modulus = f.modulus
    g = [1] + [0] * f.N
    for n in range(1, f.N + 1):
        g[n] = -sum(f.coeffs[i] * g[n - i] for i in range(1, n + 1)) % modulus
    return TruncSeries(f.p, f.M, f.N, tuple(g))
