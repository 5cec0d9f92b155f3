"""Classical theta series, Euler products, and eta-quotient expansions.

Everything is produced as an exact :class:`~thetaforms.series.Series`.
The two-parameter theta sum

    f(a, b) = sum_n a^{n(n-1)/2} b^{n(n+1)/2}

is specialized at a = s_x q^x, b = s_y q^y with signs s_x, s_y in {+1,-1};
the familiar functions are phi = f(q,q), psi = f(q,q^3) and the cubic
companions f(q,q^2), f(q,q^5).  Lattice windows are solved with integer
square roots, so no term is ever dropped or duplicated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .series import Series, alternate_sign, invert, mul
from .forms import BinaryForm, theta_series

__all__ = [
    "general_theta", "euler", "euler_power", "named_function",
    "EtaQuotient", "expand_eta_quotient", "BUILTIN_NAMES",
]

# binary forms behind the two lattice sums used by the registry
_CHI_FORM = (4, 4, 6)   # 4x^2 + 4xz + 6z^2
_U_FORM = (3, 2, 5)     # 3x^2 + 2xy + 5y^2


@lru_cache(maxsize=None)
def general_theta(x: int, y: int, n: int, sign_x: int = 1, sign_y: int = 1) -> Series:
    """Theta sum over all integers with exponent x*n(n-1)/2 + y*n(n+1)/2."""
    if x < 0 or y < 0 or (x == 0 and y == 0):
        raise ValueError("general_theta requires x, y >= 0, not both zero")
    if sign_x not in (1, -1) or sign_y not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    coeffs = [0] * n
    kmax = isqrt(2 * n) + 2
    for k in range(-kmax, kmax + 1):
        tx = k * (k - 1) // 2
        ty = k * (k + 1) // 2
        e = x * tx + y * ty
        if 0 <= e < n:
            sign = 1
            if sign_x == -1 and tx % 2:
                sign = -sign
            if sign_y == -1 and ty % 2:
                sign = -sign
            coeffs[e] += sign
    return Series(coeffs)


@lru_cache(maxsize=None)
def euler_power(k: int, n: int) -> Series:
    """E(q^k) = prod_{j>=1} (1 - q^{kj}) via the pentagonal expansion."""
    if k < 1:
        raise ValueError("power must be >= 1")
    coeffs = [0] * n
    if n > 0:
        coeffs[0] = 1
    j = 1
    while True:
        g1 = k * j * (3 * j - 1) // 2
        if g1 >= n:
            break
        sign = -1 if j % 2 else 1
        coeffs[g1] += sign
        g2 = k * j * (3 * j + 1) // 2
        if g2 < n:
            coeffs[g2] += sign
        j += 1
    return Series(coeffs)


def euler(n: int) -> Series:
    """E(q) = prod_{j>=1} (1 - q^j), truncated."""
    return euler_power(1, n)


def _spread(base: Series, k: int, n: int) -> Series:
    out = [0] * n
    for i, c in enumerate(base.coeffs):
        j = i * k
        if j >= n:
            break
        out[j] = c
    return Series(out)


@lru_cache(maxsize=None)
def named_function(name: str, n: int, power: int = 1, negate: bool = False) -> Series:
    """Built-in series by name, with the substitution q -> (+-)q^power.

    ``negate`` substitutes -t for the argument t = q^power, e.g.
    named_function("phi", n, 7, True) is the expansion of phi at -q^7.
    """
    if power < 1:
        raise ValueError("power must be >= 1")
    builders = {
        "phi": lambda m: general_theta(1, 1, m),
        "psi": lambda m: general_theta(1, 3, m),
        "f12": lambda m: general_theta(1, 2, m),
        "f15": lambda m: general_theta(1, 5, m),
        "E": euler,
        "chi": lambda m: theta_series(BinaryForm(*_CHI_FORM), m),
        "u": lambda m: theta_series(BinaryForm(*_U_FORM), m),
    }
    if name not in builders:
        raise KeyError(f"unknown built-in function {name!r}")
    if power == 1 and not negate:
        return builders[name](n)
    m = (n + power - 1) // power
    base = builders[name](m)
    if negate:
        base = alternate_sign(base)
    return _spread(base, power, n)


BUILTIN_NAMES = ("phi", "psi", "f12", "f15", "E", "chi", "u")


@dataclass(frozen=True)
class EtaQuotient:
    """A finite product prod_{delta | level} eta(delta z)^{r_delta}."""

    level: int
    exponents: tuple[tuple[int, int], ...]  # sorted (delta, r) pairs, r != 0

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be >= 1")
        seen = set()
        for delta, r in self.exponents:
            if delta < 1 or self.level % delta:
                raise ValueError(f"{delta} does not divide the level {self.level}")
            if delta in seen:
                raise ValueError(f"duplicate divisor {delta}")
            seen.add(delta)

    @classmethod
    def from_dict(cls, level: int, exps: dict[int, int]) -> "EtaQuotient":
        pairs = tuple(sorted((d, r) for d, r in exps.items() if r != 0))
        return cls(level, pairs)

    def exponent_map(self) -> dict[int, int]:
        return dict(self.exponents)

    @property
    def weight_sum(self) -> int:
        """sum of r_delta (zero for a modular function)."""
        return sum(r for _, r in self.exponents)

    @property
    def delta_weighted_sum(self) -> int:
        """sum of delta * r_delta; 24 times the leading q-exponent."""
        return sum(d * r for d, r in self.exponents)

    @property
    def codelta_weighted_sum(self) -> int:
        """sum of (level/delta) * r_delta."""
        return sum((self.level // d) * r for d, r in self.exponents)

    def __str__(self) -> str:
        inner = ",".join(f"{d}:{r}" for d, r in self.exponents)
        return "eta{%s}" % inner


def expand_eta_quotient(eq: EtaQuotient, n: int) -> tuple[int, Series]:
    """Expansion as q^offset * s with s(0) = +-1.

    offset = sum(delta * r_delta) / 24, which must be an integer; the unit
    part is a product of E(q^delta)^{r_delta} factors.
    """
    total = eq.delta_weighted_sum
    if total % 24:
        raise ValueError(
            f"eta quotient has non-integral leading exponent: "
            f"sum(delta*r) = {total} is not divisible by 24")
    offset = total // 24
    num = Series.one(n)
    den = Series.one(n)
    for delta, r in eq.exponents:
        piece = euler_power(delta, n) ** abs(r)
        if r > 0:
            num = mul(num, piece)
        else:
            den = mul(den, piece)
    return offset, mul(num, invert(den))
