"""Truncated formal power series with exact integer coefficients.

A :class:`Series` stores exactly ``truncation`` coefficients, indexed by
exponent ``0 .. truncation-1``.  Binary operations truncate to the shorter
operand; unknown coefficients are never silently treated as zero.  All
arithmetic is over the integers -- no floating point anywhere -- and values
are immutable after construction, so they are safe to share between
threads.

Multiplication dispatches to a packed big-integer convolution for long
operands (Kronecker substitution); the result is bit-identical to the
schoolbook product.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple

__all__ = [
    "Series", "add", "sub", "mul", "compose_power", "invert", "sift",
    "alternate_sign", "is_nonnegative",
]

_SCHOOLBOOK_CUTOFF = 16384  # len(a)*len(b) below this: plain double loop


def _pack(coeffs: Sequence[int], width: int) -> int:
    buf = bytearray(width * len(coeffs))
    for i, c in enumerate(coeffs):
        if c:
            nb = (c.bit_length() + 7) // 8
            off = i * width
            buf[off:off + nb] = c.to_bytes(nb, "little")
    return int.from_bytes(buf, "little")


def _mul_nonneg(a: Sequence[int], b: Sequence[int], n_out: int) -> list[int]:
    ma = max(a, default=0)
    mb = max(b, default=0)
    if ma == 0 or mb == 0:
        return [0] * n_out
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length()
    width = bits // 8 + 1
    prod = _pack(a, width) * _pack(b, width)
    raw = prod.to_bytes(width * (len(a) + len(b)), "little")
    return [
        int.from_bytes(raw[i * width:(i + 1) * width], "little")
        for i in range(n_out)
    ]


def _convolve(a: Sequence[int], b: Sequence[int], n_out: int) -> list[int]:
    """First n_out coefficients of the Cauchy product of a and b."""
    if n_out <= 0:
        return []
    a = a[:n_out]
    b = b[:n_out]
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return [0] * n_out
    if len(a) * len(b) <= _SCHOOLBOOK_CUTOFF:
        out = [0] * n_out
        for i, ai in enumerate(a):
            if ai:
                lim = min(len(b), n_out - i)
                for j in range(lim):
                    out[i + j] += ai * b[j]
        return out
    a_neg = any(c < 0 for c in a)
    b_neg = any(c < 0 for c in b)
    if not a_neg and not b_neg:
        return _mul_nonneg(a, b, n_out)
    ap = [c if c > 0 else 0 for c in a]
    an = [-c if c < 0 else 0 for c in a]
    bp = [c if c > 0 else 0 for c in b]
    bn = [-c if c < 0 else 0 for c in b]
    out = _mul_nonneg(ap, bp, n_out)
    for v, w, sign in ((an, bn, 1), (ap, bn, -1), (an, bp, -1)):
        if any(v) and any(w):
            part = _mul_nonneg(v, w, n_out)
            for i in range(n_out):
                out[i] += sign * part[i]
    return out


class Series:
    """Dense integer power series truncated at a fixed exponent bound."""

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs: Iterable[int], truncation: Optional[int] = None):
        cs = tuple(coeffs)
        if truncation is None:
            truncation = len(cs)
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        if len(cs) != truncation:
            raise ValueError(
                f"coefficient count {len(cs)} != truncation {truncation}")
        for c in cs:
            if not isinstance(c, int):
                raise TypeError("coefficients must be plain integers")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "truncation", truncation)

    @classmethod
    def _raw(cls, coeffs: list[int]) -> "Series":
        # internal fast path; callers guarantee integer entries
        self = cls.__new__(cls)
        cs = tuple(coeffs)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "truncation", len(cs))
        return self

    @classmethod
    def zero(cls, truncation: int) -> "Series":
        return cls._raw([0] * truncation)

    @classmethod
    def one(cls, truncation: int) -> "Series":
        return cls.monomial(0, truncation)

    @classmethod
    def monomial(cls, exponent: int, truncation: int, coeff: int = 1) -> "Series":
        if exponent < 0:
            raise ValueError("monomial exponent must be >= 0")
        cs = [0] * truncation
        if exponent < truncation:
            cs[exponent] = coeff
        return cls._raw(cs)

    def __setattr__(self, name, value):
        raise AttributeError("Series objects are immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Series)
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __len__(self) -> int:
        return self.truncation

    def __getitem__(self, exponent: int) -> int:
        if not 0 <= exponent < self.truncation:
            raise IndexError(
                f"exponent {exponent} outside truncation {self.truncation}")
        return self.coeffs[exponent]

    def truncate(self, n: int) -> "Series":
        if n > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return Series._raw(list(self.coeffs[:n]))

    def __add__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.truncation, other.truncation)
        a, b = self.coeffs, other.coeffs
        return Series._raw([a[i] + b[i] for i in range(n)])

    def __sub__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.truncation, other.truncation)
        a, b = self.coeffs, other.coeffs
        return Series._raw([a[i] - b[i] for i in range(n)])

    def __neg__(self) -> "Series":
        return Series._raw([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Series):
            n = min(self.truncation, other.truncation)
            return Series._raw(_convolve(self.coeffs, other.coeffs, n))
        if isinstance(other, int):
            return Series._raw([other * c for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int) or k < 0:
            raise ValueError("series exponent must be a nonnegative integer")
        result = Series.one(self.truncation)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.truncation > 8 else ""
        return f"Series([{head}{tail}], truncation={self.truncation})"


def add(a: Series, b: Series) -> Series:
    """Coefficientwise sum, truncated to the shorter operand."""
    return a + b


def sub(a: Series, b: Series) -> Series:
    return a - b


def mul(a: Series, b: Series) -> Series:
    """Cauchy product, truncated to the shorter operand."""
    return a * b


def compose_power(a: Series, k: int) -> Series:
    """Substitute q -> q^k: exponent n maps to k*n, truncation preserved."""
    if k < 1:
        raise ValueError("compose_power requires k >= 1")
    if k == 1:
        return a
    n = a.truncation
    out = [0] * n
    for i, c in enumerate(a.coeffs):
        j = i * k
        if j >= n:
            break
        out[j] = c
    return Series._raw(out)


def invert(a: Series) -> Series:
    """Multiplicative inverse up to the truncation; constant term must be +-1.

    Newton iteration, doubling the working precision each round.
    """
    if a.truncation == 0:
        raise ValueError("cannot invert an empty series")
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise ValueError(f"constant term {c0} is not a unit over the integers")
    n = a.truncation
    ca = a.coeffs
    x = [c0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ax = _convolve(ca[:prec], x, prec)
        t = [-v for v in ax]
        t[0] += 2
        x = _convolve(x, t, prec)
    return Series._raw(x)


def sift(a: Series, t: int, s: int) -> Series:
    """Arithmetic-progression extraction: output[k] = a[t*k + s]."""
    if t < 1 or not 0 <= s < t:
        raise ValueError(f"sift requires 0 <= s < t, got t={t}, s={s}")
    return Series._raw(list(a.coeffs[s::t]))


def alternate_sign(a: Series) -> Series:
    """Multiply the coefficient of q^n by (-1)^n (substitute q -> -q)."""
    return Series._raw([c if i % 2 == 0 else -c
                        for i, c in enumerate(a.coeffs)])


def is_nonnegative(a: Series) -> Tuple[bool, Optional[int]]:
    """Whether all stored coefficients are >= 0; else the first bad exponent."""
    for i, c in enumerate(a.coeffs):
        if c < 0:
            return False, i
    return True, None
