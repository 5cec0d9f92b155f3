"""Positive definite integral binary and ternary quadratic forms.

A ternary form is the sextuple (a,b,c,d,e,f) standing for

    a*x^2 + b*y^2 + c*z^2 + d*y*z + e*z*x + f*x*y,

with doubled Gram matrix [[2a,f,e],[f,2b,d],[e,d,2c]] and discriminant
half its determinant.  Representation counting walks the lattice with
exact integer bounds obtained by completing the square; no floating
point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .series import Series

__all__ = [
    "TernaryForm", "BinaryForm", "discriminant", "repcount", "theta_series",
    "aut_count", "ternary_equivalent", "enumerate_ternary_classes",
    "reduce_binary", "enumerate_binary_classes", "transform_ternary",
]


@dataclass(frozen=True, order=True)
class TernaryForm:
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d, self.e, self.f):
            if not isinstance(v, int):
                raise TypeError("form coefficients must be integers")
        g = self.gram_doubled()
        m1 = g[0][0]
        m2 = g[0][0] * g[1][1] - g[0][1] ** 2
        m3 = _det3(g)
        if m1 <= 0 or m2 <= 0 or m3 <= 0:
            raise ValueError(f"form {self.sextuple()} is not positive definite")

    @classmethod
    def from_string(cls, text: str) -> "TernaryForm":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise ValueError(f"expected 6 comma-separated entries, got {len(parts)}")
        return cls(*(int(p) for p in parts))

    def sextuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def gram_doubled(self) -> tuple[tuple[int, int, int], ...]:
        a, b, c, d, e, f = self.sextuple()
        return ((2 * a, f, e), (f, 2 * b, d), (e, d, 2 * c))

    @property
    def discriminant(self) -> int:
        det = _det3(self.gram_doubled())
        assert det % 2 == 0
        return det // 2

    def value(self, x: int, y: int, z: int) -> int:
        a, b, c, d, e, f = self.sextuple()
        return (a * x * x + b * y * y + c * z * z
                + d * y * z + e * z * x + f * x * y)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.sextuple())


@dataclass(frozen=True, order=True)
class BinaryForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise ValueError(f"binary form {(self.a, self.b, self.c)} "
                             "is not positive definite")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"


def _det3(g) -> int:
    return (g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]))


def discriminant(form: TernaryForm) -> int:
    """Half the determinant of the doubled Gram matrix."""
    return form.discriminant


# ---------------------------------------------------------------------------
# representation counts and theta series
# ---------------------------------------------------------------------------

def _xy_bounds(form: TernaryForm, bound: int):
    """Exact data for sweeping (x, y) over {min_z Q(x,y,z) <= bound}.

    Completing the square in z turns Q <= bound into
    A*y^2 + B*x*y + C*x^2 <= 4*c*bound with A = 4bc-d^2, B = 4cf-2de,
    C = 4ca-e^2; eliminating y bounds x^2 by 16*c*A*bound / disc_x where
    disc_x = 4*A*C - B^2 = 8*c*discriminant > 0.
    """
    a, b, c, d, e, f = form.sextuple()
    A = 4 * b * c - d * d
    B = 4 * c * f - 2 * d * e
    C = 4 * c * a - e * e
    disc_x = 4 * A * C - B * B
    xmax = isqrt(max(0, 16 * c * A * bound) // disc_x) + 1
    return A, B, C, xmax


def _y_range(A: int, B: int, C: int, x: int, rhs: int):
    """Integer y interval (with one unit of slack) where A y^2 + Bx y <= rhs'."""
    bq = B * x
    cq = C * x * x - rhs
    disc = bq * bq - 4 * A * cq
    if disc < 0:
        return 1, 0
    s = isqrt(disc)
    ylo = (-bq - s) // (2 * A) - 1
    yhi = (-bq + s) // (2 * A) + 1
    return ylo, yhi


def repcount(form: TernaryForm, m: int) -> int:
    """Number of integer triples with Q(x,y,z) = m (exact; repcount(f,0) = 1)."""
    if m < 0:
        return 0
    if m == 0:
        return 1
    a, b, c, d, e, f = form.sextuple()
    A, B, C, xmax = _xy_bounds(form, m)
    rhs = 4 * c * m
    count = 0
    for x in range(-xmax, xmax + 1):
        ylo, yhi = _y_range(A, B, C, x, rhs)
        base_x = a * x * x
        for y in range(ylo, yhi + 1):
            # c z^2 + (d y + e x) z + (Q0 - m) = 0
            lin = d * y + e * x
            const = base_x + b * y * y + f * x * y - m
            disc = lin * lin - 4 * c * const
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc:
                continue
            for root in ((-lin + s), (-lin - s)):
                if root % (2 * c) == 0:
                    count += 1
                if s == 0:
                    break
    return count


def _theta_ternary(form: TernaryForm, n: int) -> tuple[int, ...]:
    """Coefficients 0..n-1 of sum_{v in Z^3} q^{Q(v)} by a half-space sweep."""
    counts = [0] * n
    if n > 0:
        counts[0] = 1
    bound = n - 1
    if bound < 1:
        return tuple(counts)
    a, b, c, d, e, f = form.sextuple()
    A, B, C, xmax = _xy_bounds(form, bound)
    rhs = 4 * c * bound
    c2 = 2 * c

    def sweep_plane(x: int, ymin_open: bool):
        ylo, yhi = _y_range(A, B, C, x, rhs)
        if ymin_open:
            ylo = max(ylo, 1)
        base_x = a * x * x
        ex = e * x
        fx = f * x
        for y in range(ylo, yhi + 1):
            lin = d * y + ex
            const = base_x + b * y * y + fx * y
            disc = lin * lin - 4 * c * (const - bound)
            if disc < 0:
                continue
            s = isqrt(disc)
            zlo = (-lin - s) // c2
            zhi = (-lin + s) // c2 + 1
            val = (c * zlo + lin) * zlo + const
            step = c2 * zlo + c + lin
            for _z in range(zlo, zhi + 1):
                if 0 <= val <= bound:
                    counts[val] += 2
                val += step
                step += c2

    for x in range(1, xmax + 1):
        sweep_plane(x, ymin_open=False)
    sweep_plane(0, ymin_open=True)
    # the x = y = 0 line, z > 0
    z = 1
    while c * z * z <= bound:
        counts[c * z * z] += 2
        z += 1
    return tuple(counts)


def _theta_binary(form: BinaryForm, n: int) -> tuple[int, ...]:
    counts = [0] * n
    if n > 0:
        counts[0] = 1
    bound = n - 1
    if bound < 1:
        return tuple(counts)
    a, b, c = form.a, form.b, form.c
    disc = 4 * a * c - b * b
    xmax = isqrt(4 * c * bound // disc) + 1

    def sweep(x_iter):
        for x in x_iter:
            bq = b * x
            cq = a * x * x - bound
            d2 = bq * bq - 4 * c * cq
            if d2 < 0:
                continue
            s = isqrt(d2)
            ylo = (-bq - s) // (2 * c) - 1
            yhi = (-bq + s) // (2 * c) + 1
            if x == 0:
                ylo = max(ylo, 1)
            for y in range(ylo, yhi + 1):
                v = a * x * x + b * x * y + c * y * y
                if 0 <= v <= bound:
                    counts[v] += 2

    sweep(range(1, xmax + 1))
    sweep((0,))
    return tuple(counts)


@lru_cache(maxsize=None)
def _theta_cached(sextuple_or_triple, n: int) -> tuple[int, ...]:
    if len(sextuple_or_triple) == 6:
        return _theta_ternary(TernaryForm(*sextuple_or_triple), n)
    return _theta_binary(BinaryForm(*sextuple_or_triple), n)


def theta_series(form: TernaryForm | BinaryForm, n: int) -> Series:
    """Series whose q^m coefficient counts representations of m by the form."""
    if isinstance(form, TernaryForm):
        return Series(_theta_cached(form.sextuple(), n))
    return Series(_theta_cached((form.a, form.b, form.c), n))


def theta_coefficients(form: TernaryForm, n: int) -> tuple[int, ...]:
    """Raw coefficient tuple of the theta series (cached)."""
    return _theta_cached(form.sextuple(), n)


# ---------------------------------------------------------------------------
# short vectors, automorphs, equivalence
# ---------------------------------------------------------------------------

def short_vectors(form: TernaryForm, bound: int) -> dict[int, list[tuple[int, int, int]]]:
    """All v in Z^3 with 0 < Q(v) <= bound, grouped by value."""
    out: dict[int, list[tuple[int, int, int]]] = {}
    if bound < 1:
        return out
    a, b, c, d, e, f = form.sextuple()
    A, B, C, xmax = _xy_bounds(form, bound)
    rhs = 4 * c * bound

    def record(x, y, z, v):
        out.setdefault(v, []).append((x, y, z))
        out[v].append((-x, -y, -z))

    def sweep_plane(x: int, ymin_open: bool):
        ylo, yhi = _y_range(A, B, C, x, rhs)
        if ymin_open:
            ylo = max(ylo, 1)
        for y in range(ylo, yhi + 1):
            lin = d * y + e * x
            const = a * x * x + b * y * y + f * x * y
            disc = lin * lin - 4 * c * (const - bound)
            if disc < 0:
                continue
            s = isqrt(disc)
            zlo = (-lin - s) // (2 * c)
            zhi = (-lin + s) // (2 * c) + 1
            for z in range(zlo, zhi + 1):
                v = (c * z + lin) * z + const
                if 0 < v <= bound:
                    record(x, y, z, v)

    for x in range(1, xmax + 1):
        sweep_plane(x, ymin_open=False)
    sweep_plane(0, ymin_open=True)
    z = 1
    while c * z * z <= bound:
        record(0, 0, z, c * z * z)
        z += 1
    return out


def _gram_apply(g, v):
    return tuple(sum(g[i][j] * v[j] for j in range(3)) for i in range(3))


def _det_cols(u1, u2, u3) -> int:
    return (u1[0] * (u2[1] * u3[2] - u2[2] * u3[1])
            - u2[0] * (u1[1] * u3[2] - u1[2] * u3[1])
            + u3[0] * (u1[1] * u2[2] - u1[2] * u2[1]))


def _isometries(src: TernaryForm, dst: TernaryForm, count_only: bool, limit=None):
    """Column-built U in GL3(Z) with U^T G_dst U = G_src.

    Columns are dst-vectors whose values are the diagonal of src and whose
    mutual doubled-Gram products match src's off-diagonal entries.
    """
    a, b, c, d, e, f = src.sextuple()
    g = dst.gram_doubled()
    vecs = short_vectors(dst, max(a, b, c))
    c1 = vecs.get(a, ())
    c2 = vecs.get(b, ())
    c3 = vecs.get(c, ())
    hits = 0
    gu1_cache = [(_gram_apply(g, u), u) for u in c1]
    gu2_cache = [(_gram_apply(g, u), u) for u in c2]
    for gu1, u1 in gu1_cache:
        for gu2, u2 in gu2_cache:
            if gu1[0] * u2[0] + gu1[1] * u2[1] + gu1[2] * u2[2] != f:
                continue
            for u3 in c3:
                if gu1[0] * u3[0] + gu1[1] * u3[1] + gu1[2] * u3[2] != e:
                    continue
                if gu2[0] * u3[0] + gu2[1] * u3[1] + gu2[2] * u3[2] != d:
                    continue
                if abs(_det_cols(u1, u2, u3)) != 1:
                    continue
                hits += 1
                if not count_only:
                    return hits
                if limit is not None and hits >= limit:
                    return hits
    return hits


def aut_count(form: TernaryForm) -> int:
    """Order of the integral automorphism group {U : U^T G U = G}."""
    return _isometries(form, form, count_only=True)


def ternary_equivalent(f1: TernaryForm, f2: TernaryForm) -> bool:
    """Whether an integral unimodular change of variables maps f1 to f2."""
    if f1.discriminant != f2.discriminant:
        raise ValueError("forms must share a discriminant")
    if f1 == f2:
        return True
    return _isometries(f1, f2, count_only=False) > 0


def transform_ternary(form: TernaryForm, u) -> TernaryForm:
    """Form of Q(U v): Gram changes to U^T G U.  u is a 3x3 integer matrix."""
    g = form.gram_doubled()
    gu = [[sum(g[i][k] * u[k][j] for k in range(3)) for j in range(3)]
          for i in range(3)]
    h = [[sum(u[k][i] * gu[k][j] for k in range(3)) for j in range(3)]
         for i in range(3)]
    return TernaryForm(h[0][0] // 2, h[1][1] // 2, h[2][2] // 2,
                       h[1][2], h[0][2], h[0][1])


# ---------------------------------------------------------------------------
# class enumeration
# ---------------------------------------------------------------------------

def _candidate_box(disc: int):
    """Reduced-form candidates (a,b,c,d,e,f) of the given discriminant.

    Box: 0 < a <= b <= c, |d| <= b, |e| <= a, |f| <= a, abc <= disc/2.
    c is solved exactly from the discriminant:
        disc = 4abc - a d^2 - b e^2 - c f^2 + d e f.
    """
    for a in range(1, isqrt(disc // 2) + 2):
        if a * a * a > disc // 2:
            break
        bmax = isqrt(disc // (2 * a)) + 1
        for b in range(a, bmax + 1):
            for f in range(-a, a + 1):
                den = 4 * a * b - f * f
                if den <= 0:
                    continue
                for d in range(-b, b + 1):
                    ad2 = a * d * d
                    fd = f * d
                    for e in range(-a, a + 1):
                        num = disc + ad2 + b * e * e - fd * e
                        if num % den:
                            continue
                        c = num // den
                        if c < b or 2 * a * b * c > disc:
                            continue
                        yield a, b, c, d, e, f


def _sort_key(form: TernaryForm):
    a, b, c, d, e, f = form.sextuple()
    return (a, b, c, abs(d), abs(e), abs(f),
            0 if d >= 0 else 1, 0 if e >= 0 else 1, 0 if f >= 0 else 1)


@lru_cache(maxsize=None)
def enumerate_ternary_classes(disc: int) -> tuple[TernaryForm, ...]:
    """One representative per GL3(Z)-class of positive forms of the discriminant."""
    if disc <= 0:
        raise ValueError("discriminant must be positive")
    candidates = []
    seen = set()
    for tup in _candidate_box(disc):
        if tup in seen:
            continue
        seen.add(tup)
        try:
            form = TernaryForm(*tup)
        except ValueError:
            continue
        if form.discriminant == disc:
            candidates.append(form)
    candidates.sort(key=_sort_key)
    # group by a cheap isometry invariant before the expensive pairwise test
    groups: dict[tuple, list[TernaryForm]] = {}
    for form in candidates:
        key = theta_coefficients(form, min(32, disc))
        groups.setdefault(key, []).append(form)
    classes: list[TernaryForm] = []
    for group in groups.values():
        kept: list[TernaryForm] = []
        for form in group:
            if not any(ternary_equivalent(form, other) for other in kept):
                kept.append(form)
        classes.extend(kept)
    classes.sort(key=_sort_key)
    return tuple(classes)


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------

def reduce_binary(form: BinaryForm) -> BinaryForm:
    """Gauss-reduced representative: |b| <= a <= c, b >= 0 if |b| = a or a = c."""
    a, b, c = form.a, form.b, form.c
    while True:
        if c < a:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            k = (a - b) // (2 * a)  # shift b into (-a, a]
            b2 = b + 2 * k * a
            c = a * k * k + b * k + c
            b = b2
            continue
        break
    if (b < 0) and (a == -b or a == c):
        b = -b
    return BinaryForm(a, b, c)


def enumerate_binary_classes(disc: int) -> tuple[BinaryForm, ...]:
    """All reduced primitive positive definite forms of negative discriminant."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("discriminant must be negative and 0 or 1 mod 4")
    out = []
    amax = isqrt(-disc // 3) + 1
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == -b or a == c):
                continue
            form = BinaryForm(a, b, c)
            if form.is_primitive():
                out.append(form)
    return tuple(sorted(out, key=lambda f: (f.a, abs(f.b), f.c, f.b < 0)))
