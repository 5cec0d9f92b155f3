"""Genus classification of ternary forms and the lifted-binary genus union.

Two positive definite forms of the same discriminant lie in the same genus
iff they are equivalent over the p-adic integers for every prime p dividing
twice the discriminant.  At odd p a Jordan splitting with per-scale
(dimension, unit-determinant Legendre class) decides; at p = 2 the splitting
into odd 1x1 and even 2x2 blocks is followed by the standard canonical
reduction of the per-scale (dimension, sign, type, oddity) data -- oddity
fusion inside compartments and sign walking along trains.

An odd squarefree S with r prime factors selects 2^r genera of discriminant
16 S^2 by lifting one binary form of discriminant -8S per binary genus via
(a, b, c) -> a x^2 + |b| xy + c y^2 + 2S z^2.  The union of those genera
carries epsilon characters, integer masses, and weighted representation
counts, exposed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import divisors, is_squarefree, jacobi, prime_divisors
from .forms import (BinaryForm, TernaryForm, aut_count,
                    enumerate_binary_classes, enumerate_ternary_classes,
                    repcount, theta_coefficients)

__all__ = [
    "GenusRecord", "SGenus", "same_genus", "genus_partition",
    "binary_genus_partition", "lift_binary_to_ternary", "build_sgenus",
    "epsilon", "mass_direct", "mass_formula", "sgenus_mass",
    "weighted_count", "weighted_coefficients", "orthogonality_check",
    "local_symbols",
]


# ---------------------------------------------------------------------------
# p-adic Jordan data
# ---------------------------------------------------------------------------

def _val(x: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    num = x.numerator if isinstance(x, Fraction) else x
    den = x.denominator if isinstance(x, Fraction) else 1
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _unit_mod(x: Fraction | int, p: int, modulus: int) -> int:
    """The unit part of x (p-part removed) reduced mod `modulus`."""
    num = x.numerator if isinstance(x, Fraction) else x
    den = x.denominator if isinstance(x, Fraction) else 1
    while num % p == 0:
        num //= p
    while den % p == 0:
        den //= p
    return (num * pow(den, -1, modulus)) % modulus


def _jordan_blocks(gram, p: int):
    """Split a symmetric rational matrix into p-adic Jordan blocks.

    Returns a list of (scale_exponent, block) with block either a single
    unit (Fraction) or, at p = 2, a 2x2 tuple with odd off-diagonal entry.
    """
    m = [[Fraction(x) for x in row] for row in gram]
    idx = list(range(len(m)))
    blocks = []
    while idx:
        # locate the minimum valuation among remaining entries
        best = None
        best_pos = None
        diag_hit = None
        for i in idx:
            for j in idx:
                x = m[i][j]
                if x == 0:
                    continue
                v = _val(x, p)
                if best is None or v < best:
                    best, best_pos, diag_hit = v, (i, j), (i if i == j else None)
                elif v == best and i == j and diag_hit is None:
                    diag_hit = i
        if best is None:
            raise ValueError("matrix is singular")
        if diag_hit is None and p != 2:
            # odd p: make the minimum appear on the diagonal (2 is a unit)
            i, j = best_pos
            for k in idx:
                m[i][k] += m[j][k]
            for k in idx:
                m[k][i] += m[k][j]
            diag_hit = i
        if diag_hit is not None:
            i = diag_hit
            pivot = m[i][i]
            for k in idx:
                if k == i:
                    continue
                if m[k][i] != 0:
                    r = m[k][i] / pivot
                    for l in idx:
                        m[k][l] -= r * m[i][l]
                    for l in idx:
                        m[l][k] = m[k][l]
            blocks.append((best, pivot / p ** best))
            idx.remove(i)
        else:
            # p = 2 with the minimum only off-diagonal: split an even 2x2 block
            i, j = best_pos
            a, b, c = m[i][i], m[i][j], m[j][j]
            det = a * c - b * b
            for k in idx:
                if k in (i, j):
                    continue
                u, v = m[k][i], m[k][j]
                if u == 0 and v == 0:
                    continue
                s = (u * c - v * b) / det
                t = (v * a - u * b) / det
                for l in idx:
                    m[k][l] -= s * m[i][l] + t * m[j][l]
                for l in idx:
                    m[l][k] = m[k][l]
            q = Fraction(2) ** best
            blocks.append((best, (a / q, b / q, c / q)))
            idx.remove(i)
            idx.remove(j)
    return blocks


def _symbol_odd(gram, p: int) -> tuple:
    """Per-scale (exponent, dim, Legendre class of the unit determinant)."""
    scales: dict[int, list] = {}
    for e, block in _jordan_blocks(gram, p):
        scales.setdefault(e, []).append(block)
    out = []
    for e in sorted(scales):
        units = scales[e]
        det = 1
        for u in units:
            det = det * _unit_mod(u, p, p) % p
        out.append((e, len(units), jacobi(det, p)))
    return tuple(out)


def _symbol_two_raw(gram) -> list:
    """Raw 2-adic quintuples [scale, dim, det mod 8, type_is_odd, oddity]."""
    scales: dict[int, dict] = {}
    for e, block in _jordan_blocks(gram, 2):
        cell = scales.setdefault(e, {"dim": 0, "det": 1, "odd": False, "oddity": 0})
        if isinstance(block, tuple):
            a, b, c = block
            det = (_unit_mod(a * c - b * b, 2, 8)) % 8
            cell["dim"] += 2
            cell["det"] = cell["det"] * det % 8
        else:
            u = _unit_mod(block, 2, 8)
            cell["dim"] += 1
            cell["det"] = cell["det"] * u % 8
            cell["odd"] = True
            cell["oddity"] = (cell["oddity"] + u) % 8
    out = []
    for e in sorted(scales):
        cell = scales[e]
        out.append([e, cell["dim"], cell["det"], cell["odd"], cell["oddity"]])
    return out


def _canonical_two(symbol: list) -> tuple:
    """Canonical form of a raw 2-adic symbol under the allowed moves.

    Signs: + when det = +-1 (mod 8).  Compartments are maximal runs of
    type-odd entries at consecutive scales; only their total oddity counts.
    Sign walking moves every non-leading minus sign of a train onto the
    train's first entry, adding 4 to the oddity of each compartment that
    touches a walked pair.
    """
    n = len(symbol)
    signs = [1 if entry[2] in (1, 7) else -1 for entry in symbol]
    # compartments: indices of consecutive-scale odd-type entries
    compartments: list[list[int]] = []
    cur: list[int] = []
    for i, entry in enumerate(symbol):
        if entry[3]:
            if cur and symbol[i - 1][3] and entry[0] == symbol[i - 1][0] + 1:
                cur.append(i)
            else:
                if cur:
                    compartments.append(cur)
                cur = [i]
        else:
            if cur:
                compartments.append(cur)
            cur = []
    if cur:
        compartments.append(cur)
    oddity = {tuple(comp): sum(symbol[i][4] for i in comp) % 8
              for comp in compartments}
    # trains: consecutive entries bound through adjacent scales
    trains: list[list[int]] = []
    cur = [0] if n else []
    for i in range(1, n):
        gap = symbol[i][0] - symbol[i - 1][0]
        bound = (gap == 1 and (symbol[i][3] or symbol[i - 1][3])) or \
                (gap == 2 and symbol[i][3] and symbol[i - 1][3])
        if bound:
            cur.append(i)
        else:
            trains.append(cur)
            cur = [i]
    if cur:
        trains.append(cur)
    # walk minus signs toward the head of each train
    for train in trains:
        for pos in range(len(train) - 1, 0, -1):
            i = train[pos]
            if signs[i] == -1:
                signs[i] = 1
                signs[train[pos - 1]] *= -1
                for comp in compartments:
                    if i in comp or train[pos - 1] in comp:
                        key = tuple(comp)
                        oddity[key] = (oddity[key] + 4) % 8
    canon_entries = tuple(
        (entry[0], entry[1], signs[i], entry[3]) for i, entry in enumerate(symbol))
    canon_oddities = tuple(sorted(
        (comp[0], oddity[tuple(comp)]) for comp in compartments))
    return canon_entries, canon_oddities


@lru_cache(maxsize=None)
def _local_symbols_cached(sextuple) -> dict:
    form = TernaryForm(*sextuple)
    gram = form.gram_doubled()
    out = {}
    for p in prime_divisors(2 * form.discriminant):
        if p == 2:
            out[p] = _canonical_two(_symbol_two_raw(gram))
        else:
            out[p] = _symbol_odd(gram, p)
    return out


def local_symbols(form: TernaryForm) -> dict:
    """Canonical p-adic invariants for every prime dividing 2*discriminant."""
    return _local_symbols_cached(form.sextuple())


def same_genus(f1: TernaryForm, f2: TernaryForm) -> bool:
    """Z_p-equivalence at every prime dividing twice the discriminant."""
    if f1.discriminant != f2.discriminant:
        raise ValueError("forms must share a discriminant")
    return local_symbols(f1) == local_symbols(f2)


# ---------------------------------------------------------------------------
# genus records and partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GenusRecord:
    discriminant: int
    classes: tuple[TernaryForm, ...]

    def __post_init__(self):
        if not self.classes:
            raise ValueError("a genus needs at least one class")

    @property
    def symbols(self) -> dict:
        return local_symbols(self.classes[0])

    def contains(self, form: TernaryForm) -> bool:
        return same_genus(form, self.classes[0])

    def __str__(self) -> str:
        return " | ".join(str(f) for f in self.classes)


@lru_cache(maxsize=None)
def genus_partition(disc: int) -> tuple[GenusRecord, ...]:
    """Partition of all classes of the discriminant into genera."""
    cells: dict[tuple, list[TernaryForm]] = {}
    for form in enumerate_ternary_classes(disc):
        key = []
        for p, sym in sorted(local_symbols(form).items()):
            key.append((p, sym))
        cells.setdefault(tuple(key), []).append(form)
    records = [GenusRecord(disc, tuple(forms)) for forms in cells.values()]
    records.sort(key=lambda r: r.classes[0].sextuple())
    return tuple(records)


def genus_of(form: TernaryForm) -> GenusRecord:
    """The GenusRecord of the class list that contains the given form."""
    for record in genus_partition(form.discriminant):
        if record.contains(form):
            return record
    raise LookupError(f"no genus found for {form}")  # pragma: no cover


def binary_genus_partition(disc: int) -> tuple[tuple[BinaryForm, ...], ...]:
    """Group the reduced primitive classes by represented units mod |disc|."""
    forms = enumerate_binary_classes(disc)
    mod = -disc
    cells: dict[frozenset, list[BinaryForm]] = {}
    for form in forms:
        values = set()
        for x in range(mod):
            for y in range(mod):
                v = form.value(x, y) % mod
                if gcd(v, mod) == 1:
                    values.add(v)
        cells.setdefault(frozenset(values), []).append(form)
    out = [tuple(cell) for cell in cells.values()]
    out.sort(key=lambda cell: min((f.a, abs(f.b), f.c, f.b < 0) for f in cell))
    return tuple(out)


def lift_binary_to_ternary(s: int, bf: BinaryForm) -> TernaryForm:
    """a x^2 + |b| xy + c y^2 + 2S z^2; discriminant becomes 16 S^2."""
    if bf.discriminant != -8 * s:
        raise ValueError(
            f"binary discriminant {bf.discriminant} is not -8*{s}")
    return TernaryForm(bf.a, bf.c, 2 * s, 0, 0, abs(bf.b))


# ---------------------------------------------------------------------------
# the S-genus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SGenus:
    s: int
    primes: tuple[int, ...]
    tg: tuple[GenusRecord, ...]
    sources: tuple[tuple[BinaryForm, ...], ...]  # binary genus feeding each tg
    eps: dict  # (index, divisor w of S) -> +-1

    def divisor_characters(self, w: int) -> tuple[int, ...]:
        return tuple(self.eps[(i, w)] for i in range(len(self.tg)))


@lru_cache(maxsize=None)
def build_sgenus(s: int) -> SGenus:
    """Assemble the union of lifted genera for an odd squarefree S >= 3."""
    if s < 3 or s % 2 == 0 or not is_squarefree(s):
        raise ValueError("S must be odd, squarefree, and >= 3")
    primes = tuple(prime_divisors(s))
    cells = binary_genus_partition(-8 * s)
    if len(cells) != 2 ** len(primes):
        raise RuntimeError(
            f"expected {2 ** len(primes)} binary genera, found {len(cells)}")
    records = []
    for cell in cells:
        lifted = [lift_binary_to_ternary(s, bf) for bf in cell]
        record = genus_of(lifted[0])
        for other in lifted[1:]:
            if not record.contains(other):
                raise RuntimeError(
                    f"lift of {other} escapes the genus of {lifted[0]}; "
                    "the binary-to-ternary map is not well defined here")
        records.append(record)
    if len({id(r) for r in records}) != len(records) or \
            len({r.classes for r in records}) != len(records):
        raise RuntimeError("lifted genera are not pairwise distinct")
    eps = {}
    for i, record in enumerate(records):
        for w in divisors(s):
            eps[(i, w)] = epsilon(record, w)
    return SGenus(s, primes, tuple(records), tuple(cells), eps)


def _represented_values(tg: GenusRecord, bound: int):
    thetas = [theta_coefficients(f, bound + 1) for f in tg.classes]
    for nval in range(1, bound + 1):
        if any(t[nval] for t in thetas):
            yield nval


def epsilon(tg: GenusRecord, w: int) -> int:
    """Jacobi character (-n | w) on values n represented by the genus, gcd(n,w)=1.

    The result must not depend on the choice of n; the first hit is
    cross-checked against the next ten qualifying values.
    """
    if w == 1:
        return 1
    bound = tg.discriminant
    found = None
    checked = 0
    for nval in _represented_values(tg, bound):
        if gcd(nval, w) != 1:
            continue
        j = jacobi(-nval, w)
        if found is None:
            found = j
        elif j != found:
            raise RuntimeError(
                f"character (-n|{w}) is not constant on the genus {tg}")
        checked += 1
        if checked > 10:
            break
    if found is None:
        raise RuntimeError(
            f"no represented value coprime to {w} below {bound} for {tg}")
    return found


def mass_direct(tg: GenusRecord) -> int:
    """Sum over classes of 16/|Aut|; every summand must be an integer."""
    total = 0
    for form in tg.classes:
        order = aut_count(form)
        if 16 % order:
            raise ArithmeticError(
                f"|Aut({form})| = {order} does not divide 16")
        total += 16 // order
    return total


def mass_formula(tg: GenusRecord, s: int) -> int:
    """Product over p | S of (p + epsilon(tg, p)) / 2."""
    total = 1
    for p in prime_divisors(s):
        total *= (p + epsilon(tg, p)) // 2
    return total


def sgenus_mass(sg: SGenus) -> int:
    return sum(mass_direct(tg) for tg in sg.tg)


def weighted_count(tg: GenusRecord, m: int) -> int:
    """16 * sum over classes of R_f(m) / |Aut(f)| (an exact integer)."""
    total = 0
    for form in tg.classes:
        total += (16 // aut_count(form)) * repcount(form, m)
    return total


@lru_cache(maxsize=None)
def _weighted_cached(classes: tuple, n: int) -> tuple[int, ...]:
    out = [0] * n
    for form in classes:
        weight = 16 // aut_count(form)
        coeffs = theta_coefficients(form, n)
        for i, c in enumerate(coeffs):
            if c:
                out[i] += weight * c
    return tuple(out)


def weighted_coefficients(tg: GenusRecord, n: int) -> tuple[int, ...]:
    """Weighted representation counts for all m < n at once."""
    return _weighted_cached(tg.classes, n)


def orthogonality_check(sg: SGenus, w: int) -> bool:
    """Whether the characters at w sum to zero across the union."""
    if w < 2 or sg.s % w:
        raise ValueError("w must be a divisor of S with w >= 2")
    return sum(sg.eps[(i, w)] for i in range(len(sg.tg))) == 0
