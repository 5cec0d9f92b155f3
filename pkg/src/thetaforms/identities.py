"""Identity registry parsing and the verification engine.

Registry grammar (one entry per line; indented lines continue the entry;
'#' starts a comment):

    NAME ':' MODE ':' STATEMENT ['where' COND {',' COND}]

Modes and statements:

* ``series`` / ``sift`` -- STATEMENT is ``expr = expr`` (or a bare expr,
  compared against zero).  Expressions combine integer literals, ``q^j``
  prefactors, named series ``phi(q^k)``, ``psi(-q^3)``, ``E(q^k)``,
  ``chi(q)``, ``u(q)``, two-parameter sums ``f(q^a,q^b)`` with optional
  minus signs on either argument, sifting ``S[t,s](expr)``, and the
  operators ``+ - * / ^``.  Division requires a unit constant term.
* ``ternary`` -- both sides are integer combinations of representation
  counts ``(a,b,c,d,e,f)(M)`` or ``(a,b,c,d,e,f)(M/w^2)``, weighted genus
  counts ``W(a,b,c,d,e,f)(M)``, characters ``eps(a,b,c,d,e,f;w)``, and the
  lifted-union aggregates ``SW(S)(M)`` and ``SEW(S;w)(M)``.
* ``positivity`` -- STATEMENT is a single series expression; the entry
  passes when every coefficient up to the limit is nonnegative, unless the
  clause ``expect negative`` flips the expectation (a witness exponent is
  reported either way).
* ``modeq3`` -- identities in ``m``, ``alpha``, ``beta`` with rational
  exponents in eighths, verified exactly through the degree-3
  parametrization; a ``theta NAME`` clause names the companion series
  entry used as an independent numeric cross-check.
* ``eta`` -- a linear combination of ``eta{d:r,...}`` atoms equal to a
  constant, proved by the valence-bound prover; requires ``level N``.

Conditions: ``M = r1,r2 mod t`` (also accepts the congruence sign),
``w|M``, ``p||M`` (exact division), ``(M|a) = +-1``.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .arith import jacobi
from .forms import TernaryForm, theta_coefficients
from .genus import (build_sgenus, genus_of, weighted_coefficients)
from .modeq import (ALPHA_RF, BETA_RF, M_RF, RationalFunction,
                    UnsupportedRadicand, rational_root)
from .prover import EtaCombination, ProofCertificate, prove
from .series import Series, invert, is_nonnegative, sift
from .theta import BUILTIN_NAMES, EtaQuotient, general_theta, named_function

__all__ = [
    "RegistryError", "IdentitySpec", "Conditions", "VerifyResult",
    "parse_registry", "load_registry", "verify_series", "verify_ternary",
    "verify_positivity", "verify_modeq3", "verify_eta", "verify_entry",
    "run_suite", "RationalFunction", "rational_root",
]


class RegistryError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class QPow:
    power: int


@dataclass(frozen=True)
class Named:
    name: str
    power: int
    negate: bool


@dataclass(frozen=True)
class Theta2:
    x: int
    sign_x: int
    y: int
    sign_y: int


@dataclass(frozen=True)
class EtaAtom:
    exponents: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Sift:
    step: int
    residue: int
    body: object


@dataclass(frozen=True)
class Add:
    terms: tuple


@dataclass(frozen=True)
class Mul:
    factors: tuple  # (node, inverted: bool)


@dataclass(frozen=True)
class Neg:
    body: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: Fraction


@dataclass(frozen=True)
class FormCount:
    form: tuple
    divisor: int  # evaluate at M / divisor^2; zero count unless divisor^2 | M


@dataclass(frozen=True)
class WeightedCount:
    form: tuple


@dataclass(frozen=True)
class EpsScalar:
    form: tuple
    w: int


@dataclass(frozen=True)
class UnionCount:
    s: int


@dataclass(frozen=True)
class UnionEpsCount:
    s: int
    w: int


@dataclass(frozen=True)
class ModSym:
    name: str  # m | alpha | beta


@dataclass(frozen=True)
class Conditions:
    residues: tuple[int, ...] = ()
    modulus: int = 0
    divides: tuple[tuple[int, bool], ...] = ()  # (w, exact)
    jacobi: tuple[tuple[int, int], ...] = ()    # (denominator, required value)
    expect_negative: bool = False
    level: int = 0
    theta_ref: str = ""

    def qualifies(self, m: int) -> bool:
        if self.modulus and m % self.modulus not in self.residues:
            return False
        for w, exact in self.divides:
            if m % w:
                return False
            if exact and m % (w * w) == 0:
                return False
        for den, want in self.jacobi:
            if jacobi(m, den) != want:
                return False
        return True


@dataclass(frozen=True)
class IdentitySpec:
    name: str
    mode: str
    lhs: object
    rhs: object  # None for positivity entries
    conditions: Conditions
    line: int


# ---------------------------------------------------------------------------
# tokenizing and parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<word>[A-Za-z0-9._]+)
  | (?P<dbar>\|\|)
  | (?P<sym>[-+*/^(){}\[\],:;|=]|≡)
""", re.VERBOSE)

MODES = ("series", "sift", "ternary", "positivity", "modeq3", "eta")


@dataclass
class _Token:
    kind: str  # word | int | sym
    text: str
    line: int
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise RegistryError(f"bad character {text[pos]!r}", line, col0 + pos)
        if m.lastgroup == "word":
            word = m.group()
            kind = "int" if word.isdigit() else "word"
            out.append(_Token(kind, word, line, col0 + pos))
        elif m.lastgroup in ("sym", "dbar"):
            sym = "=" if m.group() == "≡" else m.group()
            out.append(_Token("sym", sym, line, col0 + pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[_Token], mode: str, line: int):
        self.tokens = tokens
        self.mode = mode
        self.line = line
        self.pos = 0

    # --- primitives ---
    def peek(self, ahead: int = 0) -> _Token | None:
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise RegistryError("unexpected end of entry", self.line, 0)
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise RegistryError(f"expected {text!r}, found {tok.text!r}",
                                tok.line, tok.col)
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.pos += 1
            return True
        return False

    def error(self, msg: str) -> RegistryError:
        tok = self.peek()
        if tok is None:
            return RegistryError(msg, self.line, 0)
        return RegistryError(msg + f" (at {tok.text!r})", tok.line, tok.col)

    def parse_int(self) -> int:
        neg = self.accept("-")
        tok = self.next()
        if tok.kind != "int":
            raise RegistryError(f"expected integer, found {tok.text!r}",
                                tok.line, tok.col)
        return -int(tok.text) if neg else int(tok.text)

    # --- expressions ---
    def parse_expr(self):
        terms = [(1, self.parse_term())]
        while True:
            if self.accept("+"):
                terms.append((1, self.parse_term()))
            elif self.accept("-"):
                terms.append((-1, self.parse_term()))
            else:
                break
        nodes = tuple(t if s > 0 else Neg(t) for s, t in terms)
        return nodes[0] if len(nodes) == 1 else Add(nodes)

    def parse_term(self):
        factors = [(self.parse_factor(), False)]
        while True:
            if self.accept("*"):
                factors.append((self.parse_factor(), False))
            elif self.accept("/"):
                factors.append((self.parse_factor(), True))
            else:
                break
        if len(factors) == 1 and not factors[0][1]:
            return factors[0][0]
        return Mul(tuple(factors))

    def parse_factor(self):
        if self.accept("-"):
            return Neg(self.parse_factor())
        node = self.parse_atom()
        if self.accept("^"):
            node = Pow(node, self.parse_exponent())
        return node

    def parse_exponent(self) -> Fraction:
        if self.accept("("):
            num = self.parse_int()
            self.expect("/")
            den = self.parse_int()
            self.expect(")")
            if self.mode != "modeq3":
                raise self.error("fractional exponents only occur in modeq3")
            return Fraction(num, den)
        return Fraction(self.parse_int())

    def parse_qarg(self) -> tuple[int, int]:
        """(sign, power) from  q | -q | q^k | -q^k."""
        sign = -1 if self.accept("-") else 1
        tok = self.next()
        if tok.text != "q":
            raise RegistryError(f"expected q, found {tok.text!r}",
                                tok.line, tok.col)
        power = 1
        if self.accept("^"):
            power = self.parse_int()
        if power < 1:
            raise self.error("substitution power must be >= 1")
        return sign, power

    def parse_form_tuple(self) -> tuple:
        vals = [self.parse_int()]
        for _ in range(5):
            self.expect(",")
            vals.append(self.parse_int())
        return tuple(vals)

    def parse_count_arg(self) -> int:
        """M | M/w^2 inside (...)"""
        self.expect("(")
        tok = self.next()
        if tok.text != "M":
            raise RegistryError("count argument must be M or M/w^2",
                                tok.line, tok.col)
        w = 1
        if self.accept("/"):
            w = self.parse_int()
            self.expect("^")
            self.expect("2")
        self.expect(")")
        return w

    def parse_atom(self):
        tok = self.peek()
        if tok is None:
            raise self.error("missing operand")
        if tok.kind == "int":
            self.pos += 1
            return Num(int(tok.text))
        if tok.text == "(":
            if (self.mode == "ternary" and self.peek(1) is not None
                    and self.peek(1).kind == "int"
                    and self.peek(2) is not None and self.peek(2).text == ","):
                self.pos += 1
                form = self.parse_form_tuple()
                self.expect(")")
                w = self.parse_count_arg()
                return FormCount(form, w)
            if (self.mode == "ternary" and self.peek(1) is not None
                    and self.peek(1).text == "M"):
                # Jacobi-style scalars never appear in expressions
                raise self.error("unexpected (M...) in expression")
            self.pos += 1
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.kind != "word":
            raise self.error("unexpected symbol")
        word = tok.text
        if self.mode == "modeq3":
            if word in ("m", "alpha", "beta"):
                self.pos += 1
                return ModSym(word)
            raise self.error(f"unknown modeq3 symbol {word!r}")
        if self.mode == "ternary":
            self.pos += 1
            if word == "W":
                self.expect("(")
                form = self.parse_form_tuple()
                self.expect(")")
                w = self.parse_count_arg()
                if w != 1:
                    raise self.error("weighted counts take the plain argument M")
                return WeightedCount(form)
            if word == "eps":
                self.expect("(")
                form = self.parse_form_tuple()
                self.expect(";")
                w = self.parse_int()
                self.expect(")")
                return EpsScalar(form, w)
            if word == "SW":
                self.expect("(")
                s = self.parse_int()
                self.expect(")")
                if self.parse_count_arg() != 1:
                    raise self.error("SW takes the plain argument M")
                return UnionCount(s)
            if word == "SEW":
                self.expect("(")
                s = self.parse_int()
                self.expect(";")
                w = self.parse_int()
                self.expect(")")
                if self.parse_count_arg() != 1:
                    raise self.error("SEW takes the plain argument M")
                return UnionEpsCount(s, w)
            raise self.error(f"unknown ternary primitive {word!r}")
        # series / sift / positivity / eta expression atoms
        if word == "q":
            self.pos += 1
            power = 1
            if self.accept("^"):
                power = self.parse_int()
            if power < 0:
                raise self.error("negative q powers are not supported")
            return QPow(power)
        if word == "S":
            self.pos += 1
            self.expect("[")
            t = self.parse_int()
            self.expect(",")
            s = self.parse_int()
            self.expect("]")
            self.expect("(")
            body = self.parse_expr()
            self.expect(")")
            if not 0 <= s < t:
                raise self.error(f"sift requires 0 <= s < t, got t={t}, s={s}")
            return Sift(t, s, body)
        if word == "eta":
            self.pos += 1
            self.expect("{")
            exps = {}
            while True:
                delta = self.parse_int()
                self.expect(":")
                r = self.parse_int()
                if delta in exps:
                    raise self.error(f"duplicate eta divisor {delta}")
                exps[delta] = r
                if not self.accept(","):
                    break
            self.expect("}")
            return EtaAtom(tuple(sorted(exps.items())))
        if word == "f":
            self.pos += 1
            self.expect("(")
            sx, x = self.parse_qarg()
            self.expect(",")
            sy, y = self.parse_qarg()
            self.expect(")")
            return Theta2(x, sx, y, sy)
        if word in BUILTIN_NAMES:
            self.pos += 1
            self.expect("(")
            sign, power = self.parse_qarg()
            self.expect(")")
            return Named(word, power, sign < 0)
        raise self.error(f"unknown primitive {word!r}")

    # --- conditions ---
    def parse_conditions(self) -> Conditions:
        residues: tuple[int, ...] = ()
        modulus = 0
        divides: list[tuple[int, bool]] = []
        jac: list[tuple[int, int]] = []
        expect_negative = False
        level = 0
        theta_ref = ""
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok.text == "M":
                self.pos += 1
                self.expect("=")
                rs = [self.parse_int()]
                while (self.peek() is not None and self.peek().text == ","
                       and self.peek(1) is not None and self.peek(1).kind == "int"
                       and self.peek(2) is not None
                       and self.peek(2).text in (",", "mod")):
                    self.expect(",")
                    rs.append(self.parse_int())
                kw = self.next()
                if kw.text != "mod":
                    raise RegistryError("expected 'mod'", kw.line, kw.col)
                modulus = self.parse_int()
                residues = tuple(r % modulus for r in rs)
            elif tok.kind == "int":
                w = self.parse_int()
                bar = self.next()
                if bar.text == "||":
                    exact = True
                elif bar.text == "|":
                    exact = False
                else:
                    raise RegistryError("expected | or ||", bar.line, bar.col)
                self.expect("M")
                divides.append((w, exact))
            elif tok.text == "(":
                self.pos += 1
                self.expect("M")
                self.expect("|")
                den = self.parse_int()
                self.expect(")")
                self.expect("=")
                jac.append((den, self.parse_int()))
            elif tok.text == "expect":
                self.pos += 1
                what = self.next()
                if what.text == "negative":
                    expect_negative = True
                elif what.text != "nonnegative":
                    raise RegistryError("expect clause takes negative/nonnegative",
                                        what.line, what.col)
            elif tok.text == "level":
                self.pos += 1
                level = self.parse_int()
            elif tok.text == "theta":
                self.pos += 1
                ref = self.next()
                theta_ref = ref.text
            else:
                raise self.error("unknown condition")
            if not self.accept(","):
                break
        return Conditions(residues, modulus, tuple(divides), tuple(jac),
                          expect_negative, level, theta_ref)


def _split_entries(text: str):
    """Yield (name, mode, body_tokens, line) for each registry entry."""
    pending: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0] in " \t":
            if not pending:
                raise RegistryError("continuation line without an entry",
                                    lineno, 1)
            pending.append((lineno, line))
            continue
        if pending:
            yield pending
        pending = [(lineno, line)]
    if pending:
        yield pending


def parse_registry(text: str) -> list[IdentitySpec]:
    """Parse the registry text; raises RegistryError with line/column."""
    specs: list[IdentitySpec] = []
    names = set()
    for chunk in _split_entries(text):
        first_line, first_text = chunk[0]
        header = re.match(r"\s*([A-Za-z0-9._]+)\s*:\s*([a-z0-9]+)\s*:\s*",
                          first_text)
        if header is None:
            raise RegistryError("entry must start with 'name: mode:'",
                                first_line, 1)
        name, mode = header.group(1), header.group(2)
        if mode not in MODES:
            raise RegistryError(f"unknown mode {mode!r}", first_line,
                                header.start(2) + 1)
        if name in names:
            raise RegistryError(f"duplicate identity name {name!r}",
                                first_line, 1)
        names.add(name)
        tokens: list[_Token] = []
        tokens += _tokenize(first_text[header.end():], first_line, header.end())
        for lineno, more in chunk[1:]:
            tokens += _tokenize(more, lineno, 0)
        # split off the where clause at the top level
        where_at = None
        for i, tok in enumerate(tokens):
            if tok.kind == "word" and tok.text == "where":
                where_at = i
                break
        cond_tokens = tokens[where_at + 1:] if where_at is not None else []
        expr_tokens = tokens[:where_at] if where_at is not None else tokens
        parser = _Parser(expr_tokens, mode, first_line)
        lhs = parser.parse_expr()
        rhs = None
        if parser.accept("="):
            rhs = parser.parse_expr()
        if parser.peek() is not None:
            raise parser.error("trailing tokens after statement")
        if mode == "positivity":
            if rhs is not None:
                raise RegistryError("positivity entries take a single expression",
                                    first_line, 1)
        elif rhs is None:
            rhs = Num(0)
        cparser = _Parser(cond_tokens, mode, first_line)
        conditions = cparser.parse_conditions()
        if cparser.peek() is not None:
            raise cparser.error("trailing tokens after conditions")
        if mode == "eta" and conditions.level < 1:
            raise RegistryError(f"eta entry {name!r} needs a level clause",
                                first_line, 1)
        specs.append(IdentitySpec(name, mode, lhs, rhs, conditions, first_line))
    return specs


def load_registry(path) -> dict[str, IdentitySpec]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return {spec.name: spec for spec in parse_registry(text)}


def default_registry_path():
    from importlib.resources import files
    return files("thetaforms").joinpath("data/registry.txt")


def load_default_registry() -> dict[str, IdentitySpec]:
    from importlib.resources import as_file
    with as_file(default_registry_path()) as path:
        return load_registry(path)


# ---------------------------------------------------------------------------
# series evaluation
# ---------------------------------------------------------------------------

def eval_series(node, n: int) -> Series:
    """Evaluate a series-mode AST to exactly n coefficients."""
    if isinstance(node, Num):
        return Series.monomial(0, n, node.value)
    if isinstance(node, QPow):
        return Series.monomial(node.power, n)
    if isinstance(node, Named):
        return named_function(node.name, n, node.power, node.negate)
    if isinstance(node, Theta2):
        return general_theta(node.x, node.y, n, node.sign_x, node.sign_y)
    if isinstance(node, EtaAtom):
        from .theta import expand_eta_quotient
        level = lcm(*(d for d, _ in node.exponents))
        offset, unit = expand_eta_quotient(
            EtaQuotient.from_dict(level, dict(node.exponents)), n)
        if offset < 0:
            raise ValueError("eta quotient with a pole cannot embed in a series")
        return Series.monomial(offset, n) * unit
    if isinstance(node, Neg):
        return -eval_series(node.body, n)
    if isinstance(node, Add):
        total = eval_series(node.terms[0], n)
        for term in node.terms[1:]:
            total = total + eval_series(term, n)
        return total
    if isinstance(node, Mul):
        total = Series.one(n)
        for factor, inverted in node.factors:
            value = eval_series(factor, n)
            total = total * (invert(value) if inverted else value)
        return total
    if isinstance(node, Pow):
        if node.exponent.denominator != 1:
            raise ValueError("fractional exponent outside modeq3")
        k = node.exponent.numerator
        if k < 0:
            return invert(eval_series(node.base, n)) ** (-k)
        return eval_series(node.base, n) ** k
    if isinstance(node, Sift):
        need = node.step * (n - 1) + node.residue + 1 if n > 0 else 0
        inner = eval_series(node.body, need)
        return sift(inner, node.step, node.residue)
    raise TypeError(f"cannot evaluate {type(node).__name__} as a series")


# ---------------------------------------------------------------------------
# ternary evaluation
# ---------------------------------------------------------------------------

class _TernaryContext:
    def __init__(self, mmax: int):
        self.n = mmax + 1
        self._theta: dict[tuple, tuple[int, ...]] = {}
        self._weighted: dict[tuple, tuple[int, ...]] = {}
        self._eps: dict[tuple, int] = {}
        self._union: dict[int, object] = {}

    def theta(self, form_tuple: tuple) -> tuple[int, ...]:
        if form_tuple not in self._theta:
            self._theta[form_tuple] = theta_coefficients(
                TernaryForm(*form_tuple), self.n)
        return self._theta[form_tuple]

    def weighted(self, form_tuple: tuple) -> tuple[int, ...]:
        if form_tuple not in self._weighted:
            record = genus_of(TernaryForm(*form_tuple))
            self._weighted[form_tuple] = weighted_coefficients(record, self.n)
        return self._weighted[form_tuple]

    def eps(self, form_tuple: tuple, w: int) -> int:
        key = (form_tuple, w)
        if key not in self._eps:
            from .genus import epsilon
            self._eps[key] = epsilon(genus_of(TernaryForm(*form_tuple)), w)
        return self._eps[key]

    def union(self, s: int):
        if s not in self._union:
            sg = build_sgenus(s)
            rows = [weighted_coefficients(tg, self.n) for tg in sg.tg]
            self._union[s] = (sg, rows)
        return self._union[s]


def _eval_count(node, m: int, ctx: _TernaryContext) -> int:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, FormCount):
        w2 = node.divisor * node.divisor
        if m % w2:
            return 0
        return ctx.theta(node.form)[m // w2]
    if isinstance(node, WeightedCount):
        return ctx.weighted(node.form)[m]
    if isinstance(node, EpsScalar):
        return ctx.eps(node.form, node.w)
    if isinstance(node, UnionCount):
        _, rows = ctx.union(node.s)
        return sum(row[m] for row in rows)
    if isinstance(node, UnionEpsCount):
        sg, rows = ctx.union(node.s)
        return sum(sg.eps[(i, node.w)] * row[m] for i, row in enumerate(rows))
    if isinstance(node, Neg):
        return -_eval_count(node.body, m, ctx)
    if isinstance(node, Add):
        return sum(_eval_count(t, m, ctx) for t in node.terms)
    if isinstance(node, Mul):
        total = 1
        for factor, inverted in node.factors:
            v = _eval_count(factor, m, ctx)
            if inverted:
                if total % v:
                    raise ArithmeticError("non-integer division in ternary entry")
                total //= v
            else:
                total *= v
        return total
    if isinstance(node, Pow):
        if node.exponent.denominator != 1 or node.exponent < 0:
            raise ValueError("ternary exponents must be nonnegative integers")
        return _eval_count(node.base, m, ctx) ** node.exponent.numerator
    raise TypeError(f"cannot evaluate {type(node).__name__} in ternary mode")


# ---------------------------------------------------------------------------
# modeq3 evaluation
# ---------------------------------------------------------------------------

def _monomials(node):
    """Flatten a modeq3 AST into [(coef, m_exp, alpha_eighths, beta_eighths)]."""
    if isinstance(node, Num):
        return [(Fraction(node.value), 0, 0, 0)]
    if isinstance(node, ModSym):
        if node.name == "m":
            return [(Fraction(1), 1, 0, 0)]
        if node.name == "alpha":
            return [(Fraction(1), 0, 8, 0)]
        return [(Fraction(1), 0, 0, 8)]
    if isinstance(node, Neg):
        return [(-c, k, x, y) for c, k, x, y in _monomials(node.body)]
    if isinstance(node, Add):
        out = []
        for term in node.terms:
            out.extend(_monomials(term))
        return out
    if isinstance(node, Pow):
        base = _monomials(node.base)
        if len(base) != 1:
            raise UnsupportedRadicand("fractional powers of sums are unsupported")
        c, k, x, y = base[0]
        e = node.exponent
        ki = k * e
        xi = x * e
        yi = y * e
        if ki.denominator != 1 or xi.denominator != 1 or yi.denominator != 1:
            raise UnsupportedRadicand(f"exponent {e} leaves the eighth lattice")
        if c != 1:
            if e.denominator != 1:
                raise UnsupportedRadicand("fractional power of a scalar")
            c = c ** e.numerator
        return [(c, int(ki), int(xi), int(yi))]
    if isinstance(node, Mul):
        out = [(Fraction(1), 0, 0, 0)]
        for factor, inverted in node.factors:
            mono = _monomials(factor)
            if inverted:
                if len(mono) != 1:
                    raise UnsupportedRadicand("division by a sum is unsupported")
                c, k, x, y = mono[0]
                mono = [(1 / c, -k, -x, -y)]
            out = [(c1 * c2, k1 + k2, x1 + x2, y1 + y2)
                   for c1, k1, x1, y1 in out
                   for c2, k2, x2, y2 in mono]
        return out
    raise TypeError(f"cannot evaluate {type(node).__name__} in modeq3 mode")


def _modeq_value(node) -> RationalFunction:
    total = RationalFunction.make(())
    for coef, k, x8, y8 in _monomials(node):
        radicand = (ALPHA_RF ** x8) * (BETA_RF ** y8)
        root = rational_root(radicand, 8)
        term = RationalFunction.from_fraction(coef) * (M_RF ** k) * root
        total = total + term
    return total


# ---------------------------------------------------------------------------
# verification drivers
# ---------------------------------------------------------------------------

@dataclass
class VerifyResult:
    name: str
    mode: str
    passed: bool
    params: str
    witness: str = ""
    elapsed_ms: float = 0.0
    detail: object = None

    def row(self) -> tuple:
        return (self.name, self.mode, self.params,
                "pass" if self.passed else "FAIL",
                self.witness, f"{self.elapsed_ms:.0f}")


def verify_series(spec: IdentitySpec, n: int) -> VerifyResult:
    """Expand both sides to n coefficients and compare exactly."""
    if spec.mode not in ("series", "sift"):
        raise ValueError(f"{spec.name} is not a series/sift entry")
    lhs = eval_series(spec.lhs, n)
    rhs = eval_series(spec.rhs, n)
    width = min(lhs.truncation, rhs.truncation)
    witness = ""
    passed = True
    for i in range(width):
        if lhs.coeffs[i] != rhs.coeffs[i]:
            passed = False
            witness = (f"exponent {i}: {lhs.coeffs[i]} != {rhs.coeffs[i]}")
            break
    return VerifyResult(spec.name, spec.mode, passed, f"terms={n}", witness)


def verify_ternary(spec: IdentitySpec, mmax: int) -> VerifyResult:
    """Compare both sides at every qualifying M <= mmax."""
    if spec.mode != "ternary":
        raise ValueError(f"{spec.name} is not a ternary entry")
    ctx = _TernaryContext(mmax)
    checked = 0
    for m in range(1, mmax + 1):
        if not spec.conditions.qualifies(m):
            continue
        checked += 1
        left = _eval_count(spec.lhs, m, ctx)
        right = _eval_count(spec.rhs, m, ctx)
        if left != right:
            return VerifyResult(spec.name, spec.mode, False,
                                f"Mmax={mmax}",
                                f"M={m}: {left} != {right}")
    return VerifyResult(spec.name, spec.mode, True,
                        f"Mmax={mmax} ({checked} values)")


def verify_positivity(spec: IdentitySpec, limit: int) -> VerifyResult:
    """Nonnegativity scan of the expansion, honoring `expect negative`."""
    if spec.mode != "positivity":
        raise ValueError(f"{spec.name} is not a positivity entry")
    value = eval_series(spec.lhs, limit)
    ok, bad = is_nonnegative(value)
    if spec.conditions.expect_negative:
        passed = not ok
        witness = f"negative coefficient at exponent {bad}" if not ok else \
            "no negative coefficient found"
    else:
        passed = ok
        witness = "" if ok else f"negative coefficient at exponent {bad}"
    return VerifyResult(spec.name, spec.mode, passed, f"limit={limit}", witness)


def verify_modeq3(spec: IdentitySpec) -> VerifyResult:
    """Exact rational-function comparison through the degree-3 parametrization."""
    if spec.mode != "modeq3":
        raise ValueError(f"{spec.name} is not a modeq3 entry")
    lhs = _modeq_value(spec.lhs)
    rhs = _modeq_value(spec.rhs)
    passed = lhs == rhs
    witness = "" if passed else f"{lhs} != {rhs}"
    return VerifyResult(spec.name, spec.mode, passed, "exact", witness)


def _eta_combination(spec: IdentitySpec) -> EtaCombination:
    level = spec.conditions.level
    terms: list[tuple[Fraction, EtaQuotient]] = []
    constant = Fraction(0)

    def walk(node, scale: Fraction):
        nonlocal constant
        if isinstance(node, Num):
            constant -= scale * node.value  # moved to the constant side
            return
        if isinstance(node, EtaAtom):
            terms.append((scale, EtaQuotient(level, node.exponents)))
            return
        if isinstance(node, Neg):
            walk(node.body, -scale)
            return
        if isinstance(node, Add):
            for term in node.terms:
                walk(term, scale)
            return
        if isinstance(node, Mul):
            scalar = scale
            eta_node = None
            for factor, inverted in node.factors:
                if isinstance(factor, Num):
                    val = Fraction(factor.value)
                    scalar = scalar / val if inverted else scalar * val
                elif isinstance(factor, EtaAtom) and eta_node is None and not inverted:
                    eta_node = factor
                else:
                    raise ValueError(
                        "eta entries must be linear combinations of quotients")
            if eta_node is None:
                constant -= scalar
            else:
                walk(eta_node, scalar)
            return
        raise ValueError("eta entries must be linear combinations of quotients")

    walk(spec.lhs, Fraction(1))
    walk(spec.rhs, Fraction(-1))
    return EtaCombination(level, tuple(terms), constant)


def verify_eta(spec: IdentitySpec) -> tuple[VerifyResult, ProofCertificate]:
    """Prove the eta-quotient identity by the valence bound."""
    if spec.mode != "eta":
        raise ValueError(f"{spec.name} is not an eta entry")
    cert = prove(_eta_combination(spec))
    result = VerifyResult(spec.name, spec.mode, cert.proved,
                          f"level={cert.level} B={cert.valence_bound}",
                          "" if cert.proved else cert.verdict, detail=cert)
    return result, cert


def verify_entry(spec: IdentitySpec, terms: int = 500, mmax: int = 10000,
                 limit: int = 1000) -> VerifyResult:
    start = time.perf_counter()
    if spec.mode in ("series", "sift"):
        result = verify_series(spec, terms)
    elif spec.mode == "ternary":
        result = verify_ternary(spec, mmax)
    elif spec.mode == "positivity":
        result = verify_positivity(spec, limit)
    elif spec.mode == "modeq3":
        result = verify_modeq3(spec)
    elif spec.mode == "eta":
        result, _ = verify_eta(spec)
    else:  # pragma: no cover
        raise ValueError(f"unknown mode {spec.mode}")
    result.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return result


def _suite_worker(args):
    path, names, terms, mmax, limit = args
    registry = load_registry(path)
    return [verify_entry(registry[name], terms, mmax, limit)
            for name in names]


def run_suite(registry: dict[str, IdentitySpec], terms: int = 500,
              mmax: int = 10000, limit: int = 1000, jobs: int = 1,
              registry_path=None) -> list[VerifyResult]:
    """Verify every entry; results are ordered by identity name."""
    names = sorted(registry)
    if jobs > 1 and registry_path is not None:
        from concurrent.futures import ProcessPoolExecutor
        chunk = (len(names) + jobs - 1) // jobs
        batches = [(str(registry_path), names[i:i + chunk], terms, mmax, limit)
                   for i in range(0, len(names), chunk)]
        results: list[VerifyResult] = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_suite_worker, batches):
                results.extend(part)
        results.sort(key=lambda r: r.name)
        return results
    return [verify_entry(registry[name], terms, mmax, limit) for name in names]
