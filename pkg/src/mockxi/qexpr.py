"""A small text language for q-series expressions.

Grammar (``^`` binds tighter than unary minus, ``*`` is never implicit)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | 'q' | 'f_' INT | NAME '(' arg ')' | g3 | part | '(' expr ')'
    arg    := ['-'] 'q' ['^' INT]
    g3     := ('g3' | 'g2') '(' (INT | 'q' ['^' INT]) ',' (INT | 'q' ['^' INT]) ')'
    part   := 'part' '(' expr ',' INT ',' INT ')'

Named series: phi, psi, omega, nu, xi, mtf (the third-order f), F, plus
xidef (xi summed from its definition) and jacobi (the sparse sum for f_1^3).
``part(E, A, r)`` is the dissection component ``sum_n c_{An+r} q^n`` of E.

A corpus line reads ``LHS == RHS [order N] [mod m]``; ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from . import factory
from .series import (
    EXACT,
    CoefficientRing,
    TruncatedSeries,
    add,
    constant,
    divide,
    mul,
    neg,
    power,
    scale,
    shift,
    sub,
    substitute,
    extract,
    zero,
    NonUnitError,
)

__all__ = [
    "QExprError",
    "QSyntaxError",
    "Int",
    "Q",
    "Eta",
    "Named",
    "Universal",
    "Part",
    "Neg",
    "BinOp",
    "Pow",
    "Expr",
    "parse",
    "to_string",
    "evaluate",
    "SeriesCache",
    "CorpusLine",
    "parse_corpus_line",
    "parse_corpus",
    "NAMED_SERIES",
]


class QExprError(ValueError):
    pass


class QSyntaxError(QExprError):
    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


# -- AST --------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Q:
    pass


@dataclass(frozen=True)
class Eta:
    k: int


@dataclass(frozen=True)
class Named:
    """``name(sign * q^k)``."""

    name: str
    sign: int = 1
    k: int = 1


@dataclass(frozen=True)
class Universal:
    """``g3(q^alpha, q^beta)`` or ``g2(...)``."""

    name: str
    alpha: int
    beta: int


@dataclass(frozen=True)
class Part:
    expr: "Expr"
    A: int
    r: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Int, Q, Eta, Named, Universal, Part, Neg, BinOp, Pow]

NAMED_SERIES = {
    "phi": factory.phi,
    "psi": factory.psi,
    "omega": factory.mock_omega,
    "nu": factory.mock_nu,
    "xi": factory.pxi,
    "xidef": factory.mock_xi_definition,
    "jacobi": factory.jacobi_cube,
    "mtf": factory.mock_f3,
    "F": factory.big_f,
}
_UNIVERSAL = {"g3": factory.g3, "g2": factory.g2}


# -- lexer ------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<eta>f_(?P<scale>\d+))
  | (?P<int>\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise QSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = "eta" if m.group("eta") else m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(0), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


# -- parser -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        return QSyntaxError(msg, tok.pos, self.text)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return v

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            sign = -1 if self.accept("-") else 1
            return Pow(base, sign * self.integer())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "int":
            return Int(self.integer())
        if tok.kind == "eta":
            k = int(tok.text[2:])
            if k < 1:
                raise self.error("invalid scale: f_k needs k >= 1")
            self.i += 1
            return Eta(k)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "name":
            self.i += 1
            if tok.text == "q":
                return Q()
            if tok.text == "f":
                raise self.error("eta symbols are written f_k, e.g. f_1", tok)
            if tok.text in NAMED_SERIES:
                self.expect("(")
                sign, k = self.argument()
                self.expect(")")
                return Named(tok.text, sign, k)
            if tok.text in _UNIVERSAL:
                self.expect("(")
                alpha = self.monomial_power()
                self.expect(",")
                beta = self.monomial_power()
                self.expect(")")
                if not 0 < alpha < beta:
                    raise self.error(f"{tok.text} needs 0 < alpha < beta", tok)
                return Universal(tok.text, alpha, beta)
            if tok.text == "part":
                self.expect("(")
                e = self.expr()
                self.expect(",")
                A = self.integer()
                self.expect(",")
                r = self.integer()
                self.expect(")")
                if A < 1 or r >= A:
                    raise self.error("part(E, A, r) needs A >= 1 and 0 <= r < A", tok)
                return Part(e, A, r)
            raise self.error(f"unknown name {tok.text!r}", tok)
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def argument(self) -> tuple[int, int]:
        start = self.tok
        sign = -1 if self.accept("-") else 1
        if not (self.tok.kind == "name" and self.tok.text == "q"):
            raise self.error("malformed argument: expected q, -q, q^k or -q^k", start)
        self.i += 1
        k = 1
        if self.accept("^"):
            k = self.integer()
            if k < 1:
                raise self.error("malformed argument: power must be >= 1", start)
        return sign, k

    def monomial_power(self) -> int:
        if self.tok.kind == "int":
            return self.integer()
        if self.tok.kind == "name" and self.tok.text == "q":
            self.i += 1
            return self.integer() if self.accept("^") else 1
        raise self.error("expected an exponent or q^k")


def parse(text: str) -> Expr:
    """Parse an expression; raises QSyntaxError with the byte offset on failure."""
    return _Parser(text).parse()


# -- printer ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_UNARY_PREC = 3
_ATOM_PREC = 5


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _UNARY_PREC
    if isinstance(e, Pow):
        return 4
    return _ATOM_PREC


def _wrap(s: str, cond: bool) -> str:
    return f"({s})" if cond else s


def _arg(sign: int, k: int) -> str:
    return ("-" if sign < 0 else "") + ("q" if k == 1 else f"q^{k}")


def to_string(e: Expr) -> str:
    """Canonical text form; ``parse(to_string(e)) == e``."""
    if isinstance(e, Int):
        return str(e.value)
    if isinstance(e, Q):
        return "q"
    if isinstance(e, Eta):
        return f"f_{e.k}"
    if isinstance(e, Named):
        return f"{e.name}({_arg(e.sign, e.k)})"
    if isinstance(e, Universal):
        return f"{e.name}({_arg(1, e.alpha)},{_arg(1, e.beta)})"
    if isinstance(e, Part):
        return f"part({to_string(e.expr)},{e.A},{e.r})"
    if isinstance(e, Neg):
        return "-" + _wrap(to_string(e.operand), _prec(e.operand) < _UNARY_PREC)
    if isinstance(e, Pow):
        return _wrap(to_string(e.base), _prec(e.base) < _ATOM_PREC) + f"^{e.exponent}"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = _wrap(to_string(e.left), _prec(e.left) < p)
        right = _wrap(to_string(e.right), _prec(e.right) <= p)
        sep = f" {e.op} " if p == 1 else e.op
        return left + sep + right
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluator --------------------------------------------------------------


def evaluate(e: Union[Expr, str], order: int, ring: CoefficientRing = EXACT, cache: Optional["SeriesCache"] = None) -> TruncatedSeries:
    """Expand an expression to the given order in the given ring.

    Named series are looked up in ``cache`` when one is given, so several
    expressions can share one long expansion of, say, ``xi``.
    """
    if isinstance(e, str):
        e = parse(e)
    if order < 0:
        raise ValueError("order must be >= 0")
    return _Evaluator(ring, cache if cache is not None else SeriesCache()).eval(e, order)


class SeriesCache:
    """Longest expansion computed so far of each named series, per ring."""

    def __init__(self):
        self._store: dict[tuple[str, CoefficientRing], TruncatedSeries] = {}

    def seed(self, name: str, series: TruncatedSeries) -> None:
        if name not in NAMED_SERIES:
            raise KeyError(name)
        key = (name, series.ring)
        have = self._store.get(key)
        if have is None or have.order < series.order:
            self._store[key] = series

    def get(self, name: str, order: int, ring: CoefficientRing) -> TruncatedSeries:
        have = self._store.get((name, ring))
        if have is None or have.order < order:
            have = NAMED_SERIES[name](order, ring)
            self._store[(name, ring)] = have
        return have if have.order == order else have.truncate(order)


class _Evaluator:
    def __init__(self, ring: CoefficientRing, cache: SeriesCache):
        self.ring = ring
        self.cache = cache

    def eval(self, e: Expr, n: int) -> TruncatedSeries:
        ring = self.ring
        if isinstance(e, Int):
            return constant(e.value, n, ring)
        if isinstance(e, Q):
            return shift(constant(1, n, ring), 1)
        if isinstance(e, Eta):
            return factory.euler_product(e.k, n, ring)
        if isinstance(e, Named):
            base = self.cache.get(e.name, n // e.k, ring)
            return substitute(base, e.k, e.sign, order=n)
        if isinstance(e, Universal):
            return _UNIVERSAL[e.name](e.alpha, e.beta, n, ring)
        if isinstance(e, Part):
            return extract(self.eval(e.expr, e.A * n + e.r), e.A, e.r)
        if isinstance(e, Neg):
            return neg(self.eval(e.operand, n))
        if isinstance(e, BinOp) and e.op in "+-":
            f = add if e.op == "+" else sub
            return f(self.eval(e.left, n), self.eval(e.right, n))
        if isinstance(e, (BinOp, Pow)):
            return self.product(e, n)
        raise TypeError(f"not an expression node: {e!r}")

    def product(self, e: Expr, n: int) -> TruncatedSeries:
        # Flatten a product/quotient so integer factors, powers of q and eta
        # symbols are handled together: q^t lowers the order needed for the
        # rest, and eta factors are applied one sparse factor at a time.
        coef, qpow, etas, others = 1, 0, {}, []
        denominators = []
        for factor, exp in _factors(e, 1):
            if isinstance(factor, Int):
                v = factor.value
                if exp < 0:
                    inv = self.ring.unit_inverse(v)
                    coef *= inv ** (-exp)
                else:
                    coef *= v**exp
            elif isinstance(factor, Q):
                qpow += exp
            elif isinstance(factor, Eta):
                etas[factor.k] = etas.get(factor.k, 0) + exp
            elif exp > 0:
                others.append((factor, exp))
            else:
                denominators.append((factor, -exp))
        if qpow < 0:
            raise NonUnitError(0, self.ring)
        if qpow > n:
            return zero(n, self.ring)
        m = n - qpow
        result = factory.eta_quotient(etas, m, self.ring)
        for factor, exp in others:
            s = self.eval(factor, m)
            result = mul(result, s if exp == 1 else power(s, exp))
        for factor, exp in denominators:
            s = self.eval(factor, m)
            for _ in range(exp):
                result = divide(result, s)
        if coef != 1:
            result = scale(result, coef)
        return shift(result, qpow, order=n)


def _factors(e: Expr, exp: int):
    if isinstance(e, BinOp) and e.op == "*":
        yield from _factors(e.left, exp)
        yield from _factors(e.right, exp)
    elif isinstance(e, BinOp) and e.op == "/":
        yield from _factors(e.left, exp)
        yield from _factors(e.right, -exp)
    elif isinstance(e, Pow):
        yield from _factors(e.base, exp * e.exponent)
    else:
        yield e, exp


# -- corpus lines -----------------------------------------------------------

_OPTION = re.compile(r"\[\s*(order|mod)\s+(\d+)\s*\]")


@dataclass(frozen=True)
class CorpusLine:
    lhs: Expr
    rhs: Expr
    order: Optional[int] = None
    modulus: Optional[int] = None
    line: int = 0

    def __str__(self):
        s = f"{to_string(self.lhs)} == {to_string(self.rhs)}"
        if self.order is not None:
            s += f" [order {self.order}]"
        if self.modulus is not None:
            s += f" [mod {self.modulus}]"
        return s


def parse_corpus_line(text: str, line: int = 0) -> Optional[CorpusLine]:
    """Parse ``LHS == RHS [order N] [mod m]``; blank/comment lines give None."""
    body = text.split("#", 1)[0].strip()
    if not body:
        return None
    opts = {}
    while True:
        m = _OPTION.search(body)
        if not m:
            break
        key = m.group(1)
        if key in opts:
            raise QSyntaxError(f"duplicate [{key}] option", m.start(), text)
        opts[key] = int(m.group(2))
        body = body[: m.start()] + " " * (m.end() - m.start()) + body[m.end() :]
    if "[" in body or "]" in body:
        raise QSyntaxError("malformed option; expected [order N] or [mod m]", body.find("[") if "[" in body else body.find("]"), text)
    if body.count("==") != 1:
        raise QSyntaxError("expected exactly one '=='", 0, text)
    left, right = body.split("==")
    lhs = parse(left)
    try:
        rhs = parse(right)
    except QSyntaxError as exc:
        raise QSyntaxError(str(exc).rsplit(" at offset", 1)[0], exc.offset + len(left) + 2, text) from None
    if opts.get("mod") is not None and opts["mod"] < 2:
        raise QExprError("modulus must be >= 2")
    return CorpusLine(lhs, rhs, opts.get("order"), opts.get("mod"), line)


def parse_corpus(text: str) -> list[CorpusLine]:
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        entry = parse_corpus_line(raw, i)
        if entry is not None:
            out.append(entry)
    return out
