"""Tokenizer and recursive-descent parser for ``.qclaim`` files.

A claim file is a list of ``key: value`` sections.  A value may continue on
following lines that start with whitespace.  ``#`` starts a comment.

    claim  thm1_1
    title: ...
    kind:  congruence | series | padic
    status: theorem | conjecture | refuted
    params: d, n
    monos: e                      (a and e are always monomial symbols)
    where: d even; d >= 2; n = d+1 (mod 2*d)
    lhs:   sum k=0..(d*n+n-1)/(2*d) of [3*d*k+1] * poch(q, e; q^(2*d))_k * q^(d*k)
    rhs:   0
    mod:   Phi(n)^3
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ClaimSyntaxError
from .ast import (
    BinOp,
    Bracket,
    Cmp,
    Cond,
    Congruent,
    Fact,
    GammaP,
    Inf,
    Neg,
    Num,
    Phi,
    Poch,
    Predicate,
    ProdNode,
    SumNode,
    Sym,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+)
  | (?P<gamma>Gamma_p\b)
  | (?P<id>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>\.\.|<=|>=|!=|[-+*/^()\[\],;_=<>!])
    """,
    re.VERBOSE,
)

KEYWORDS = {"sum", "prod", "of", "if", "else", "mod", "poch", "Phi", "fact", "inf", "even", "odd", "prime"}


@dataclass(frozen=True)
class Token:
    kind: str  # num | id | op | eof
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1, source: str | None = None) -> list:
    """Split an expression into tokens; ``line``/``col`` locate ``text[0]``."""
    out = []
    pos = 0
    cur_line, cur_col = line, col
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ClaimSyntaxError(f"unexpected character {text[pos]!r}", cur_line, cur_col, source)
        kind = m.lastgroup
        s = m.group()
        if kind == "gamma":
            kind = "id"
        if kind != "ws":
            out.append(Token(kind, s, cur_line, cur_col))
        for ch in s:
            if ch == "\n":
                cur_line += 1
                cur_col = 1
            else:
                cur_col += 1
        pos = m.end()
    out.append(Token("eof", "", cur_line, cur_col))
    return out


class ExprParser:
    def __init__(self, tokens: list, source: str | None = None):
        self.toks = tokens
        self.i = 0
        self.source = source

    # token helpers --------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ClaimSyntaxError(msg, tok.line, tok.col, self.source)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "id") and self.tok.text == text

    def take(self, text: str | None = None) -> Token:
        tok = self.tok
        if text is not None and not self.at(text):
            shown = tok.text or "end of input"
            self.error(f"expected {text!r}, found {shown!r}")
        if tok.kind == "eof":
            self.error("unexpected end of input")
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        tok = self.tok
        if tok.kind != "id" or tok.text in KEYWORDS:
            self.error(f"expected a name, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    def finish(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")

    # grammar --------------------------------------------------------------
    def expr(self):
        node = self.additive()
        if self.accept("if"):
            test = self.condition()
            self.take("else")
            other = self.expr()
            return Cond(node, test, other)
        return node

    def additive(self):
        node = self.multiplicative()
        while self.at("+") or self.at("-"):
            op = self.take().text
            node = BinOp(op, node, self.multiplicative())
        return node

    def multiplicative(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.take().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.postfix()
        if self.accept("^"):
            return BinOp("^", base, self.unary())
        return base

    def postfix(self):
        node = self.primary()
        while self.at("!"):
            self.take()
            node = Fact(node)
        return node

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(Fraction(int(tok.text)))
        if self.accept("("):
            node = self.expr()
            self.take(")")
            return node
        if self.accept("["):
            arg = self.expr()
            self.take("]")
            base = None
            if self.accept("_"):
                self.take("(")
                base = self.expr()
                self.take(")")
            return Bracket(arg, base)
        if tok.kind == "id":
            if tok.text == "poch":
                return self.poch()
            if tok.text in ("sum", "prod"):
                return self.bigop()
            if tok.text in ("Phi", "fact", "Gamma_p"):
                self.take()
                self.take("(")
                arg = self.expr()
                self.take(")")
                return {"Phi": Phi, "fact": Fact, "Gamma_p": GammaP}[tok.text](arg)
            if tok.text == "inf":
                self.take()
                return Inf()
            return Sym(self.ident())
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def poch(self):
        self.take("poch")
        self.take("(")
        bases = [self.expr()]
        while self.accept(","):
            bases.append(self.expr())
        step = None
        if self.accept(";"):
            step = self.expr()
        self.take(")")
        self.take("_")
        length = self.length()
        return Poch(tuple(bases), step, length)

    def length(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(Fraction(int(tok.text)))
        if self.accept("("):
            node = self.expr()
            self.take(")")
            return node
        if self.accept("inf"):
            return Inf()
        return Sym(self.ident())

    def bigop(self):
        which = self.take().text
        var = self.ident()
        self.take("=")
        lo = self.additive()
        self.take("..")
        hi = Inf() if self.accept("inf") else self.additive()
        self.take("of")
        body = self.additive()
        return (SumNode if which == "sum" else ProdNode)(var, lo, hi, body)

    def condition(self):
        left = self.additive()
        for name in ("even", "odd", "prime"):
            if self.accept(name):
                return Predicate(left, name)
        for op in ("<=", ">=", "!=", "<", ">", "="):
            if self.at(op):
                self.take()
                right = self.additive()
                if op == "=" and self.at("(") and self.toks[self.i + 1].text == "mod":
                    self.take("(")
                    self.take("mod")
                    m = self.additive()
                    self.take(")")
                    return Congruent(left, right, m)
                return Cmp(op, left, right)
        self.error("expected a condition")


def parse_expr(text: str, line: int = 1, col: int = 1, source: str | None = None):
    p = ExprParser(tokenize(text, line, col, source), source)
    node = p.expr()
    p.finish()
    return node


def parse_conditions(text: str, line: int = 1, col: int = 1, source: str | None = None) -> tuple:
    p = ExprParser(tokenize(text, line, col, source), source)
    out = []
    while p.tok.kind != "eof":
        out.append(p.condition())
        if not p.accept(";") and p.tok.kind != "eof":
            p.error("expected ';' between conditions")
    return tuple(out)


def parse_names(text: str, line: int = 1, col: int = 1, source: str | None = None) -> tuple:
    p = ExprParser(tokenize(text, line, col, source), source)
    names = []
    while p.tok.kind != "eof":
        names.append(p.ident())
        if not p.accept(","):
            break
    p.finish()
    return tuple(names)


def split_sections(text: str, source: str | None = None) -> list:
    """Return ``[(key, value, line, col)]`` for each section of a claim file."""
    sections = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if line[0] in " \t":
            if not sections:
                raise ClaimSyntaxError("continuation line before any section", lineno, 1, source)
            key, value, l0, c0 = sections[-1]
            # keep line structure so token positions stay accurate
            pad = "\n" * (lineno - l0 - value.count("\n"))
            sections[-1] = (key, value + pad + line, l0, c0)
            continue
        m = re.match(r"([A-Za-z_]+)\s*(:|\s)\s*", line)
        if not m:
            raise ClaimSyntaxError("expected 'key: value'", lineno, 1, source)
        sections.append((m.group(1), line[m.end():], lineno, m.end() + 1))
    return sections
