"""q-shifted factorials, q-integers and exact evaluation of claim expressions.

Claim expressions are evaluated into one of three shapes:

* a rational number (``Fraction``) for pure integer arithmetic,
* a :class:`~qcong.monomial.Monomial` such as ``-q^d`` or ``a*q``,
* a :class:`QProd`, i.e. a factored product of binomials possibly times
  already-summed inner sums.

Sums become :class:`~qcong.qfraction.QFraction` values via the Horner
summation in :mod:`qcong.qfraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .claims.ast import (
    BinOp,
    Bracket,
    Cond,
    Fact,
    GammaP,
    Inf,
    Neg,
    Num,
    Phi,
    Poch,
    ProdNode,
    SumNode,
    Sym,
    eval_condition,
    eval_int,
    eval_scalar,
)
from .errors import UnresolvedSymbol, UnsupportedFactor, ValidationError
from .laurent import LPoly
from .monomial import Monomial
from .polyq import RatQ
from .qfraction import QFraction, Term, sum_terms

Q = Monomial(1, 1, 0, 0)


@dataclass
class QProd:
    term: Term = field(default_factory=Term)
    sums: list = field(default_factory=list)

    def copy(self):
        t = Term(self.term.coef, self.term.mono, self.term.num.copy(), self.term.den.copy())
        return QProd(t, list(self.sums))


@dataclass
class Context:
    """Integer assignments plus the values of monomial symbols."""

    env: dict
    monos: dict  # name -> Monomial

    def bind(self, name, value):
        env = dict(self.env)
        env[name] = value
        return Context(env, self.monos)


def default_monos(names, assigned=None) -> dict:
    out = {"q": Q}
    for name in names:
        if name == "q":
            continue
        if assigned and name in assigned:
            out[name] = assigned[name]
        elif name == "a":
            out[name] = Monomial(1, 0, 1, 0)
        elif name == "e":
            out[name] = Monomial(1, 0, 0, 1)
        else:
            raise UnresolvedSymbol(name)
    return out


# building blocks ----------------------------------------------------------


def _as_prod(x) -> QProd:
    if isinstance(x, QProd):
        return x
    p = QProd()
    if isinstance(x, Monomial):
        p.term.mul_monomial(x.coef, x.exps)
    else:
        p.term.mul_monomial(Fraction(x), (0, 0, 0))
    return p


def _as_mono(x) -> Monomial:
    if isinstance(x, Monomial):
        return x
    return Monomial(Fraction(x))


def poch_term(base: Monomial, step: int, length: int) -> Term:
    """``(base; q^step)_length`` as a factored term."""
    if length < 0:
        raise ValidationError(f"negative Pochhammer length {length}")
    t = Term()
    for j in range(length):
        t.mul_factor(base.coef, (base.q + step * j, base.a, base.e))
    return t


def bracket_term(m: int, base: int = 1) -> Term:
    """``[m]_{q^base} = (1 - q^(base*m)) / (1 - q^base)``."""
    t = Term()
    t.mul_factor(1, (base * m, 0, 0))
    t.mul_factor(1, (base, 0, 0), inverse=True)
    return t


def poch_eval(base: Monomial, step: int, length: int) -> RatQ:
    """``(base; q^step)_length`` as a reduced rational function."""
    return poch_term(base, step, length).to_fraction().to_ratq()


def bracket_eval(c1: int, c0: int, d: int, k: int) -> RatQ:
    """The q-integer ``[c1*d*k + c0]`` as a reduced rational function."""
    return bracket_term(c1 * d * k + c0).to_fraction().to_ratq()


# evaluation ---------------------------------------------------------------


def _step_exponent(node, ctx: Context) -> int:
    s = qeval(node, ctx)
    s = _as_mono(s)
    if s.coef != 1 or not s.is_q_only() or s.q <= 0:
        raise ValidationError(f"Pochhammer step must be q^s with s > 0, got {s}")
    return s.q


def _check_mono(m: Monomial) -> Monomial:
    for x in m.exps:
        if not isinstance(x, int):
            raise ValidationError(f"non-integral exponent in {m}")
    return m


def qeval(node, ctx: Context):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Sym):
        if node.name in ctx.monos:
            return ctx.monos[node.name]
        if node.name in ctx.env:
            return Fraction(ctx.env[node.name])
        raise UnresolvedSymbol(node.name)
    if isinstance(node, Neg):
        v = qeval(node.arg, ctx)
        if isinstance(v, QProd):
            v = v.copy()
            v.term.coef = -v.term.coef
            return v
        return -v
    if isinstance(node, Cond):
        return qeval(node.then if eval_condition(node.test, ctx.env) else node.other, ctx)
    if isinstance(node, BinOp):
        return _binop(node, ctx)
    if isinstance(node, Bracket):
        m = eval_int(node.arg, ctx.env, "q-integer argument")
        base = 1 if node.base is None else _step_exponent(node.base, ctx)
        return QProd(bracket_term(m, base))
    if isinstance(node, Poch):
        if node.step is None:
            raise ValidationError("rational Pochhammer symbol inside a q-expression")
        if isinstance(node.length, Inf):
            raise ValidationError("infinite product in an exact (finite) expression")
        step = _step_exponent(node.step, ctx)
        length = eval_int(node.length, ctx.env, "Pochhammer length")
        out = QProd()
        for b in node.bases:
            base = _check_mono(_as_mono(qeval(b, ctx)))
            out.term.mul_term(poch_term(base, step, length))
        return out
    if isinstance(node, Fact):
        return eval_scalar(node, ctx.env)
    if isinstance(node, SumNode):
        return QProd(Term(), [eval_sum(node, ctx)])
    if isinstance(node, ProdNode):
        lo = eval_int(node.lo, ctx.env, "product bound")
        hi = eval_int(node.hi, ctx.env, "product bound")
        acc = QProd()
        for j in range(lo, hi + 1):
            acc = _mul(acc, qeval(node.body, ctx.bind(node.var, j)))
        return acc
    if isinstance(node, (GammaP, Phi)):
        raise ValidationError(f"{type(node).__name__} is not allowed in a q-expression")
    raise ValidationError(f"cannot evaluate {node!r}")


def _mul(x, y, inverse=False):
    if not isinstance(x, QProd) and not isinstance(y, QProd):
        if isinstance(x, Monomial) or isinstance(y, Monomial):
            xm, ym = _as_mono(x), _as_mono(y)
            return xm / ym if inverse else xm * ym
        return x / y if inverse else x * y
    out = _as_prod(x).copy()
    other = _as_prod(y)
    if inverse:
        if other.sums:
            raise UnsupportedFactor("division by a sum")
        out.term.mul_term(other.term, -1)
    else:
        out.term.mul_term(other.term)
        out.sums.extend(other.sums)
    return out


def _binop(node: BinOp, ctx: Context):
    x = qeval(node.left, ctx)
    if node.op == "^":
        p = eval_scalar(node.right, ctx.env)
        if p.denominator != 1:
            raise ValidationError(f"non-integral exponent {p}")
        p = int(p)
        if isinstance(x, QProd):
            if x.sums and p < 0:
                raise UnsupportedFactor("negative power of a sum")
            out = QProd()
            out.term.mul_term(x.term, p)
            out.sums = list(x.sums) * max(p, 0)
            return out
        if isinstance(x, Monomial):
            return x ** p
        if x == 0 and p < 0:
            raise ValidationError("zero raised to a negative power")
        return x ** p
    y = qeval(node.right, ctx)
    if node.op == "*":
        return _mul(x, y)
    if node.op == "/":
        if not isinstance(y, (QProd, Monomial)) and y == 0:
            raise ValidationError("division by zero")
        return _mul(x, y, inverse=True)
    # + or -
    if not isinstance(x, (QProd, Monomial)) and not isinstance(y, (QProd, Monomial)):
        return x + y if node.op == "+" else x - y
    if isinstance(x, QProd) or isinstance(y, QProd):
        raise UnsupportedFactor("only binomials of monomials can be added")
    left = _check_mono(_as_mono(x))
    right = _check_mono(_as_mono(y))
    if node.op == "+":
        right = -right
    if left.coef == 0:
        return -right
    if right.coef == 0:
        return left
    if left.exps == right.exps:
        return Monomial(left.coef - right.coef, *left.exps)
    ratio = right / left
    out = QProd()
    out.term.mul_monomial(left.coef, left.exps)
    out.term.mul_factor(ratio.coef, ratio.exps)
    return out


def to_fraction(value) -> QFraction:
    if isinstance(value, QProd):
        out = value.term.to_fraction()
        for s in value.sums:
            out = out * s
        return out
    if isinstance(value, Monomial):
        return QFraction(value.coef, LPoly.monomial(1, value.exps))
    return QFraction(Fraction(value), LPoly.constant(1))


def summand_terms(node: SumNode, ctx: Context, lo: int | None = None, hi: int | None = None) -> list:
    lo = eval_int(node.lo, ctx.env, "lower bound") if lo is None else lo
    hi = eval_int(node.hi, ctx.env, "upper bound") if hi is None else hi
    terms = []
    for k in range(lo, hi + 1):
        v = qeval(node.body, ctx.bind(node.var, k))
        if isinstance(v, QProd) and v.sums:
            raise UnsupportedFactor("summand containing an inner sum")
        terms.append(_as_prod(v).term.cancel())
    return terms


def eval_sum(node: SumNode, ctx: Context) -> QFraction:
    if isinstance(node.hi, Inf):
        raise ValidationError("infinite sum in an exact (finite) expression")
    return sum_terms(summand_terms(node, ctx))


def evaluate(node, ctx: Context) -> QFraction:
    """Exact value of a claim expression."""
    if isinstance(node, SumNode):
        return eval_sum(node, ctx)
    return to_fraction(qeval(node, ctx))


def summand_eval(body, ctx: Context, var: str, k: int) -> RatQ:
    """One summand at index ``k`` as a reduced rational function."""
    return to_fraction(qeval(body, ctx.bind(var, k))).to_ratq()


# structural view of a summand ----------------------------------------------


@dataclass(frozen=True)
class PochSpec:
    base: object
    step: object
    length: object


@dataclass
class SummandTemplate:
    bracket: object | None
    poch_num: list
    poch_den: list
    qpower: object | None
    others: list


def summand_template(body) -> SummandTemplate:
    """Classify the top-level factors of a summand."""
    factors: list = []

    def flatten(n, inverse):
        if isinstance(n, BinOp) and n.op in "*/":
            flatten(n.left, inverse)
            flatten(n.right, inverse if n.op == "*" else not inverse)
        else:
            factors.append((n, inverse))

    flatten(body, False)
    t = SummandTemplate(None, [], [], None, [])
    for n, inv in factors:
        power = 1
        core = n
        if isinstance(n, BinOp) and n.op == "^" and isinstance(n.right, Num):
            core, power = n.left, int(n.right.value)
        if isinstance(core, Bracket) and not inv and t.bracket is None:
            t.bracket = core
        elif isinstance(core, Poch) and core.step is not None:
            specs = [PochSpec(b, core.step, core.length) for b in core.bases] * power
            (t.poch_den if inv else t.poch_num).extend(specs)
        elif isinstance(core, BinOp) and core.op == "^" and core.left == Sym("q") and not inv:
            t.qpower = core.right
        else:
            t.others.append((n, inv))
    return t
