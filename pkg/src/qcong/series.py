"""Truncated Laurent series in q with exact rational coefficients.

A :class:`TSeries` stands for ``sum(coeffs[i] * q^(val + i)) + O(q^prec)``.
Precision is tracked through every operation, so a result that lost
precision to cancellation or to negative powers of q says so instead of
returning wrong coefficients.

Claim expressions with infinite products or infinite sums are evaluated by
:func:`series_eval`.  All monomial symbols must be specialized to ``r * q^m``
with ``r`` rational before evaluation.
"""
from __future__ import annotations

from fractions import Fraction

from . import kernels
from .claims.ast import BinOp, Cond, Inf, Neg, Poch, SumNode, eval_condition, eval_int, eval_scalar
from .errors import (
    DenominatorIdenticallyZero,
    NonTruncatable,
    PoleBeforeTruncation,
    ValidationError,
)
from .monomial import Monomial
from .qfraction import Term

EXACT = 1 << 60  # precision of a finite (exact) expansion


class TSeries:
    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val: int, coeffs, prec: int):
        coeffs = list(coeffs)
        # drop leading zeros, and anything at or beyond the precision
        keep = max(0, prec - val)
        del coeffs[keep:]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        if i == len(coeffs):
            self.val, self.coeffs = prec, []
        else:
            self.val, self.coeffs = val + i, coeffs[i:]
        kernels.trim(self.coeffs)
        self.prec = prec

    # constructors --------------------------------------------------------
    @classmethod
    def constant(cls, c, prec: int = EXACT):
        return cls(0, [Fraction(c)], prec)

    @classmethod
    def monomial(cls, c, e: int, prec: int = EXACT):
        return cls(e, [Fraction(c)], prec)

    @classmethod
    def from_term(cls, t: Term, rel: int) -> "TSeries":
        """Expand a factored q-only term to relative precision ``rel``."""
        if t.is_zero:
            return cls(0, [], EXACT)
        e = t.mono[0]
        if t.mono[1] or t.mono[2]:
            raise ValidationError("series expansion needs every symbol specialized to a q-monomial")
        acc = [Fraction(1)]
        degree = 0
        for b, m in sorted(t.num.items()):
            degree += b.exps[0] * m
            _check_q_only(b.exps)
            for _ in range(m):
                acc = kernels.mul_binomial(acc, b.exps[0], b.c)[:rel]
        for b, m in sorted(t.den.items()):
            _check_q_only(b.exps)
            for _ in range(m):
                acc = kernels.geom_div(acc, b.exps[0], b.c, rel)
        exact = not t.den and degree < rel
        return cls(e, [t.coef * c for c in acc], EXACT if exact else e + rel)

    # queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, n: int) -> Fraction:
        if n >= self.prec:
            raise PoleBeforeTruncation(f"coefficient of q^{n} not known (precision q^{self.prec})")
        i = n - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def coefficients(self, lo: int, hi: int) -> list:
        """Coefficients of ``q^lo .. q^hi`` inclusive."""
        return [self.coeff(n) for n in range(lo, hi + 1)]

    def __repr__(self):
        return f"TSeries(val={self.val}, coeffs={self.coeffs!r}, prec={self.prec})"

    # arithmetic ----------------------------------------------------------
    def __neg__(self):
        return TSeries(self.val, [-c for c in self.coeffs], self.prec)

    def __add__(self, other: "TSeries") -> "TSeries":
        prec = min(self.prec, other.prec)
        if self.is_zero():
            return TSeries(other.val, other.coeffs, prec)
        if other.is_zero():
            return TSeries(self.val, self.coeffs, prec)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        out = [Fraction(0)] * (min(hi, prec) - lo if prec < EXACT else hi - lo)
        for s in (self, other):
            src = s.coeffs[: max(0, len(out) - (s.val - lo))]
            kernels.axpy(out, src, s.val - lo, 1)
        return TSeries(lo, out, prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TSeries") -> "TSeries":
        if self.is_zero() or other.is_zero():
            prec = min(self.prec + other.val, other.prec + self.val)
            return TSeries(0, [], min(prec, EXACT))
        prec = min(self.prec + other.val, other.prec + self.val, EXACT)
        val = self.val + other.val
        n = prec - val
        prod = kernels.poly_mul(self.coeffs[:n], other.coeffs[:n])
        return TSeries(val, prod, prec)

    def inverse(self) -> "TSeries":
        if self.is_zero():
            raise PoleBeforeTruncation(f"division by a series that vanishes to q^{self.prec}")
        rel = self.prec - self.val
        if rel >= EXACT // 2:
            if len(self.coeffs) == 1:
                return TSeries(-self.val, [1 / self.coeffs[0]], EXACT)
            raise PoleBeforeTruncation("inverse of an exact polynomial needs a precision")
        c0 = self.coeffs[0]
        a = [c / c0 for c in self.coeffs[:rel]]
        a += [Fraction(0)] * (rel - len(a))
        inv = [Fraction(0)] * rel
        inv[0] = Fraction(1)
        for i in range(1, rel):
            s = Fraction(0)
            for j in range(1, min(i, len(a) - 1) + 1):
                if a[j]:
                    s -= a[j] * inv[i - j]
            inv[i] = s
        return TSeries(-self.val, [c / c0 for c in inv], rel - self.val)

    def with_prec(self, rel: int) -> "TSeries":
        """Cap an exact series to relative precision ``rel``."""
        if self.prec < EXACT:
            return self
        return TSeries(self.val, self.coeffs, (self.val if self.coeffs else 0) + rel)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, p: int):
        if p < 0:
            return self.inverse() ** (-p)
        out = TSeries.constant(1)
        for _ in range(p):
            out = out * self
        return out


def _check_q_only(exps):
    if exps[1] or exps[2]:
        raise ValidationError("series expansion needs every symbol specialized to a q-monomial")


# infinite products ---------------------------------------------------------


def poch_inf(base: Monomial, step: int, rel: int) -> TSeries:
    """``(base; q^step)_inf`` to relative precision ``rel``.

    Factors ``1 - c q^m`` with ``m <= 0`` are taken exactly; they are finite
    in number.  A vanishing constant factor makes the product exactly zero.
    """
    if base.a or base.e:
        raise ValidationError(f"infinite product base {base} is not a q-monomial")
    if step <= 0:
        raise NonTruncatable(f"infinite product with step q^{step}")
    t = Term()
    j = 0
    while base.q + step * j <= 0:
        t.mul_factor(base.coef, (base.q + step * j, 0, 0))
        j += 1
    if t.is_zero:
        return TSeries(0, [], EXACT)
    head = TSeries.from_term(t, rel)
    tail = [Fraction(1)]
    m = base.q + step * j
    while m < rel:
        tail = kernels.mul_binomial(tail, m, base.coef)[:rel]
        m += step
    return head * TSeries(0, tail, rel)


def product_truncate(factors, N: int) -> list:
    """Integer coefficients of ``prod (q^a; q^b)_inf^{+-1}`` up to ``q^N``.

    ``factors`` is a sequence of ``(a, b, position)`` with position
    ``"num"`` or ``"den"``.
    """
    n = N + 1
    acc = [1] + [0] * N
    for a, b, pos in factors:
        if a <= 0 or b <= 0:
            raise NonTruncatable(f"(q^{a}; q^{b})_inf has a factor without a positive q-power")
        m = a
        while m <= N:
            if pos == "num":
                acc = kernels.mul_binomial(acc, m, 1)[:n]
                acc += [0] * (n - len(acc))
            elif pos == "den":
                acc = kernels.geom_div(acc, m, 1, n)
            else:
                raise ValueError(f"unknown position {pos!r}")
            m += b
    return acc


# claim expressions -------------------------------------------------------------


def _contains_infinite(node) -> bool:
    from .claims.ast import _fields

    if isinstance(node, Inf):
        return True
    if isinstance(node, SumNode):
        return True
    if node is None or not hasattr(node, "__dataclass_fields__"):
        return False
    for v in _fields(node):
        items = v if isinstance(v, tuple) else (v,)
        for x in items:
            if _contains_infinite(x):
                return True
    return False


def _leaf(node, ctx, rel: int) -> TSeries:
    from .qseries import QProd, qeval

    v = qeval(node, ctx)
    if isinstance(v, QProd):
        if v.sums:
            raise ValidationError("unexpected inner sum")
        return TSeries.from_term(v.term, rel)
    if isinstance(v, Monomial):
        _check_q_only(v.exps)
        return TSeries.monomial(v.coef, v.q)
    return TSeries.constant(v)


def series_eval(node, ctx, rel: int, patience: int = 3, max_terms: int | None = None) -> TSeries:
    """Expand a claim expression; leaves carry relative precision ``rel``."""
    from .qseries import _as_mono, qeval, _step_exponent

    if not _contains_infinite(node):
        return _leaf(node, ctx, rel)
    if isinstance(node, Neg):
        return -series_eval(node.arg, ctx, rel, patience, max_terms)
    if isinstance(node, Cond):
        branch = node.then if eval_condition(node.test, ctx.env) else node.other
        return series_eval(branch, ctx, rel, patience, max_terms)
    if isinstance(node, BinOp):
        x = series_eval(node.left, ctx, rel, patience, max_terms)
        if node.op == "^":
            p = eval_scalar(node.right, ctx.env)
            if p.denominator != 1:
                raise ValidationError(f"non-integral exponent {p}")
            return x ** int(p)
        y = series_eval(node.right, ctx, rel, patience, max_terms)
        if node.op == "*":
            return x * y
        if node.op == "/":
            return x * y.with_prec(rel).inverse()
        return x + y if node.op == "+" else x - y
    if isinstance(node, Poch):
        step = _step_exponent(node.step, ctx)
        out = TSeries.constant(1)
        for b in node.bases:
            base = _as_mono(qeval(b, ctx))
            if isinstance(node.length, Inf):
                out = out * poch_inf(base, step, rel)
            else:
                out = out * _leaf(Poch((b,), node.step, node.length), ctx, rel)
        return out
    if isinstance(node, SumNode):
        return _series_sum(node, ctx, rel, patience, max_terms)
    raise ValidationError(f"cannot expand {type(node).__name__} as a series")


def _series_sum(node: SumNode, ctx, rel: int, patience: int, max_terms) -> TSeries:
    from .qseries import _as_prod, qeval

    lo = eval_int(node.lo, ctx.env, "lower bound")
    infinite = isinstance(node.hi, Inf)
    hi = None if infinite else eval_int(node.hi, ctx.env, "upper bound")
    limit = max_terms if max_terms is not None else 4 * rel + 64
    terms = []
    base_val = None
    quiet = 0
    prev = None
    k = lo
    while True:
        if hi is not None and k > hi:
            break
        if infinite and k - lo >= limit:
            raise NonTruncatable(f"sum over {node.var} did not settle after {limit} terms")
        cctx = ctx.bind(node.var, k)
        if _contains_infinite(node.body):
            s = series_eval(node.body, cctx, rel, patience, max_terms)
            terms.append(s)
            v = s.val
        else:
            try:
                t = _as_prod(qeval(node.body, cctx)).term
            except DenominatorIdenticallyZero as ex:
                raise PoleBeforeTruncation(f"summand {node.var}={k}: {ex}") from None
            t.cancel()
            v = None if t.is_zero else t.mono[0]
            terms.append(t)
        if v is not None and (base_val is None or v < base_val):
            base_val = v
        if infinite:
            # the tail is negligible once several consecutive terms start
            # beyond the working precision with increasing q-degree
            if v is None:
                quiet += 1
            elif base_val is not None and v >= base_val + rel and (prev is None or v > prev):
                quiet += 1
            else:
                quiet = 0
            if v is not None:
                prev = v
            if quiet >= patience:
                break
        k += 1
    if base_val is None:
        return TSeries(0, [], EXACT)
    target = base_val + rel
    out = TSeries(0, [], EXACT)
    for t in terms:
        if isinstance(t, TSeries):
            out = out + t
            continue
        if t.is_zero or t.mono[0] >= target:
            continue
        out = out + TSeries.from_term(t, target - t.mono[0])
    if infinite:
        out = TSeries(out.val, out.coeffs, min(out.prec, target))
    return out


def expand(node, ctx, N: int, patience: int = 3) -> TSeries:
    """Expand ``node`` until its coefficients through ``q^N`` are known."""
    rel = max(N + 1, 8)
    for _ in range(8):
        s = series_eval(node, ctx, rel, patience)
        if s.prec > N:
            return s
        rel = 2 * rel + (N + 1 - s.prec)
    raise PoleBeforeTruncation(f"could not reach precision q^{N}")


__all__ = ["TSeries", "EXACT", "poch_inf", "product_truncate", "series_eval", "expand"]
