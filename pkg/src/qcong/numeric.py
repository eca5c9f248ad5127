"""Floating-point evaluation of claim expressions at a numeric q.

Used as an oracle that shares nothing with the exact series code except
the parsed claim: products and sums are multiplied out in mpmath.
"""
from __future__ import annotations

import mpmath

from .claims.ast import (
    BinOp,
    Bracket,
    Cond,
    Fact,
    Inf,
    Neg,
    Num,
    Poch,
    SumNode,
    Sym,
    eval_condition,
    eval_int,
    eval_scalar,
)
from .errors import NonTruncatable, ValidationError


def _mp(x):
    x = mpmath.mpf(x.numerator) / x.denominator if hasattr(x, "denominator") else mpmath.mpf(x)
    return x


def numeric_eval(node, env: dict, values: dict, max_terms: int = 100000):
    """Evaluate ``node`` with integer symbols from ``env`` and numbers in ``values``.

    ``values`` must contain ``q`` and every monomial symbol.  The working
    precision is whatever ``mpmath.mp.dps`` is set to.
    """
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps - 5)

    def ev(n, env):
        if isinstance(n, Num):
            return _mp(n.value)
        if isinstance(n, Sym):
            if n.name in values:
                return values[n.name]
            if n.name in env:
                return mpmath.mpf(env[n.name])
            raise ValidationError(f"no value for {n.name}")
        if isinstance(n, Neg):
            return -ev(n.arg, env)
        if isinstance(n, Cond):
            return ev(n.then if eval_condition(n.test, env) else n.other, env)
        if isinstance(n, BinOp):
            x = ev(n.left, env)
            if n.op == "^":
                e = eval_scalar(n.right, env)
                return x ** int(e) if e.denominator == 1 else x ** _mp(e)
            y = ev(n.right, env)
            return {"+": x + y, "-": x - y, "*": x * y}.get(n.op) if n.op != "/" else x / y
        if isinstance(n, Fact):
            return mpmath.factorial(eval_int(n.arg, env))
        if isinstance(n, Bracket):
            m = eval_int(n.arg, env)
            base = values["q"] if n.base is None else ev(n.base, env)
            return (1 - base ** m) / (1 - base)
        if isinstance(n, Poch):
            if n.step is None:
                return mpmath.rf(ev(n.bases[0], env), eval_int(n.length, env))
            step = ev(n.step, env)
            out = mpmath.mpf(1)
            for b in n.bases:
                x = ev(b, env)
                if isinstance(n.length, Inf):
                    j = 0
                    while True:
                        f = x * step ** j
                        out *= 1 - f
                        if abs(f) < eps and j > 2:
                            break
                        j += 1
                        if j > max_terms:
                            raise NonTruncatable("infinite product does not settle")
                else:
                    for j in range(eval_int(n.length, env)):
                        out *= 1 - x * step ** j
            return out
        if isinstance(n, SumNode):
            lo = eval_int(n.lo, env)
            total = mpmath.mpf(0)
            if not isinstance(n.hi, Inf):
                for k in range(lo, eval_int(n.hi, env) + 1):
                    total += ev(n.body, {**env, n.var: k})
                return total
            small = 0
            k = lo
            while small < 5:
                t = ev(n.body, {**env, n.var: k})
                total += t
                small = small + 1 if abs(t) < eps * (1 + abs(total)) else 0
                k += 1
                if k - lo > max_terms:
                    raise NonTruncatable("infinite sum does not settle")
            return total
        raise ValidationError(f"cannot evaluate {type(n).__name__} numerically")

    return ev(node, env)
