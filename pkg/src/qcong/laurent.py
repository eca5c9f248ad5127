"""Integer Laurent polynomials in q, a, e.

An :class:`LPoly` groups its terms by the ``(a, e)`` exponent pair; each group
is a dense coefficient list in ``q`` with its own starting exponent.  Almost
all work in the summation engine is "multiply a dense q-list by a binomial"
or "divide a dense q-list by a cyclotomic polynomial", which the compiled
kernels handle.
"""
from __future__ import annotations

from math import gcd

import mpmath

from . import kernels

Exps = tuple  # (q, a, e)


def _strip(off: int, cs: list):
    """Drop zero coefficients at both ends; ``None`` if nothing is left."""
    hi = len(cs)
    while hi and not cs[hi - 1]:
        hi -= 1
    lo = 0
    while lo < hi and not cs[lo]:
        lo += 1
    if lo == hi:
        return None
    if lo or hi != len(cs):
        cs = cs[lo:hi]
    return off + lo, cs


def _acc(blocks: dict, key, off: int, cs: list, coef=1):
    """blocks[key] += coef * q^off * cs (in place)."""
    if not coef or not cs:
        return
    cur = blocks.get(key)
    if cur is None:
        if coef == 1:
            blocks[key] = (off, list(cs))
        else:
            blocks[key] = (off, [coef * x for x in cs])
        return
    o1, l1 = cur
    lo = min(o1, off)
    hi = max(o1 + len(l1), off + len(cs))
    if o1 == lo and len(l1) == hi - lo:
        dst = l1
    else:
        dst = [0] * (o1 - lo) + l1 + [0] * (hi - o1 - len(l1))
    kernels.axpy(dst, cs, off - lo, coef)
    res = _strip(lo, dst)
    if res is None:
        del blocks[key]
    else:
        blocks[key] = res


class LPoly:
    __slots__ = ("blocks",)

    def __init__(self, blocks=None):
        self.blocks = blocks if blocks is not None else {}

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, c: int):
        return cls({(0, 0): (0, [c])} if c else {})

    @classmethod
    def monomial(cls, c: int, exps: Exps):
        if not c:
            return cls({})
        return cls({(exps[1], exps[2]): (exps[0], [c])})

    @classmethod
    def from_q(cls, coeffs, off: int = 0):
        res = _strip(off, list(coeffs))
        return cls({} if res is None else {(0, 0): res})

    @classmethod
    def from_terms(cls, terms: dict):
        """Build from a sparse ``{(q, a, e): coef}`` mapping."""
        groups: dict = {}
        for (i, j, k), c in terms.items():
            if c:
                groups.setdefault((j, k), {})[i] = c
        blocks = {}
        for key, g in groups.items():
            lo, hi = min(g), max(g)
            cs = [0] * (hi - lo + 1)
            for i, c in g.items():
                cs[i - lo] = c
            blocks[key] = (lo, cs)
        return cls(blocks)

    def terms(self) -> dict:
        out = {}
        for (j, k), (off, cs) in self.blocks.items():
            for i, c in enumerate(cs):
                if c:
                    out[(off + i, j, k)] = c
        return out

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.blocks

    def is_q_only(self) -> bool:
        return all(key == (0, 0) for key in self.blocks)

    def nterms(self) -> int:
        return sum(len(cs) for _, cs in self.blocks.values())

    def q_range(self):
        lo = min(off for off, _ in self.blocks.values())
        hi = max(off + len(cs) - 1 for off, cs in self.blocks.values())
        return lo, hi

    def content(self) -> int:
        g = 0
        for _, cs in self.blocks.values():
            for c in cs:
                if c:
                    g = gcd(g, c)
                    if g == 1:
                        return 1
        return g

    def max_abs(self) -> int:
        return max((abs(c) for _, cs in self.blocks.values() for c in cs), default=0)

    def __eq__(self, other):
        if not isinstance(other, LPoly):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(frozenset((k, v[0], tuple(v[1])) for k, v in self.blocks.items()))

    def __repr__(self):
        return f"LPoly({len(self.blocks)} blocks, {self.nterms()} coeffs)"

    # ring operations ------------------------------------------------------
    def copy(self):
        return LPoly({k: (o, list(cs)) for k, (o, cs) in self.blocks.items()})

    def __neg__(self):
        return LPoly({k: (o, [-c for c in cs]) for k, (o, cs) in self.blocks.items()})

    def scale(self, c: int):
        if not c:
            return LPoly()
        if c == 1:
            return self
        return LPoly({k: (o, [c * x for x in cs]) for k, (o, cs) in self.blocks.items()})

    def exact_div_int(self, c: int):
        return LPoly({k: (o, [x // c for x in cs]) for k, (o, cs) in self.blocks.items()})

    def add_scaled(self, other: "LPoly", coef: int = 1) -> "LPoly":
        out = dict(self.blocks)
        for key, (off, cs) in other.blocks.items():
            cur = out.get(key)
            if cur is not None:
                # _acc may mutate the list in place; detach it from self first
                out[key] = (cur[0], list(cur[1]))
            _acc(out, key, off, cs, coef)
        return LPoly(out)

    def __add__(self, other):
        return self.add_scaled(other, 1)

    def __sub__(self, other):
        return self.add_scaled(other, -1)

    def shift(self, exps: Exps, c: int = 1):
        """c * x^exps * self."""
        dq, da, de = exps
        return LPoly(
            {(j + da, k + de): (o + dq, cs if c == 1 else [c * x for x in cs])
             for (j, k), (o, cs) in self.blocks.items()}
        )

    def mul_binomial(self, c: int, exps: Exps) -> "LPoly":
        """(1 - c * x^exps) * self."""
        dq, da, de = exps
        if da == 0 and de == 0 and dq > 0:
            return LPoly({key: (o, kernels.mul_binomial(cs, dq, c)) for key, (o, cs) in self.blocks.items()})
        out = {k: (o, list(cs)) for k, (o, cs) in self.blocks.items()}
        for (j, k), (o, cs) in self.blocks.items():
            _acc(out, (j + da, k + de), o + dq, cs, -c)
        return LPoly(out)

    def mul_q(self, coeffs: list, off: int = 0) -> "LPoly":
        """Multiply by the q-only polynomial ``q^off * sum coeffs[i] q^i``."""
        return LPoly({key: (o + off, kernels.poly_mul(cs, coeffs)) for key, (o, cs) in self.blocks.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        if len(other.blocks) < len(self.blocks):
            self, other = other, self
        out: dict = {}
        for (j1, k1), (o1, c1) in self.blocks.items():
            for (j2, k2), (o2, c2) in other.blocks.items():
                _acc(out, (j1 + j2, k1 + k2), o1 + o2, kernels.poly_mul(c1, c2))
        return LPoly(out)

    __rmul__ = __mul__

    # division -------------------------------------------------------------
    def divmod_q(self, coeffs: list):
        """Blockwise division by a q-only polynomial with leading coeff +-1.

        Returns ``(quotient, remainder)`` as LPolys; the q^off factor of each
        block is a unit and stays with the quotient.
        """
        quot, rem = {}, {}
        for key, (o, cs) in self.blocks.items():
            qt, r = kernels.poly_divmod(cs, coeffs)
            if qt:
                res = _strip(o, qt)
                if res:
                    quot[key] = res
            if r:
                res = _strip(o, r)
                if res:
                    rem[key] = res
        return LPoly(quot), LPoly(rem)

    def exact_div_q(self, coeffs: list):
        """Quotient by a q-only polynomial, or ``None`` if it does not divide."""
        quot = {}
        for key, (o, cs) in self.blocks.items():
            qt, r = kernels.poly_divmod(cs, coeffs)
            if r:
                return None
            quot[key] = _strip(o, qt)
        return LPoly(quot)

    def exact_div_sparse(self, divisor: "LPoly", var: int):
        """Exact division by ``divisor`` viewed as a polynomial in variable
        ``var`` (1 = a, 2 = e), whose extreme coefficients are +-monomials.

        Returns the quotient or ``None`` when the division is not exact.
        """
        num = self.terms()
        if not num:
            return LPoly()
        den = divisor.terms()
        top = max(ex[var] for ex in den)
        bot = min(ex[var] for ex in den)
        lead = [(ex, c) for ex, c in den.items() if ex[var] == top]
        if len(lead) != 1 or abs(lead[0][1]) != 1:
            raise ValueError("divisor leading coefficient is not a unit monomial")
        lex, lc = lead[0]
        span = top - bot
        quot = {}
        while num:
            vmax = max(ex[var] for ex in num)
            vmin = min(ex[var] for ex in num)
            if vmax - vmin < span:
                return None
            row = [(ex, c) for ex, c in num.items() if ex[var] == vmax]
            for ex, c in row:
                mq = (ex[0] - lex[0], ex[1] - lex[1], ex[2] - lex[2])
                f = c * lc  # lc is +-1, so c / lc == c * lc
                quot[mq] = quot.get(mq, 0) + f
                for dex, dc in den.items():
                    t = (mq[0] + dex[0], mq[1] + dex[1], mq[2] + dex[2])
                    v = num.get(t, 0) - f * dc
                    if v:
                        num[t] = v
                    else:
                        num.pop(t, None)
        return LPoly.from_terms(quot)

    # evaluation -----------------------------------------------------------
    def deriv_q(self) -> "LPoly":
        out = {}
        for key, (o, cs) in self.blocks.items():
            res = _strip(o - 1, [(o + i) * c for i, c in enumerate(cs)])
            if res:
                out[key] = res
        return LPoly(out)

    def eval(self, q0, a0=1, e0=1):
        """Evaluate with mpmath at the current working precision."""
        acc = 0
        for (j, k), (o, cs) in self.blocks.items():
            s = 0
            for c in reversed(cs):
                s = s * q0 + c
            acc += s * mpmath.power(q0, o) * mpmath.power(a0, j) * mpmath.power(e0, k)
        return acc
