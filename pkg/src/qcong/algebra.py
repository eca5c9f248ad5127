"""Exact coefficient arithmetic in the parameters ``a`` and ``e``.

``BigRat`` is :class:`fractions.Fraction`.  :class:`ParamPoly` is a sparse
bivariate polynomial in ``a`` and ``e`` with rational coefficients and
:class:`ParamRat` a reduced quotient of two of them.  Together they form
the coefficient field Q(a, e) for polynomials in ``q``.

Terms are ordered graded-lexicographically with ``a > e``: higher total
degree first, ties broken by the ``a`` degree.  Bivariate gcds use a
primitive polynomial remainder sequence on the recursive representation
(polynomials in ``a`` whose coefficients are polynomials in ``e``).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import NotDivisible, ZeroDenominator

BigRat = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _order_key(exp):
    i, j = exp
    return (i + j, i)


# --- univariate polynomials over Q in e (lists, lowest degree first) -------

def _u_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _u_add(p, r):
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] += c
    return _u_trim(out)


def _u_sub(p, r):
    return _u_add(p, [-c for c in r])


def _u_mul(p, r):
    if not p or not r:
        return []
    out = [_ZERO] * (len(p) + len(r) - 1)
    for i, c in enumerate(p):
        if c:
            for j, d in enumerate(r):
                out[i + j] += c * d
    return _u_trim(out)


def _u_divmod(p, r):
    if not r:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(p)
    dr = len(r) - 1
    inv = 1 / Fraction(r[-1])
    quot = [_ZERO] * max(0, len(rem) - dr)
    for i in range(len(rem) - 1, dr - 1, -1):
        c = rem[i] * inv
        if c:
            quot[i - dr] = c
            for j in range(dr + 1):
                rem[i - dr + j] -= c * r[j]
    return _u_trim(quot), _u_trim(rem[:dr])


def _u_monic(p):
    if not p:
        return p
    inv = 1 / Fraction(p[-1])
    return [c * inv for c in p]


def _u_gcd(p, r):
    p, r = _u_trim(list(p)), _u_trim(list(r))
    while r:
        p, r = r, _u_divmod(p, r)[1]
    return _u_monic(p)


# --- recursive representation ---------------------------------------------

def _to_rec(terms):
    """``{(i, j): c}`` -> list indexed by a-degree of e-polynomials."""
    if not terms:
        return []
    da = max(i for i, _ in terms)
    rec = [[] for _ in range(da + 1)]
    for (i, j), c in terms.items():
        row = rec[i]
        if len(row) <= j:
            row.extend([_ZERO] * (j + 1 - len(row)))
        row[j] += c
    return [_u_trim(r) for r in rec]


def _from_rec(rec):
    out = {}
    for i, row in enumerate(rec):
        for j, c in enumerate(row):
            if c:
                out[(i, j)] = Fraction(c)
    return out


def _rec_trim(rec):
    while rec and not rec[-1]:
        rec.pop()
    return rec


def _rec_content(rec):
    g = []
    for row in rec:
        if row:
            g = _u_gcd(g, row) if g else _u_monic(row)
            if len(g) == 1:
                break
    return g


def _rec_divide_content(rec, c):
    out = []
    for row in rec:
        q, r = _u_divmod(row, c)
        if r:
            raise NotDivisible("content does not divide coefficient")
        out.append(q)
    return out


def _rec_prem(f, g):
    """Pseudo-remainder of f by g as polynomials in a over Q[e]."""
    r = [list(row) for row in f]
    dg = len(g) - 1
    lc = g[-1]
    while len(r) - 1 >= dg and r:
        dr = len(r) - 1
        lead = r[-1]
        r = [_u_mul(row, lc) for row in r]
        shift = dr - dg
        for j, grow in enumerate(g):
            r[shift + j] = _u_sub(r[shift + j], _u_mul(lead, grow))
        _rec_trim(r)
    return r


def _rec_gcd(f, g):
    cf, cg = _rec_content(f), _rec_content(g)
    c = _u_gcd(cf, cg)
    pf = _rec_divide_content(f, cf)
    pg = _rec_divide_content(g, cg)
    if len(pf) < len(pg):
        pf, pg = pg, pf
    while True:
        if not pg:
            g = pf
            break
        if len(pg) == 1:
            # nonzero and constant in a: the primitive gcd is 1
            g = [[_ONE]]
            break
        r = _rec_prem(pf, pg)
        if not r:
            g = pg
            break
        pf, pg = pg, _rec_divide_content(r, _rec_content(r))
    return [_u_mul(row, c) for row in g]


class ParamPoly:
    """Immutable sparse polynomial in ``a`` and ``e`` over Q."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("ParamPoly exponents must be nonnegative")
                c = Fraction(c)
                if c:
                    clean[(int(i), int(j))] = clean.get((int(i), int(j)), _ZERO) + c
            clean = {k: v for k, v in clean.items() if v}
        self._terms = dict(sorted(clean.items(), key=lambda kv: _order_key(kv[0]), reverse=True))
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def a(cls):
        return cls({(1, 0): 1})

    @classmethod
    def e(cls):
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, c, i, j):
        return cls({(i, j): c})

    # structure
    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_const(self):
        return not self._terms or (len(self._terms) == 1 and (0, 0) in self._terms)

    def const_value(self):
        return self._terms.get((0, 0), _ZERO)

    def leading(self):
        for exp, c in self._terms.items():
            return exp, c
        raise ValueError("zero polynomial has no leading term")

    def degree(self):
        return max((i + j for i, j in self._terms), default=-1)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return list(self._terms.items()) == list(other._terms.items())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # arithmetic
    def __add__(self, other):
        other = _as_ppoly(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, _ZERO) + v
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = _as_ppoly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ppoly(other)
        if other is None:
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, _ZERO) + c1 * c2
        return ParamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = ParamPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        c = Fraction(c)
        return ParamPoly({k: v * c for k, v in self._terms.items()})

    def eval(self, a0, e0):
        total = 0
        for (i, j), c in self._terms.items():
            total += c * a0**i * e0**j
        return total

    def content(self):
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self._terms:
            return _ZERO
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading()[1] < 0:
            c = -c
        return self.scale(1 / c)

    def __repr__(self):
        return f"ParamPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self._terms.items():
            mono = "*".join(
                s for s in (
                    ("a" if i == 1 else f"a^{i}") if i else "",
                    ("e" if j == 1 else f"e^{j}") if j else "",
                ) if s
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_ppoly(x):
    if isinstance(x, ParamPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return ParamPoly.const(x)
    return None


def ppoly_add(x: ParamPoly, y: ParamPoly) -> ParamPoly:
    return x + y


def ppoly_mul(x: ParamPoly, y: ParamPoly) -> ParamPoly:
    return x * y


def ppoly_divexact(x: ParamPoly, y: ParamPoly) -> ParamPoly:
    """Exact quotient ``x / y``; raises :class:`NotDivisible` otherwise."""
    if y.is_zero():
        raise ZeroDenominator("division by the zero polynomial")
    (yi, yj), yc = y.leading()
    rem = dict(x._terms)
    quot = {}
    ylist = list(y._terms.items())
    while rem:
        (ri, rj), rc = max(rem.items(), key=lambda kv: _order_key(kv[0]))
        if ri < yi or rj < yj:
            raise NotDivisible(f"{y} does not divide {x}")
        qi, qj, qc = ri - yi, rj - yj, rc / yc
        quot[(qi, qj)] = quot.get((qi, qj), _ZERO) + qc
        for (ti, tj), tc in ylist:
            k = (ti + qi, tj + qj)
            v = rem.get(k, _ZERO) - qc * tc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return ParamPoly(quot)


def ppoly_gcd(x: ParamPoly, y: ParamPoly) -> ParamPoly:
    """Greatest common divisor, integer-primitive with positive leading coefficient."""
    if x.is_zero() and y.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if x.is_zero():
        return y.primitive()
    if y.is_zero():
        return x.primitive()
    if x.is_const() or y.is_const():
        return ParamPoly.const(1)
    g = _rec_gcd(_to_rec(x._terms), _to_rec(y._terms))
    return ParamPoly(_from_rec(g)).primitive()


class ParamRat:
    """Reduced rational function in ``a`` and ``e``.

    ``den`` is integer-primitive with a positive leading coefficient and
    coprime to ``num``; zero is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _normalized=False):
        num = _as_ppoly(num) if not isinstance(num, ParamPoly) else num
        if den is None:
            den = ParamPoly.const(1)
        else:
            den = _as_ppoly(den) if not isinstance(den, ParamPoly) else den
        if num is None or den is None:
            raise TypeError("ParamRat needs ParamPoly, int or Fraction parts")
        if not _normalized:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls(ParamPoly.const(c), ParamPoly.const(1), _normalized=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den.is_const() and self.num == 1

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = ParamRat(other)
        if not isinstance(other, ParamRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_prat(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return ParamRat(self.num + other.num, self.den)
        return ParamRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamRat(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = _as_prat(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_prat(other)
        if other is None:
            return NotImplemented
        if self.den.is_const() and other.den.is_const():
            return ParamRat(self.num * other.num, self.den * other.den)
        return ParamRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDenominator("inverse of zero")
        return ParamRat(self.den, self.num)

    def __truediv__(self, other):
        other = _as_prat(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_prat(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return ParamRat(self.num ** n, self.den ** n)

    def eval(self, a0, e0):
        d = self.den.eval(a0, e0)
        if d == 0:
            raise ZeroDenominator("pole at evaluation point")
        return self.num.eval(a0, e0) / d

    def __repr__(self):
        return f"ParamRat({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _as_prat(x):
    if isinstance(x, ParamRat):
        return x
    if isinstance(x, (int, Fraction)):
        return ParamRat.const(x)
    if isinstance(x, ParamPoly):
        return ParamRat(x)
    return None


def _normalize_pair(num, den):
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    if num.is_zero():
        return ParamPoly(), ParamPoly.const(1)
    if not den.is_const():
        g = ppoly_gcd(num, den)
        if not g.is_const():
            num = ppoly_divexact(num, g)
            den = ppoly_divexact(den, g)
    # den: integer-primitive, positive leading coefficient
    c = den.content()
    if den.leading()[1] < 0:
        c = -c
    return num.scale(1 / c), den.scale(1 / c)


def prat_normalize(num: ParamPoly, den: ParamPoly) -> ParamRat:
    return ParamRat(num, den)
