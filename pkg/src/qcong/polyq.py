"""Dense polynomials and reduced rational functions in ``q`` over Q(a, e).

This is the normalized, user-facing representation.  Heavy summation work
happens on :class:`qcong.laurent.LPoly` / :class:`qcong.qfraction.QFraction`
and is converted here at the boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from .algebra import ParamPoly, ParamRat
from .errors import DivideByZeroPoly, PoleAtPoint, ValidationError
from .monomial import Monomial
from .ntheory import cyclotomic_coeffs, divisors

_PR_ZERO = ParamRat.const(0)
_PR_ONE = ParamRat.const(1)


def _as_coef(c) -> ParamRat:
    if isinstance(c, ParamRat):
        return c
    if isinstance(c, (int, Fraction)):
        return ParamRat.const(c)
    if isinstance(c, ParamPoly):
        return ParamRat(c)
    raise TypeError(f"cannot use {type(c).__name__} as a QPoly coefficient")


class QPoly:
    """Dense polynomial in ``q``; ``coeffs[i]`` is the coefficient of ``q^i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_coef(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, coeffs):
        return cls(coeffs)

    @classmethod
    def monomial(cls, c, deg: int):
        return cls([0] * deg + [c])

    @classmethod
    def one(cls):
        return cls([1])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> ParamRat:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_rational(self) -> bool:
        return all(c.is_const() for c in self.coeffs)

    def int_coeffs(self) -> list:
        out = []
        for c in self.coeffs:
            if not c.is_const():
                raise ValueError("coefficients depend on parameters")
            out.append(c.num.const_value())
        return out

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        inv = self.lc().inverse()
        return QPoly([c * inv for c in self.coeffs])

    def derivative(self) -> "QPoly":
        return QPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return qp_add(self, _as_qpoly(other))

    __radd__ = __add__

    def __sub__(self, other):
        return qp_sub(self, _as_qpoly(other))

    def __rsub__(self, other):
        return qp_sub(_as_qpoly(other), self)

    def __neg__(self):
        return qp_neg(self)

    def __mul__(self, other):
        return qp_mul(self, _as_qpoly(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"QPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            neg = c.is_const() and c.num.const_value() < 0
            cs = str(-c if neg else c)
            if not mono:
                term = cs
            elif (-c if neg else c).is_one():
                term = mono
            elif c.is_const():
                term = f"{cs}*{mono}"
            else:
                term = f"({cs})*{mono}"
            if not out:
                out = "-" + term if neg else term
            else:
                out += (" - " if neg else " + ") + term
        return out


def _as_qpoly(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    return QPoly([x])


def qp_add(x: QPoly, y: QPoly) -> QPoly:
    a, b = x.coeffs, y.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return QPoly(out)


def qp_neg(x: QPoly) -> QPoly:
    return QPoly([-c for c in x.coeffs])


def qp_sub(x: QPoly, y: QPoly) -> QPoly:
    return qp_add(x, qp_neg(y))


def qp_mul(x: QPoly, y: QPoly) -> QPoly:
    if x.is_zero() or y.is_zero():
        return QPoly()
    out = [_PR_ZERO] * (len(x.coeffs) + len(y.coeffs) - 1)
    for i, c in enumerate(x.coeffs):
        if c.is_zero():
            continue
        for j, d in enumerate(y.coeffs):
            if not d.is_zero():
                out[i + j] = out[i + j] + c * d
    return QPoly(out)


def qp_divrem(x: QPoly, y: QPoly) -> tuple[QPoly, QPoly]:
    """Quotient and remainder over the field Q(a, e)."""
    if y.is_zero():
        raise DivideByZeroPoly("division by the zero polynomial")
    rem = list(x.coeffs)
    dy = y.degree()
    inv = y.lc().inverse()
    quot = [_PR_ZERO] * max(0, len(rem) - dy)
    for i in range(len(rem) - 1, dy - 1, -1):
        c = rem[i]
        if c.is_zero():
            continue
        c = c * inv
        quot[i - dy] = c
        for j, d in enumerate(y.coeffs):
            if not d.is_zero():
                rem[i - dy + j] = rem[i - dy + j] - c * d
    return QPoly(quot), QPoly(rem[:dy])


def qp_gcd(x: QPoly, y: QPoly) -> QPoly:
    """Monic gcd over the coefficient field."""
    if x.is_zero() and y.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not y.is_zero():
        x, y = y, qp_divrem(x, y)[1]
    return x.monic()


def cyclotomic(n: int) -> QPoly:
    """The n-th cyclotomic polynomial in q."""
    return QPoly.from_ints(cyclotomic_coeffs(n))


def qint(n: int) -> QPoly:
    """[n] = 1 + q + ... + q^(n-1)."""
    if n < 1:
        raise ValueError("qint needs n >= 1")
    return QPoly.from_ints([1] * n)


class RatQ:
    """Reduced fraction num/den of QPolys: coprime, den monic in q."""

    __slots__ = ("num", "den")

    def __init__(self, num: QPoly, den: QPoly | None = None, *, _normalized=False):
        num = _as_qpoly(num)
        den = QPoly.one() if den is None else _as_qpoly(den)
        if den.is_zero():
            raise DivideByZeroPoly("zero denominator")
        if not _normalized:
            if num.is_zero():
                den = QPoly.one()
            else:
                g = qp_gcd(num, den)
                if g.degree() > 0:
                    num = qp_divrem(num, g)[0]
                    den = qp_divrem(den, g)[0]
            if not den.lc().is_one():
                inv = den.lc().inverse()
                num = QPoly([c * inv for c in num.coeffs])
                den = QPoly([c * inv for c in den.coeffs])
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QPoly)):
            other = RatQ(_as_qpoly(other))
        if not isinstance(other, RatQ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __add__(self, other):
        other = other if isinstance(other, RatQ) else RatQ(_as_qpoly(other))
        return RatQ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatQ(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = other if isinstance(other, RatQ) else RatQ(_as_qpoly(other))
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, RatQ) else RatQ(_as_qpoly(other))
        return RatQ(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = other if isinstance(other, RatQ) else RatQ(_as_qpoly(other))
        if other.is_zero():
            raise DivideByZeroPoly("division by zero")
        return RatQ(self.num * other.den, self.den * other.num)

    def __repr__(self):
        return f"RatQ(({self.num}) / ({self.den}))"


def _to_mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return x


def root_of_unity(n: int, j: int = 1, dps: int = 50):
    """exp(2*pi*i*j/n) at ``dps`` digits."""
    with mpmath.workdps(dps + 10):
        return mpmath.expjpi(mpmath.mpf(2 * j) / n)


def qp_eval(x: QPoly, q0, a0=Fraction(1, 3), e0=Fraction(2, 7), dps: int = 50):
    """Horner evaluation at ``q0`` with coefficients evaluated at ``(a0, e0)``."""
    with mpmath.workdps(dps):
        q0 = mpmath.mpmathify(_to_mp(q0)) if not isinstance(q0, (int,)) else q0
        acc = 0
        for c in reversed(x.coeffs):
            try:
                cv = c.eval(a0, e0) if not c.is_const() else c.num.const_value()
            except ZeroDivisionError as exc:
                raise PoleAtPoint(str(exc)) from exc
            acc = acc * q0 + _to_mp(cv)
        return acc


# --- moduli ------------------------------------------------------------------


@dataclass(frozen=True)
class Cyclotomic:
    m: int

    def __str__(self):
        return f"Phi({self.m})"


@dataclass(frozen=True)
class QInt:
    n: int

    def __str__(self):
        return f"[{self.n}]"


@dataclass(frozen=True)
class QPolyLiteral:
    """The binomial ``left - right`` (e.g. ``1 - a*q^n`` or ``a - q^n``)."""

    left: Monomial
    right: Monomial

    def __str__(self):
        return f"({self.left} - {self.right})"


FactorKind = Union[Cyclotomic, QInt, QPolyLiteral]


@dataclass(frozen=True)
class Modulus:
    factors: tuple  # of (FactorKind, multiplicity)

    def __post_init__(self):
        for kind, mult in self.factors:
            if mult < 1:
                raise ValidationError(f"multiplicity of {kind} must be positive")
            if isinstance(kind, Cyclotomic) and kind.m < 1:
                raise ValidationError("cyclotomic index must be >= 1")
            if isinstance(kind, QInt) and kind.n < 1:
                raise ValidationError("q-integer index must be >= 1")

    def expand(self) -> QPoly:
        return modulus_expand(self, {})

    def __str__(self):
        return "*".join(str(k) if m == 1 else f"{k}^{m}" for k, m in self.factors) or "1"


def _monomial_qpoly(m: Monomial) -> QPoly:
    if m.q < 0:
        raise ValidationError(f"modulus literal {m} has a negative power of q")
    num = ParamPoly.monomial(m.coef, max(m.a, 0), max(m.e, 0))
    den = ParamPoly.monomial(1, max(-m.a, 0), max(-m.e, 0))
    return QPoly.monomial(ParamRat(num, den), m.q)


def factor_qpoly(kind: FactorKind) -> QPoly:
    if isinstance(kind, Cyclotomic):
        return cyclotomic(kind.m)
    if isinstance(kind, QInt):
        out = QPoly.one()
        for d in divisors(kind.n)[1:]:
            out = out * cyclotomic(d)
        return out
    if isinstance(kind, QPolyLiteral):
        return _monomial_qpoly(kind.left) - _monomial_qpoly(kind.right)
    raise TypeError(f"unknown modulus factor {kind!r}")


def modulus_expand(m, assignments=None) -> QPoly:
    """Expanded product of a modulus.

    ``m`` may be a concrete :class:`Modulus` or a symbolic modulus expression
    from a claim (anything with ``resolve(assignments)``).
    """
    if hasattr(m, "resolve"):
        m = m.resolve(assignments or {})
    out = QPoly.one()
    for kind, mult in m.factors:
        out = out * factor_qpoly(kind) ** mult
    return out
