"""Factored rational functions and exact Horner summation.

A :class:`QFraction` is ``scale * num / prod(atom ** mult)`` where ``num`` is
an integer Laurent polynomial and the denominator is kept as a multiset of
irreducible atoms.  Keeping the denominator factored makes the "reduced
form" of a sum cheap to reason about: the numerator of the reduced form is
divisible by an atom ``P`` to order ``m`` exactly when ``num`` is divisible
by ``P`` to order ``m + mult(P)``.

A :class:`Term` is a single product ``coef * x^mono * prod(num binomials) /
prod(den binomials)``.  Sums of terms are accumulated with a Horner scheme
on consecutive term ratios, so common Pochhammer factors are never
expanded more than once.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .atoms import (
    Atom,
    Binomial,
    atom_main_var,
    atom_poly,
    atoms_of_binomials,
    canonical_binomial,
)
from .errors import DenominatorIdenticallyZero, UnsupportedFactor
from .laurent import LPoly

ZERO3 = (0, 0, 0)


def _add3(x, y):
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2])


def _sub3(x, y):
    return (x[0] - y[0], x[1] - y[1], x[2] - y[2])


def _int_c(b: Binomial) -> int:
    if b.c.denominator != 1:
        raise UnsupportedFactor(f"binomial {b} has a non-integral coefficient")
    return b.c.numerator


@dataclass
class Term:
    coef: Fraction = Fraction(1)
    mono: tuple = ZERO3
    num: Counter = field(default_factory=Counter)
    den: Counter = field(default_factory=Counter)

    @property
    def is_zero(self) -> bool:
        return self.coef == 0

    def mul_monomial(self, coef, exps):
        self.coef *= coef
        self.mono = _add3(self.mono, exps)

    def mul_factor(self, c, exps, power: int = 1, inverse: bool = False):
        """Multiply by ``(1 - c x^exps) ** power`` (or divide when ``inverse``)."""
        if power == 0:
            return
        ucoef, uexps, b = canonical_binomial(c, exps)
        if b is None:
            if ucoef == 0:
                if inverse:
                    raise DenominatorIdenticallyZero(f"denominator factor (1 - {c}) vanishes")
                self.coef = Fraction(0)
                return
            self.coef = self.coef / ucoef ** power if inverse else self.coef * ucoef ** power
            return
        if inverse:
            self.coef /= ucoef ** power
            self.mono = _sub3(self.mono, tuple(power * x for x in uexps))
            self.den[b] += power
        else:
            self.coef *= ucoef ** power
            self.mono = _add3(self.mono, tuple(power * x for x in uexps))
            self.num[b] += power

    def mul_term(self, other: "Term", power: int = 1):
        if power < 0 and other.coef == 0:
            raise DenominatorIdenticallyZero("division by a vanishing product")
        if power < 0:
            self.coef /= other.coef ** (-power)
        else:
            self.coef *= other.coef ** power
        self.mono = _add3(self.mono, tuple(power * x for x in other.mono))
        src_num, src_den = (other.num, other.den) if power > 0 else (other.den, other.num)
        p = abs(power)
        for b, m in src_num.items():
            self.num[b] += m * p
        for b, m in src_den.items():
            self.den[b] += m * p

    def cancel(self):
        for b in list(self.num):
            if b in self.den:
                k = min(self.num[b], self.den[b])
                self.num[b] -= k
                self.den[b] -= k
        self.num = +self.num
        self.den = +self.den
        return self

    def to_fraction(self) -> "QFraction":
        if self.is_zero:
            return QFraction.zero()
        num = LPoly.monomial(1, self.mono)
        for b, m in sorted(self.num.items()):
            c = _int_c(b)
            for _ in range(m):
                num = num.mul_binomial(c, b.exps)
        sign, atoms = atoms_of_binomials(self.den)
        return QFraction(self.coef * sign, num, atoms)


def term_ratio(nxt: Term, cur: Term) -> Term:
    """``nxt / cur`` with identical binomials cancelled."""
    r = Term(nxt.coef / cur.coef, _sub3(nxt.mono, cur.mono), Counter(nxt.num), Counter(nxt.den))
    for b, m in cur.den.items():
        r.num[b] += m
    for b, m in cur.num.items():
        r.den[b] += m
    return r.cancel()


class QFraction:
    """``scale * num / prod(atom ** mult for atom, mult in den.items())``."""

    __slots__ = ("scale", "num", "den")

    def __init__(self, scale, num: LPoly, den: Counter | None = None):
        self.scale = Fraction(scale)
        self.num = num
        self.den = +Counter(den) if den else Counter()
        if self.scale == 0 or num.is_zero():
            self.scale = Fraction(0)
            self.num = LPoly()
            self.den = Counter()
        else:
            g = num.content()
            if g != 1:
                self.scale *= g
                self.num = num.exact_div_int(g)

    @classmethod
    def zero(cls):
        return cls(0, LPoly())

    @classmethod
    def one(cls):
        return cls(1, LPoly.constant(1))

    @classmethod
    def from_lpoly(cls, p: LPoly, scale=1):
        return cls(scale, p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __neg__(self):
        out = QFraction.__new__(QFraction)
        out.scale, out.num, out.den = -self.scale, self.num, self.den
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QFraction(self.scale * other, self.num, self.den)
        return QFraction(self.scale * other.scale, self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def __add__(self, other: "QFraction") -> "QFraction":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        lcm = self.den | other.den
        s = self.scale
        t = other.scale
        # put both over lcm with a common rational factor
        common = Fraction(_gcd_frac(s, t))
        n1 = _times_atoms(self.num, lcm - self.den)
        n2 = _times_atoms(other.num, lcm - other.den)
        u = s / common
        v = t / common
        # u, v are integers by construction of common
        num = n1.scale(int(u)).add_scaled(n2, int(v))
        return QFraction(common, num, lcm)

    def __sub__(self, other):
        return self + (-other)

    # divisibility -------------------------------------------------------
    def valuation(self, atom: Atom, limit: int):
        """Order of ``atom`` in ``num``, counted up to ``limit``.

        Returns ``(v, quotient)`` where ``quotient = num / atom**v``.
        """
        return atom_valuation(self.num, atom, limit)

    def reduced(self):
        """``(scale, num, den)`` with every atom common to num and den removed."""
        num = self.num
        den = Counter(self.den)
        for atom, mu in sorted(self.den.items()):
            v, num = atom_valuation(num, atom, mu)
            if v:
                den[atom] -= v
        return self.scale, num, +den

    def eval(self, q0, a0=1, e0=1):
        val = self.num.eval(q0, a0, e0) * _mp(self.scale)
        for atom, m in self.den.items():
            val /= atom_poly(atom).eval(q0, a0, e0) ** m
        return val

    def to_ratq(self):
        from .polyq import QPoly, RatQ

        if self.is_zero():
            return RatQ(QPoly())
        # after cancelling shared atoms the two sides are coprime (the atoms
        # are irreducible), so only the leading coefficient needs fixing
        scale, num, atoms = self.reduced()
        den = LPoly.constant(1)
        for atom, m in sorted(atoms.items()):
            for _ in range(m):
                den = den * atom_poly(atom)
        n_q, d_q = _lpolys_to_qpolys(num, den, scale)
        inv = d_q.lc().inverse()
        return RatQ(QPoly([c * inv for c in n_q.coeffs]), QPoly([c * inv for c in d_q.coeffs]), _normalized=True)

    def __repr__(self):
        dens = " ".join(f"{a}^{m}" for a, m in sorted(self.den.items()))
        return f"QFraction(scale={self.scale}, num={self.num!r}, den=[{dens}])"


def _gcd_frac(s: Fraction, t: Fraction) -> Fraction:
    from math import gcd, lcm

    return Fraction(gcd(s.numerator, t.numerator), lcm(s.denominator, t.denominator))


def _mp(x: Fraction):
    import mpmath

    return mpmath.mpf(x.numerator) / x.denominator


def _times_atoms(p: LPoly, atoms: Counter) -> LPoly:
    for atom, m in sorted(atoms.items()):
        if m <= 0:
            continue
        if atom.is_q_only():
            from .ntheory import cyclotomic_coeffs

            cs = list(cyclotomic_coeffs(atom.order))
            for _ in range(m):
                p = p.mul_q(cs)
        else:
            ap = atom_poly(atom)
            for _ in range(m):
                p = p * ap
    return p


def atom_valuation(p: LPoly, atom: Atom, limit: int):
    """Largest ``v <= limit`` with ``atom**v | p``, and ``p / atom**v``."""
    if p.is_zero():
        return limit, p
    v = 0
    if atom.is_q_only():
        from .ntheory import cyclotomic_coeffs

        cs = list(cyclotomic_coeffs(atom.order))
        while v < limit:
            qt = p.exact_div_q(cs)
            if qt is None:
                break
            p, v = qt, v + 1
        return v, p
    ap = atom_poly(atom)
    var = atom_main_var(atom)
    while v < limit:
        qt = p.exact_div_sparse(ap, var)
        if qt is None:
            break
        p, v = qt, v + 1
    return v, p


def _lpolys_to_qpolys(num: LPoly, den: LPoly, scale: Fraction):
    """Clear negative exponents and return QPoly numerator and denominator."""
    from .algebra import ParamPoly, ParamRat
    from .polyq import QPoly

    def shifts(p):
        t = p.terms()
        return (min(ex[0] for ex in t), min(ex[1] for ex in t), min(ex[2] for ex in t))

    sn, sd = shifts(num), shifts(den)
    # multiply both by x^(-min) so every exponent is nonnegative
    m = tuple(-min(a, b) for a, b in zip(sn, sd))

    def convert(p, extra):
        cols: dict = {}
        for (i, j, k), c in p.terms().items():
            i, j, k = i + m[0], j + m[1], k + m[2]
            cols.setdefault(i, {})[(j, k)] = Fraction(c) * extra
        deg = max(cols)
        return QPoly([ParamRat(ParamPoly(cols.get(i, {}))) for i in range(deg + 1)])

    return convert(num, scale), convert(den, Fraction(1))


def sum_terms(terms: list) -> QFraction:
    """Exact sum of a list of terms."""
    total = QFraction.zero()
    run: list = []
    for t in terms:
        if t.is_zero:
            if run:
                total = total + _sum_run(run)
            run = []
        else:
            run.append(t)
    if run:
        total = total + _sum_run(run)
    return total


def _sum_run(run: list) -> QFraction:
    """Horner evaluation of ``T_0 (1 + R_0 (1 + R_1 (...)))``."""
    A = LPoly.constant(1)
    B = LPoly.constant(1)
    b_atoms: Counter = Counter()
    b_sign = 1
    b_int = 1
    for k in range(len(run) - 2, -1, -1):
        r = term_ratio(run[k + 1], run[k])
        u, v = r.coef.numerator, r.coef.denominator
        qb = B
        for b, m in sorted(r.den.items()):
            c = _int_c(b)
            for _ in range(m):
                qb = qb.mul_binomial(c, b.exps)
        pa = A.shift(r.mono)
        for b, m in sorted(r.num.items()):
            c = _int_c(b)
            for _ in range(m):
                pa = pa.mul_binomial(c, b.exps)
        B = qb.scale(v)
        A = B.add_scaled(pa, u)
        s, atoms = atoms_of_binomials(r.den)
        b_atoms.update(atoms)
        b_sign *= s
        b_int *= v
    head = run[0]
    num = A.shift(head.mono)
    for b, m in sorted(head.num.items()):
        c = _int_c(b)
        for _ in range(m):
            num = num.mul_binomial(c, b.exps)
    s, atoms = atoms_of_binomials(head.den)
    b_atoms.update(atoms)
    return QFraction(head.coef * s * b_sign / b_int, num, b_atoms)
