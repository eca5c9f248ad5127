"""Binomials ``1 - c*x^alpha`` and their irreducible cyclotomic factors.

Every factor the engine meets is a binomial in the monomial ``x^alpha =
q^i a^j e^k``.  With ``c = +-1`` such a binomial splits, up to sign, into
atoms ``Phi_delta(x^beta)`` where ``beta`` is primitive.  Atoms with ``beta =
(1, 0, 0)`` are the ordinary cyclotomic polynomials in ``q``; the others
(e.g. ``1 - a*q^n``) are irreducible polynomials involving a parameter.
Distinct atoms are coprime, so divisibility can be tested one atom at a
time.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import UnsupportedFactor, ValidationError
from .laurent import LPoly
from .monomial import Monomial
from .ntheory import cyclotomic_coeffs, divisors
from .polyq import Cyclotomic, QInt, QPolyLiteral

Q_ONLY = (1, 0, 0)


def oriented(exps) -> bool:
    """True when the first nonzero exponent in the order e, a, q is positive."""
    for x in (exps[2], exps[1], exps[0]):
        if x:
            return x > 0
    return True


@dataclass(frozen=True, order=True)
class Binomial:
    """``1 - c * x^exps`` with ``exps`` oriented and nonzero."""

    c: Fraction
    exps: tuple

    def __str__(self):
        return f"(1 - {Monomial(self.c, *self.exps)})"


def canonical_binomial(c, exps):
    """Write ``1 - c x^exps`` as ``unit * binomial``.

    Returns ``(unit_coef, unit_exps, binomial)``; ``binomial`` is ``None``
    when ``exps`` is zero, in which case the factor is the constant
    ``unit_coef``.
    """
    c = Fraction(c)
    exps = tuple(exps)
    if exps == (0, 0, 0):
        return 1 - c, (0, 0, 0), None
    if oriented(exps):
        return Fraction(1), (0, 0, 0), Binomial(c, exps)
    # 1 - c t = -c t (1 - t^{-1}/c)
    neg = (-exps[0], -exps[1], -exps[2])
    return -c, exps, Binomial(1 / c, neg)


@dataclass(frozen=True, order=True)
class Atom:
    """``Phi_order(x^beta)`` with ``beta`` primitive and oriented."""

    order: int
    beta: tuple

    def is_q_only(self) -> bool:
        return self.beta == Q_ONLY

    def depends_on_q(self) -> bool:
        return self.beta[0] != 0

    def __str__(self):
        if self.is_q_only():
            return f"Phi_{self.order}(q)"
        return f"Phi_{self.order}({Monomial(1, *self.beta)})"


@lru_cache(maxsize=None)
def binomial_atoms(b: Binomial):
    """Factor ``b`` as ``sign * prod(atoms)``; returns ``(sign, tuple of atoms)``.

    Raises UnsupportedFactor when ``c`` is not +-1 (no cyclotomic splitting).
    """
    if b.c not in (1, -1):
        raise UnsupportedFactor(f"binomial {b} has a coefficient other than +-1")
    g = 0
    for x in b.exps:
        g = gcd(g, x)
    beta = tuple(x // g for x in b.exps)
    if b.c == 1:
        # 1 - t^g = -prod_{m | g} Phi_m(t)
        return -1, tuple(Atom(m, beta) for m in divisors(g))
    # 1 + t^g = prod_{m | 2g, m does not divide g} Phi_m(t)
    return 1, tuple(Atom(m, beta) for m in divisors(2 * g) if g % m)


@lru_cache(maxsize=4096)
def atom_poly(atom: Atom) -> LPoly:
    cs = cyclotomic_coeffs(atom.order)
    if atom.is_q_only():
        return LPoly.from_q(cs)
    bq, ba, be = atom.beta
    return LPoly.from_terms({(i * bq, i * ba, i * be): c for i, c in enumerate(cs) if c})


def atom_main_var(atom: Atom) -> int:
    """Variable used for exact division by a parametric atom (2 = e, 1 = a)."""
    return 2 if atom.beta[2] else 1


def atoms_of_binomials(binoms: Counter):
    """Combine a multiset of binomials into ``(sign, Counter of atoms)``."""
    sign = 1
    out: Counter = Counter()
    for b, m in binoms.items():
        s, atoms = binomial_atoms(b)
        if s < 0 and m % 2:
            sign = -sign
        for at in atoms:
            out[at] += m
    return sign, out


def modulus_atoms(modulus) -> Counter:
    """Atom multiplicities of a concrete modulus (units dropped)."""
    out: Counter = Counter()
    for kind, mult in modulus.factors:
        if isinstance(kind, Cyclotomic):
            out[Atom(kind.m, Q_ONLY)] += mult
        elif isinstance(kind, QInt):
            for d in divisors(kind.n)[1:]:
                out[Atom(d, Q_ONLY)] += mult
        elif isinstance(kind, QPolyLiteral):
            left, right = kind.left, kind.right
            if left.coef == 0:
                raise ValidationError(f"modulus factor {kind} is a monomial")
            ratio = right / left
            _, _, b = canonical_binomial(ratio.coef, ratio.exps)
            if b is None:
                raise ValidationError(f"modulus factor {kind} is a constant")
            for at in binomial_atoms(b)[1]:
                out[at] += mult
        else:
            raise TypeError(f"unknown modulus factor {kind!r}")
    return out
