"""Factored rational functions and Horner summation against dense arithmetic."""
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcong.atoms import Atom, Binomial, atom_poly, binomial_atoms, canonical_binomial, oriented
from qcong.errors import DenominatorIdenticallyZero, UnsupportedFactor
from qcong.laurent import LPoly
from qcong.polyq import QPoly, RatQ, cyclotomic
from qcong.qfraction import QFraction, Term, atom_valuation, sum_terms


def _binomial_ratq(c, k):
    """1 - c q^k as a RatQ (k may be negative)."""
    if k >= 0:
        return RatQ(QPoly([1] + [0] * (k - 1) + [-c]) if k else QPoly([1 - c]))
    return RatQ(QPoly([-c] + [0] * (-k - 1) + [1]), QPoly([0] * (-k) + [1]))


def _mono_ratq(c, k):
    return RatQ(QPoly([0] * k + [c])) if k >= 0 else RatQ(QPoly([c]), QPoly([0] * (-k) + [1]))


def _random_term(rng):
    t = Term()
    t.mul_monomial(Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4)), (rng.randint(-3, 3), 0, 0))
    dense = _mono_ratq(t.coef, t.mono[0])
    for _ in range(rng.randint(0, 4)):
        c, k, inv = rng.choice((1, -1)), rng.choice([i for i in range(-4, 5) if i]), rng.random() < 0.5
        t.mul_factor(c, (k, 0, 0), inverse=inv)
        b = _binomial_ratq(c, k)
        dense = dense / b if inv else dense * b
    return t, dense


def test_oriented_and_canonical():
    assert oriented((1, 0, 0)) and not oriented((-1, 0, 0))
    assert oriented((-5, 1, 0)) and not oriented((3, 0, -1))
    # 1 - q^-2 = -q^-2 (1 - q^2)
    unit, exps, b = canonical_binomial(1, (-2, 0, 0))
    assert (unit, exps, b) == (-1, (-2, 0, 0), Binomial(Fraction(1), (2, 0, 0)))
    assert canonical_binomial(3, (0, 0, 0)) == (-2, (0, 0, 0), None)


def test_binomial_atoms():
    sign, atoms = binomial_atoms(Binomial(Fraction(1), (6, 0, 0)))
    assert sign == -1 and sorted(a.order for a in atoms) == [1, 2, 3, 6]
    sign, atoms = binomial_atoms(Binomial(Fraction(-1), (3, 0, 0)))
    assert sign == 1 and sorted(a.order for a in atoms) == [2, 6]
    sign, atoms = binomial_atoms(Binomial(Fraction(1), (2, 2, 0)))
    assert all(a.beta == (1, 1, 0) for a in atoms)
    with pytest.raises(UnsupportedFactor):
        binomial_atoms(Binomial(Fraction(2), (1, 0, 0)))


def test_atom_poly_is_cyclotomic():
    assert atom_poly(Atom(5, (1, 0, 0))) == LPoly.from_q([1, 1, 1, 1, 1])
    # Phi_2(a q) = 1 + a q
    assert atom_poly(Atom(2, (1, 1, 0))) == LPoly.from_terms({(0, 0, 0): 1, (1, 1, 0): 1})


def test_atom_valuation():
    phi3 = LPoly.from_q([1, 1, 1])
    p = phi3 * phi3 * LPoly.from_q([2, 0, 1])
    v, rest = atom_valuation(p, Atom(3, (1, 0, 0)), 5)
    assert v == 2 and rest == LPoly.from_q([2, 0, 1])
    v, _ = atom_valuation(p, Atom(3, (1, 0, 0)), 1)
    assert v == 1


def test_vanishing_denominator_rejected():
    t = Term()
    with pytest.raises(DenominatorIdenticallyZero):
        t.mul_factor(1, (0, 0, 0), inverse=True)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_term_matches_dense_product(seed):
    rng = random.Random(seed)
    t, dense = _random_term(rng)
    assert t.to_fraction().to_ratq() == dense


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_sum_terms_matches_dense_sum(seed, count):
    rng = random.Random(seed)
    terms, total = [], RatQ(QPoly())
    for _ in range(count):
        t, dense = _random_term(rng)
        terms.append(t)
        total = total + dense
    assert sum_terms(terms).to_ratq() == total


def test_qfraction_add_and_reduce():
    phi3 = Atom(3, (1, 0, 0))
    x = QFraction(Fraction(1), LPoly.from_q([1, 1, 1]), Counter({phi3: 2}))
    scale, num, den = x.reduced()
    assert den == Counter({phi3: 1}) and num == LPoly.constant(1)
    assert (x - x).is_zero()
    assert (x + x).to_ratq() == RatQ(QPoly([2]), cyclotomic(3))
