from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcong.claims import instantiate
from qcong.claims.ast import BinOp, Bracket
from qcong.claims.parser import parse_expr
from qcong.errors import UnsupportedFactor
from qcong.monomial import Monomial
from qcong.polyq import QPoly, RatQ, qint, qp_eval
from qcong.qseries import Context, bracket_eval, default_monos, evaluate, poch_eval, summand_eval, summand_template

Q = QPoly([0, 1])
ONE = RatQ(QPoly.one())


def ctx(**env):
    return Context(env, default_monos(("a", "e")))


def one_minus(c, k, a=0, e=0):
    from qcong.algebra import ParamPoly, ParamRat

    coef = ParamRat(ParamPoly.monomial(c, a, e))
    if k >= 0:
        return RatQ(QPoly([1] + [0] * (k - 1) + [-coef]) if k else QPoly([1 - coef]))
    return RatQ(QPoly([-coef] + [0] * (-k - 1) + [1]), QPoly([0] * (-k) + [1]))


def test_poch_examples():
    assert poch_eval(Monomial(1, 1), 4, 2) == RatQ((1 - Q) * (1 - Q ** 5))
    assert poch_eval(Monomial(1, 7), 3, 0) == ONE
    # (q^-1; q^2)_2 = (1 - q^-1)(1 - q)
    assert poch_eval(Monomial(1, -1), 2, 2) == RatQ((Q - 1) * (1 - Q), QPoly([0, 1]))
    # (e; q^4)_3
    e = Monomial.var("e")
    expected = one_minus(1, 0, e=1) * one_minus(1, 4, e=1) * one_minus(1, 8, e=1)
    assert poch_eval(e, 4, 3) == expected


def test_bracket_examples():
    assert bracket_eval(3, 1, 2, 1) == RatQ(qint(7))
    assert bracket_eval(6, -1, 1, 0) == RatQ(QPoly([-1]), QPoly([0, 1]))
    assert bracket_eval(3, 1, 2, 0) == ONE


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3), st.integers(-4, 4), st.sampled_from([1, -1]), st.integers(1, 4), st.integers(0, 10))
def test_poch_recurrence(a_exp, q_exp, c, step, k):
    base = Monomial(c, q_exp, a_exp, 0)
    nxt = poch_eval(base, step, k + 1)
    cur = poch_eval(base, step, k)
    f = one_minus(base.coef, base.q + step * k, base.a)
    assert nxt.num * cur.den * f.den == cur.num * f.num * nxt.den


def test_rational_base_needs_series_layer():
    with pytest.raises(UnsupportedFactor):
        poch_eval(Monomial(Fraction(2, 3)), 1, 2)


def test_multi_poch_is_product_of_singles():
    c = ctx(d=2)
    multi = evaluate(parse_expr("poch(q, e, q^(1+d)/e; q^(2*d))_3"), c).to_ratq()
    singles = ONE
    for src in ("poch(q; q^4)_3", "poch(e; q^4)_3", "poch(q^3/e; q^4)_3"):
        singles = singles * evaluate(parse_expr(src), c).to_ratq()
    assert multi == singles


def test_theorem_summands_at_k0(claims):
    cc = instantiate(claims["thm1_1"], {"d": 2, "n": 3})
    assert summand_eval(cc.claim.summand, Context(cc.env, cc.monos), "k", 0) == ONE
    cc = instantiate(claims["thm1_4_case1"], {"n": 5})
    assert summand_eval(cc.claim.summand, Context(cc.env, cc.monos), "k", 0) == RatQ(QPoly([-1]))


def test_chen_chu_summand_numeric(claims):
    cc = instantiate(claims["chen_chu_8k1"], {})
    r = summand_eval(cc.claim.summand, Context(cc.env, cc.monos), "k", 1)
    with mpmath.workdps(50):
        q0 = mpmath.mpf(1) / 3
        direct = (1 - q0 ** 9) / (1 - q0) * ((1 - q0) / (1 - q0 ** 4)) ** 4 * q0 ** 2
        got = qp_eval(r.num, Fraction(1, 3)) / qp_eval(r.den, Fraction(1, 3))
        assert abs(got - direct) < mpmath.mpf(10) ** -45


def _factors(node, inverse=False):
    if isinstance(node, BinOp) and node.op in "*/":
        yield from _factors(node.left, inverse)
        yield from _factors(node.right, inverse if node.op == "*" else not inverse)
    else:
        yield node, inverse


@pytest.mark.parametrize("name,args", [("thm1_4_case1", {"n": 13}), ("qg2", {"n": 5})])
def test_summand_reduction_is_sound(claims, name, args):
    cc = instantiate(claims[name], args)
    c = Context(cc.env, cc.monos)
    for k in range(4):
        r = summand_eval(cc.claim.summand, c, "k", k)
        # rebuild the summand factor by factor with dense arithmetic
        num, den = QPoly.one(), QPoly.one()
        for node, inv in _factors(cc.claim.summand):
            f = evaluate(node, c.bind("k", k)).to_ratq()
            if inv:
                num, den = num * f.den, den * f.num
            else:
                num, den = num * f.num, den * f.den
        assert r.num * den == num * r.den
        assert r == RatQ(num, den)


def test_theorem_template(claims):
    t = summand_template(claims["thm1_1"].summand)
    assert isinstance(t.bracket, Bracket)
    assert len(t.poch_num) == 6 and len(t.poch_den) == 6
    assert t.qpower == parse_expr("d*k")
    assert not t.others
