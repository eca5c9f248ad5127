from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcong.claims import instantiate, parse_claim, print_claim
from qcong.engine import (
    SeriesProductSpec,
    product_truncate,
    rahman_check,
    rahman_substitutions,
    series_identity_check,
)
from qcong.errors import NonTruncatable, PoleBeforeTruncation
from qcong.monomial import Monomial
from qcong.polyq import QPoly
from qcong.qseries import Context
from qcong.series import EXACT, TSeries, expand, poch_inf
from qcong.series import product_truncate as raw_product


def _pentagonal(N):
    out = [0] * (N + 1)
    k = 0
    while True:
        hit = False
        for m in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if m <= N:
                out[m] = (-1) ** k
                hit = True
        if not hit:
            return out
        k += 1


def _direct_product(factors, N):
    """Multiply out factor by factor with plain list arithmetic."""
    acc = [Fraction(0)] * (N + 1)
    acc[0] = Fraction(1)
    for a, b, pos in factors:
        m = a
        while m <= N:
            if pos == "num":
                acc = [acc[i] - (acc[i - m] if i >= m else 0) for i in range(N + 1)]
            else:
                for i in range(m, N + 1):
                    acc[i] += acc[i - m]
            m += b
    return acc


def test_euler_product():
    got = product_truncate(SeriesProductSpec(((1, 1, "num"),)), 10)
    assert got == QPoly.from_ints([1, -1, -1, 0, 0, 1, 0, 1])
    assert raw_product([(1, 1, "num")], 200) == _pentagonal(200)


def test_empty_product():
    assert product_truncate(SeriesProductSpec(()), 12) == QPoly.one()


def test_nonpositive_exponent_rejected():
    with pytest.raises(NonTruncatable):
        raw_product([(0, 1, "num")], 5)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 5), st.integers(1, 5), st.sampled_from(["num", "den"])), max_size=5),
       st.integers(0, 30), st.integers(0, 30))
def test_truncation_stable(factors, n1, n2):
    a = raw_product(factors, n1)
    b = raw_product(factors, n2)
    m = min(n1, n2)
    assert a[:m + 1] == b[:m + 1]
    assert a == _direct_product(factors, n1)


def test_tseries_arithmetic():
    x = TSeries(0, [Fraction(1), Fraction(-1)], EXACT)  # 1 - q
    inv = x.with_prec(10).inverse()
    assert inv.coefficients(0, 9) == [1] * 10
    assert (x * inv).coefficients(0, 9) == [1] + [0] * 9
    y = TSeries.monomial(3, -2) + TSeries.constant(1)
    assert y.val == -2 and y.coeff(-2) == 3 and y.coeff(0) == 1


def test_poch_inf_head_and_zero():
    # (q^-1; q)_inf has the exact head (1 - q^-1)(1 - 1) = 0
    assert poch_inf(Monomial(1, -1), 1, 10).coeffs == []
    s = poch_inf(Monomial(-1, -1), 2, 10)  # (1 + q^-1)(1 + q)(1 + q^3)...
    assert s.val == -1 and s.coeff(-1) == 1


def test_chen_chu_identities(claims):
    for name in ("chen_chu_8k1", "chen_chu_6k1"):
        res = series_identity_check(instantiate(claims[name], {}), 40)
        assert res.holds, res.detail
        assert res.numeric_ok


def test_chen_chu_rhs_against_direct_product(claims):
    cc = instantiate(claims["chen_chu_8k1"], {})
    rhs = expand(cc.claim.rhs, Context(cc.env, cc.monos), 40)
    spec = [(5, 4, "num"), (3, 4, "num"), (3, 4, "num"), (3, 4, "num"),
            (2, 4, "den"), (4, 4, "den"), (4, 4, "den"), (4, 4, "den")]
    assert rhs.coefficients(0, 40) == _direct_product(spec, 40)


def test_perturbed_product_mismatch(claims):
    text = print_claim(claims["chen_chu_8k1"]).replace("poch(q^5,", "poch(q^6,")
    c = parse_claim(text)
    res = series_identity_check(instantiate(c, {}), 40, numeric=False)
    assert not res.holds
    assert res.remainder_degree <= 6


def test_truncation_zero(claims):
    res = series_identity_check(instantiate(claims["chen_chu_6k1"], {}), 0, numeric=False)
    assert res.holds


def test_rahman_examples(claims):
    res = rahman_check({"a": "q^2", "b": "q", "c": "q^3", "d": "q"}, 25, claims=claims)
    assert res.holds and res.numeric_ok
    res = rahman_check({"a": "q^2", "b": "q", "c": "q^3"}, 25, d0=True, claims=claims)
    assert res.holds and res.numeric_ok


def test_rahman_terminating(claims):
    params = {"a": "(2/3)*q^2", "b": "q^(-4)", "c": "(5/3)*q^5", "d": "(3/4)*q"}
    res = rahman_check(params, 25, claims=claims)
    assert res.holds and res.numeric_ok


def test_rahman_seeded_substitutions(claims):
    subs = rahman_substitutions(3, 42)
    assert subs == rahman_substitutions(3, 42)
    assert len(subs) == 3 and all(set(s) == {"a", "b", "c", "d"} for s in subs)
    for s in subs:
        assert rahman_check(s, 25, claims=claims).holds
    for s in rahman_substitutions(3, 42, d0=True):
        assert rahman_check(s, 25, d0=True, claims=claims).holds


def test_pole_before_truncation(claims):
    # a q / d = 1 makes (a q / d; q)_k vanish in the denominator
    params = {"a": "q^2", "b": "q", "c": "q^3", "d": "q^3"}
    with pytest.raises(PoleBeforeTruncation):
        rahman_check(params, 10, claims=claims)


def test_divergent_sum_rejected():
    c = parse_claim("""claim grow
kind: series
lhs: sum k=0..inf of q^(-k)
rhs: 0
""")
    with pytest.raises(NonTruncatable):
        series_identity_check(instantiate(c, {}), 5, numeric=False)
