from fractions import Fraction
from math import inf

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcong.claims import instantiate, parse_claim, print_claim
from qcong.errors import NotPadicInteger, PrimeConditionViolated, ValidationError
from qcong.padic import Residue, padic_gamma, padic_sum_check, poch_rational, vanhamme_g2_check, vp

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 30))
nonzero_rationals = rationals.filter(bool)


def test_poch_rational_examples():
    assert poch_rational(Fraction(1, 4), 2) == Fraction(5, 16)
    assert poch_rational(Fraction(7, 3), 0) == 1
    for k in (4, 5, 6):
        assert vp(poch_rational(Fraction(1, 2), k), 7) >= 1
    assert poch_rational(Fraction(1, 2), 4) == Fraction(105, 16)
    assert vp(Fraction(105, 16), 7) == 1


def test_vp_examples():
    assert vp(Fraction(125, 4), 5) == 3
    assert vp(1, 13) == 0
    assert vp(0, 3) == inf
    assert vp(Fraction(2, 75), 5) == -2


@settings(max_examples=100, deadline=None)
@given(rationals, st.integers(0, 8), st.integers(0, 8))
def test_poch_split(x, j, k):
    assert poch_rational(x, j + k) == poch_rational(x, j) * poch_rational(x + j, k)


@settings(max_examples=100, deadline=None)
@given(nonzero_rationals, nonzero_rationals, st.sampled_from([2, 3, 5, 7, 13]))
def test_vp_multiplicative(x, y, p):
    assert vp(x * y, p) == vp(x, p) + vp(y, p)


def test_gamma_integer_values():
    for p in (3, 5, 13):
        for r in (1, 2, 4):
            assert padic_gamma(1, p, r) == p ** r - 1
            assert padic_gamma(2, p, r) == 1
    # Gamma_5(3) = -(1*2); Gamma_5(6) = +(1*2*3*4), the multiple of 5 skipped
    assert padic_gamma(3, 5, 2) == 25 - 2
    assert padic_gamma(6, 5, 2) == 24


@pytest.mark.parametrize("p", [3, 5, 13])
@pytest.mark.parametrize("x", [Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(1, 8)])
def test_gamma_precision_consistency(p, x):
    for r in (1, 2, 3):
        assert padic_gamma(x, p, r + 1) % p ** r == padic_gamma(x, p, r)


def test_gamma_half_mod_125():
    # squared, Gamma_p(1/2) is (-1)^((p+1)/2); for p = 5 that is -1
    g = padic_gamma(Fraction(1, 2), 5, 3)
    assert g == 68
    assert g * g % 125 == 124


def test_gamma_reflection_for_quarters():
    # Gamma_p(x) Gamma_p(1 - x) = +-1, independent of the product formula's details
    for p in (5, 13, 29):
        for x in (Fraction(1, 4), Fraction(1, 8), Fraction(3, 8)):
            v = padic_gamma(x, p, 3) * padic_gamma(1 - x, p, 3) % p ** 3
            assert v in (1, p ** 3 - 1)


def test_gamma_rejects_bad_inputs():
    with pytest.raises(NotPadicInteger):
        padic_gamma(Fraction(1, 5), 5, 2)
    with pytest.raises(ValidationError):
        padic_gamma(Fraction(1, 2), 2, 2)
    with pytest.raises(ValidationError):
        padic_gamma(Fraction(1, 2), 9, 2)


def test_residue_arithmetic():
    x = Residue.of(Fraction(1, 2), 5, 3)
    assert (x * 2).value == 1
    assert (x / x).value == 1
    assert (x ** -2 * x ** 2).value == 1
    with pytest.raises(NotPadicInteger):
        Residue(5, 5, 3).inverse()


@pytest.mark.parametrize("p", [5, 13, 29])
def test_corollary_valuation(claims, p):
    res = padic_sum_check(instantiate(claims["cor1_2"], {"p": p}))
    assert res.holds
    v = res.factors[0]["valuation"]
    assert v == "inf" or v >= 3


def test_3dk1_family_bound(claims):
    cc = instantiate(claims["padic_3dk1"], {"d": 2, "p": 3})
    assert cc.upper == 2  # (2*3 + 3 - 1) / (2*2)
    assert padic_sum_check(cc).holds


def test_conjectured_quartic_valuation(claims):
    cc = instantiate(claims["conj5_3_padic"], {"p": 5})
    assert cc.upper == 2
    res = padic_sum_check(cc)
    assert res.holds and res.factors[0]["required_valuation"] == 4


@pytest.mark.parametrize("p", [5, 13, 17, 29])
def test_vanhamme_claim_matches_direct_route(claims, p):
    direct = vanhamme_g2_check(p)
    via_claim = padic_sum_check(instantiate(claims["vanhamme_g2"], {"p": p}))
    assert direct.holds and via_claim.holds


def test_vanhamme_rejects_wrong_class():
    with pytest.raises(PrimeConditionViolated):
        vanhamme_g2_check(7)


def test_vanhamme_detects_wrong_rhs(claims):
    text = print_claim(claims["vanhamme_g2"]).replace("Gamma_p(1 / 4)", "Gamma_p(3 / 4)")
    assert text != print_claim(claims["vanhamme_g2"])
    res = padic_sum_check(instantiate(parse_claim(text), {"p": 13}))
    assert not res.holds
