import pytest

from qcong.claims import instantiate, parse_claim, print_claim, registry_load
from qcong.claims.ast import Bracket
from qcong.claims.parser import parse_expr
from qcong.errors import (
    ClaimSyntaxError,
    DuplicateClaim,
    PrimeConditionViolated,
    SideConditionViolated,
    UnresolvedSymbol,
    ValidationError,
)
from qcong.polyq import Cyclotomic
from qcong.qseries import summand_template

SIMPLE = """claim tiny
kind: congruence
params: n
where: n >= 1; n odd
lhs: sum k=0..(n-1)/2 of [2*k+1] * q^(k)
rhs: 0
mod: Phi(n)
"""

# (admissible, admissible, inadmissible) for every bundled claim
INSTANCES = {
    "thm1_1": ({"d": 2, "n": 3}, {"d": 4, "n": 5}, {"d": 2, "n": 5}),
    "thm1_1_e0": ({"d": 2, "n": 3}, {"d": 6, "n": 7}, {"d": 3, "n": 4}),
    "thm1_1_eneg": ({"d": 2, "n": 3}, {"d": 6, "n": 7}, {"d": 4, "n": 7}),
    "thm2_1": ({"d": 2, "n": 3}, {"d": 4, "n": 5}, {"d": 2, "n": 9}),
    "thm1_3": ({"d": 2, "n": 7}, {"d": 4, "n": 13}, {"d": 2, "n": 5}),
    "thm3_1": ({"d": 2, "n": 7}, {"d": 4, "n": 13}, {"d": 2, "n": 5}),
    "conj5_2": ({"d": 2, "n": 3}, {"d": 8, "n": 9}, {"d": 8, "n": 7}),
    "lw_eq": ({"d": 2, "n": 3}, {"d": 4, "n": 5}, {"d": 3, "n": 7}),
    "thm1_4_case1": ({"n": 5}, {"n": 9}, {"n": 7}),
    "thm1_4_strong_case1": ({"n": 5}, {"n": 13}, {"n": 3}),
    "thm1_4_case3": ({"n": 3}, {"n": 15}, {"n": 5}),
    "counterexample_n15": ({"n": 3}, {"n": 15}, {"n": 13}),
    "guo_schlosser": ({"n": 3}, {"n": 7}, {"n": 5}),
    "qg2": ({"n": 5}, {"n": 13}, {"n": 3}),
    "lw_6k1_case1_half": ({"n": 5}, {"n": 9}, {"n": 3}),
    "lw_6k1_case1_full": ({"n": 5}, {"n": 9}, {"n": 3}),
    "lw_6k1_case3_half": ({"n": 3}, {"n": 7}, {"n": 5}),
    "lw_6k1_case3_full": ({"n": 3}, {"n": 7}, {"n": 5}),
    "lemma4_1": ({"n": 3}, {"n": 9}, {"n": 4}),
    "thm4_2": ({"n": 5}, {"n": 9}, {"n": 7}),
    "conj5_3": ({"n": 5}, {"n": 13}, {"n": 9}),
    "conj5_4": ({"n": 5, "r": 1, "d": 1}, {"n": 5, "r": 2, "d": 2}, {"n": 5, "r": 1, "d": 3}),
    "conj5_5": ({"n": 5, "r": 1}, {"n": 9, "r": 2}, {"n": 5, "r": 0}),
    "cor1_2": ({"p": 5}, {"p": 13}, {"p": 7}),
    "conj5_3_padic": ({"p": 5}, {"p": 29}, {"p": 21}),
    "padic_3dk1": ({"d": 2, "p": 3}, {"d": 4, "p": 5}, {"d": 2, "p": 5}),
    "conj5_1": ({"d": 2, "p": 7}, {"d": 4, "p": 13}, {"d": 2, "p": 15}),
    "vanhamme_g2": ({"p": 5}, {"p": 13}, {"p": 7}),
    "rahman": ({"a": "q^2", "b": "q", "c": "q^3", "d": "q"},
               {"a": "q^3", "b": "-q", "c": "(2/3)*q", "d": "q^2"},
               {"a": "q^2", "b": "q", "c": "q^3", "d": "1+q"}),
    "rahman_d0": ({"a": "q^2", "b": "q", "c": "q^3"}, {"a": "q^4", "b": "q^2", "c": "q"},
                  {"a": "q^2", "b": "q"}),
    "chen_chu_8k1": ({}, None, {"n": 5}),
    "chen_chu_6k1": ({}, None, {"n": 5}),
}


def test_empty_input_is_syntax_error():
    with pytest.raises(SyntaxError):
        parse_claim("")
    with pytest.raises(ClaimSyntaxError):
        parse_claim("   \n# only a comment\n")


def test_syntax_error_has_position():
    with pytest.raises(ClaimSyntaxError) as info:
        parse_claim(SIMPLE.replace("[2*k+1]", "[2*k+1"), source="tiny.qclaim")
    assert info.value.line == 5
    assert "tiny.qclaim" in str(info.value)


def test_cubic_exponent_rejected():
    with pytest.raises(ValidationError):
        parse_claim(SIMPLE.replace("q^(k)", "q^(k^3)"))


def test_unknown_section_and_kind():
    with pytest.raises(ClaimSyntaxError):
        parse_claim(SIMPLE + "extra: 1\n")
    with pytest.raises(ValidationError):
        parse_claim(SIMPLE.replace("kind: congruence", "kind: identity"))


def test_registry_duplicates_and_empty(tmp_path):
    assert registry_load(tmp_path) == []
    (tmp_path / "one.qclaim").write_text(SIMPLE)
    assert [c.name for c in registry_load(tmp_path)] == ["tiny"]
    (tmp_path / "two.qclaim").write_text(SIMPLE)
    with pytest.raises(DuplicateClaim):
        registry_load(tmp_path)


def test_corpus_size(claims):
    assert len(claims) >= 18
    assert set(INSTANCES) == set(claims)


def test_round_trip(claims):
    for c in claims.values():
        text = print_claim(c)
        again = parse_claim(text)
        assert again == c, c.name
        assert print_claim(again) == text


def test_theorem_structure(claims):
    c = claims["thm1_1"]
    t = summand_template(c.summand)
    assert isinstance(t.bracket, Bracket) and t.bracket.arg == parse_expr("3*d*k+1")
    assert len(t.poch_num) == 6 and len(t.poch_den) == 6
    assert t.qpower == parse_expr("d*k")
    assert c.upper_bound == parse_expr("(d*n+n-1)/(2*d)")
    assert c.modulus == parse_expr("Phi(n)^3")
    assert c.condition_text() == ["d even", "d >= 2", "n >= 1", "n = d + 1 (mod 2 * d)"]


def test_instantiate_examples(claims):
    cc = instantiate(claims["thm1_1"], {"d": 2, "n": 3})
    assert cc.upper == 2
    assert cc.modulus.factors == ((Cyclotomic(3), 3),)
    with pytest.raises(SideConditionViolated):
        instantiate(claims["thm1_1"], {"d": 2, "n": 5})
    assert instantiate(claims["thm1_3"], {"d": 2, "n": 7}).upper == 3
    assert instantiate(claims["thm1_3"], {"d": 4, "n": 13}).upper == 5  # (4*13-13+1)/8
    with pytest.raises(PrimeConditionViolated):
        instantiate(claims["vanhamme_g2"], {"p": 7})
    with pytest.raises(UnresolvedSymbol):
        instantiate(claims["thm1_1"], {"d": 2})
    with pytest.raises(ValidationError):
        instantiate(claims["thm1_1"], {"d": 2, "n": 3, "r": 1})


def test_unchecked_instantiation_skips_conditions(claims):
    cc = instantiate(claims["lw_eq"], {"d": 3, "n": 7}, check_conditions=False)
    assert cc.upper == 2


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_every_claim_admits_and_rejects(claims, name):
    good1, good2, bad = INSTANCES[name]
    instantiate(claims[name], good1)
    if good2 is not None:  # parameter-free series have a single instance
        instantiate(claims[name], good2)
    with pytest.raises((ValidationError, UnresolvedSymbol)):
        instantiate(claims[name], bad)
