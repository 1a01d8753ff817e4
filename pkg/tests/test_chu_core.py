"""
Tests for three-valued Chu spaces, saturation and quotients
"""
import hypothesis
import hypothesis.strategies as strat
import pytest

from src.chu_core import (ChuSpace, GeneralizedTest, TruthValue, actual_and_questionable, check_biextensional,
                          check_state_chu, chu_from_scheme, conjugate_test, evaluate_pair, make_generalized_test,
                          missing_conjugates, mix, parse_row, property_quotient, property_state, quotient,
                          row_code, row_leq, saturate)
from src.errors import ConsistentPairError, NoBottomRowError
from src.generators import gen_product, gen_mo, random_chu

Y, N, B = TruthValue.YES, TruthValue.NO, TruthValue.BOTTOM


@pytest.fixture
def yes_no():
    return ChuSpace(("p", "q"), ("t",), ((Y,), (N,)))


def test_truth_value_algebra():
    assert Y.meet(N) is B
    assert Y.meet(Y) is Y
    assert B.leq(N) and not Y.leq(N)
    assert Y.bar() is N and B.bar() is B


def test_row_codes():
    assert row_code((Y, B, N)) == "Y_N"
    assert parse_row("Y_N") == (Y, B, N)
    assert row_leq(parse_row("__N"), parse_row("Y_N"))


def test_chu_space_rejects_ragged_rows():
    with pytest.raises(ValueError):
        ChuSpace(("p",), ("t", "u"), ((Y,),))


def test_mix_is_pointwise_meet():
    C = ChuSpace(("p", "q"), ("t", "u"), ((Y, N), (Y, Y)))
    assert mix(C, ["p", "q"]) == (Y, B)


def test_saturate_adds_bottom_row(yes_no):
    S = saturate(yes_no)
    assert S.preparations == ("p", "q", "mix:_")
    assert S.row("mix:_") == (B,)
    assert saturate(S) is S


def test_quotient_requires_bottom_row(yes_no):
    with pytest.raises(NoBottomRowError):
        quotient(yes_no)


def test_quotient_merges_equivalent_preparations():
    C = ChuSpace(("p", "p2", "q", "z"), ("t",), ((Y,), (Y,), (N,), (B,)))
    S = quotient(C)
    assert S.states.elements == ("p", "q", "z")
    assert S.states.elements[S.states.bottom] == "z"
    assert S.states.leq("z", "p")


def test_conjugate_test_extends_space(yes_no):
    assert missing_conjugates(yes_no) == ["t"]
    C, name = conjugate_test(yes_no, "t")
    assert name == "~t"
    assert C.column("~t") == (N, Y)
    assert missing_conjugates(C) == []
    assert conjugate_test(C, "t") == (C, "~t")


def test_property_quotient_groups_equal_columns():
    C = ChuSpace(("p", "q"), ("t", "t2", "u"), ((Y, Y, N), (N, N, Y)))
    assert property_quotient(C) == [("t", "t2"), ("u",)]


def test_evaluation_of_pairs(mo2):
    P = mo2.poset
    assert evaluate_pair(P, ("a", "a'"), "a") is Y
    assert evaluate_pair(P, ("a", "a'"), "a'") is N
    assert evaluate_pair(P, ("a", "a'"), "b") is B


def test_generalized_tests(mo2):
    t = make_generalized_test(mo2.poset, "a", "a'")
    assert t.name == "[a,a']"
    assert t.conjugate() == GeneralizedTest("a'", "a")
    with pytest.raises(ConsistentPairError):
        make_generalized_test(mo2.poset, "bot", "a")


def test_scheme_chu_space(mo2):
    S = chu_from_scheme(mo2.poset, mo2.pairs)
    assert S.tests == ("[a,a']", "[a',a]", "[b,b']", "[b',b]")
    assert property_state(S, "[a,a']") == "a"
    actual, questionable = actual_and_questionable(S, "[a,a']")
    assert actual == {"a"}
    assert questionable == {"bot", "a", "b", "b'"}
    assert all(r.ok for r in check_state_chu(S))


@pytest.mark.parametrize("factory", [lambda: gen_mo(2), lambda: gen_mo(3),
                                     lambda: gen_product(gen_mo(1), gen_mo(1))])
def test_scheme_evaluation_is_biextensional(factory, bool3):
    for space in (factory(), bool3):
        assert check_biextensional(chu_from_scheme(space.poset, space.pairs)).ok


def test_biextensional_reports_duplicate_columns():
    C = ChuSpace(("p", "q", "z"), ("t", "t2"), ((Y, Y), (N, N), (B, B)))
    result = check_biextensional(quotient(C))
    assert result.witness == ("t", "t2")


@hypothesis.settings(max_examples=100, deadline=None)
@hypothesis.given(strat.integers(min_value=0, max_value=2 ** 32),
                  strat.integers(min_value=1, max_value=6),
                  strat.integers(min_value=1, max_value=4))
def test_saturated_quotients_are_state_spaces(seed, n_prep, n_test):
    C = random_chu(seed, n_prep, n_test)
    saturated = saturate(C)
    assert saturate(saturated) is saturated
    S = quotient(saturated)
    assert len(set(S.eval)) == len(S.eval)
    assert all(r.ok for r in check_state_chu(S))
