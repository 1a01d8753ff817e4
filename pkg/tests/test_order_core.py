"""
Tests for posets, pure states and the projective-domain axioms
"""
import pytest

from config.config import ORACLE_MAX_ELEMENTS
from src.checks import CheckMode, Verdict
from src.chu_core import quotient, saturate
from src.errors import CycleError, NoBottomError, NoMeetError, UnknownAxiomError
from src.generators import gen_boolean, gen_mo, random_chu
from src.order_core import (FINITE_AXIOMS, AxiomId, PureType, brute_force_check, brute_force_covers,
                            brute_force_pure_states, build_poset, check_axiom, check_modular_equivalent,
                            check_order_generation, check_projective_domain, cover_relation, is_consistent,
                            is_quasi_consistent, join_of, meet_of, pure_states, underline_of)

SCANNED_AXIOMS = [a for a in AxiomId if a not in FINITE_AXIOMS]


def test_build_poset_takes_transitive_closure():
    P = build_poset(["x", "y", "z"], [("x", "y"), ("y", "z")])
    assert P.leq("x", "z")
    assert not P.leq("z", "x")
    assert P.elements[P.bottom] == "x"
    assert cover_relation(P) == [("x", "y"), ("y", "z")]


def test_build_poset_rejects_cycles():
    with pytest.raises(CycleError) as info:
        build_poset(["x", "y", "z"], [("x", "y"), ("y", "z"), ("z", "y")])
    assert set(info.value.witness) == {"y", "z"}


def test_build_poset_requires_bottom():
    with pytest.raises(NoBottomError):
        build_poset(["a", "b"], [])


def test_build_poset_rejects_duplicate_names():
    with pytest.raises(ValueError):
        build_poset(["a", "a"], [])


def test_meets_and_joins_in_bool3(bool3):
    P = bool3.poset
    assert meet_of(P, ["{1,2}", "{1,3}"]) == "{1}"
    assert join_of(P, ["{1}", "{2}"]) == "{1,2}"
    assert join_of(P, ["{1,2}", "{3}"]) is None
    assert is_consistent(P, ["{1}", "{2}"])
    assert not is_consistent(P, ["{1,2}", "{1,3}"])


def test_meet_of_missing_glb_raises():
    # two minimal upper bounds of {x, y} have no meet
    P = build_poset(["bot", "x", "y", "u", "v"],
                    [("bot", "x"), ("bot", "y"), ("x", "u"), ("y", "u"), ("x", "v"), ("y", "v")])
    with pytest.raises(NoMeetError):
        meet_of(P, ["u", "v"])


def test_pure_states_of_mo2(mo2):
    pure, types = pure_states(mo2.poset)
    assert pure == {"a", "a'", "b", "b'"}
    assert set(types.values()) == {PureType.TYPE1}


def test_pure_states_of_chain(chain3):
    _, types = pure_states(chain3.poset)
    assert types == {"c1": PureType.TYPE2, "c2": PureType.TYPE1}


def test_underline_in_bool3(bool3):
    assert underline_of(bool3.poset, ["{1}"]) == {"{1,2}", "{1,3}"}
    assert underline_of(bool3.poset, ["{}"]) == {"{1,2}", "{1,3}", "{2,3}"}


def test_quasi_consistency(mo2, bool3):
    assert is_quasi_consistent(mo2.poset, "a", "a'")
    # {3} lies below {1,3} and shares no upper bound with {1,2}
    assert not is_quasi_consistent(bool3.poset, "{1,2}", "{1,3}")


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_boolean_spaces_are_projective_domains(n):
    results = check_projective_domain(gen_boolean(n).poset)
    assert all(r.ok for r in results), [r.line() for r in results if not r.ok]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_mo_spaces_are_projective_domains(n):
    results = check_projective_domain(gen_mo(n).poset)
    assert all(r.ok for r in results), [r.line() for r in results if not r.ok]


def test_n5_fails_conditional_modularity(n5):
    result = check_axiom(n5.poset, AxiomId.COND_MODULAR)
    assert result.verdict == Verdict.FAIL
    assert result.witness == ("c", "a", "b")


def test_chain_has_type2_pure_state(chain3):
    result = check_axiom(chain3.poset, "NoType2")
    assert result.verdict == Verdict.FAIL
    assert result.witness == ("c1",)


def test_join_continuity_runs_in_report_mode(mo2):
    result = check_axiom(mo2.poset, AxiomId.JOIN_CONTINUITY)
    assert result.mode == CheckMode.REPORT
    assert result.verdict == Verdict.PASS


def test_join_continuity_needs_bounded_joins():
    # a and b have two minimal upper bounds c and d
    P = build_poset(["bot", "a", "b", "c", "d", "top"],
                    [("bot", "a"), ("bot", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"),
                     ("c", "top"), ("d", "top")])
    result = check_axiom(P, AxiomId.JOIN_CONTINUITY)
    assert result.verdict == Verdict.FAIL
    assert result.mode == CheckMode.REPORT
    assert result.witness == ("a", "b", "b")
    assert brute_force_check(P, AxiomId.JOIN_CONTINUITY).witness == result.witness


def test_unknown_axiom_is_rejected(mo2):
    with pytest.raises(UnknownAxiomError):
        check_axiom(mo2.poset, "Distributive")


@pytest.mark.parametrize("axiom", FINITE_AXIOMS)
def test_finite_axioms_are_trivial_by_default(mo2, axiom):
    assert check_axiom(mo2.poset, axiom).verdict == Verdict.TRIVIAL_FINITE


@pytest.mark.parametrize("axiom", [AxiomId.DIRECTED_COMPLETE, AxiomId.CHAIN_COMPLETE,
                                   AxiomId.MEET_CONTINUOUS, AxiomId.ALGEBRAIC])
def test_exhaustive_mode_verifies_definitional_forms(mo2, axiom):
    assert check_axiom(mo2.poset, axiom, exhaustive=True).verdict == Verdict.PASS


def test_order_generation(mo2, bool3):
    assert check_order_generation(mo2.poset).ok
    assert check_order_generation(bool3.poset).ok


def test_modular_cancellation_form(bool3, n5):
    assert check_modular_equivalent(bool3.poset).ok
    result = check_modular_equivalent(n5.poset)
    assert result.witness == ("c", "a", "b")


# Optimized scans against their definitional twins

def _assert_agrees(P):
    assert pure_states(P) == brute_force_pure_states(P)
    assert sorted(cover_relation(P)) == sorted(brute_force_covers(P))
    for axiom in SCANNED_AXIOMS:
        fast, slow = check_axiom(P, axiom), brute_force_check(P, axiom)
        assert (fast.verdict, fast.witness) == (slow.verdict, slow.witness), axiom


def test_oracle_agrees_on_fixtures(mo2, bool3, n5, chain3):
    for space in (mo2, bool3, n5, chain3, gen_mo(3)):
        _assert_agrees(space.poset)


# States are distinct rows, so 1-2 tests keep a quotient within 9 states and
# 3 tests with at most 3 preparations within 8.
RANDOM_SHAPES = [(p, 1) for p in range(1, 7)] + [(p, 2) for p in range(1, 7)] + [(p, 3) for p in range(1, 4)]


@pytest.mark.parametrize("seed", range(200))
def test_oracle_agrees_on_random_quotients(seed):
    n_prep, n_test = RANDOM_SHAPES[seed % len(RANDOM_SHAPES)]
    P = quotient(saturate(random_chu(seed, n_prep, n_test))).states
    assert len(P) <= ORACLE_MAX_ELEMENTS
    _assert_agrees(P)
