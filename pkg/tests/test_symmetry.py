"""
Tests for dictionaries, symmetries and induced lattice maps
"""
import hypothesis
import hypothesis.strategies as strat
import pytest

from src.checks import Verdict
from src.errors import EmptyFilterError, NotOrthocomplementError, SpaceMismatchError
from src.generators import random_chu
from src.symmetry import (Dictionary, automorphisms, check_chu_morphism, check_preservation, check_raw_chu_morphism,
                          check_symmetry, compose, dictionary_from_state_map, identity_dictionary,
                          induced_lattice_map, inverse, lower_adjoint, quotient_dictionary)

SWAP = {"bot": "bot", "a": "b", "a'": "b'", "b": "a", "b'": "a'"}


def _failures(results):
    return {r.axiom_id: r.witness for r in results if r.verdict == Verdict.FAIL}


def _all_checks(D):
    results = [check_chu_morphism(D)]
    results.extend(check_symmetry(D))
    results.extend(check_preservation(D))
    results.extend(induced_lattice_map(D).checks)
    return results


@pytest.fixture
def swap(mo2):
    return dictionary_from_state_map(mo2, mo2, SWAP)


def test_swap_pulls_tests_back(swap):
    assert swap.f_tests[("a", "a'")] == ("b", "b'")
    assert swap.f_tests[("b'", "b")] == ("a'", "a")


def test_swap_is_a_symmetry(swap):
    assert _failures(_all_checks(swap)) == {}


def test_mo2_has_eight_automorphisms(mo2):
    found = automorphisms(mo2)
    assert len(found) == 8
    assert found[0].f_states == {s: s for s in mo2.poset.elements}
    for D in found:
        assert _failures(_all_checks(D)) == {}


def test_automorphisms_are_closed_under_composition(mo2):
    found = automorphisms(mo2)
    maps = [D.f_states for D in found]
    for D1 in found:
        for D2 in found:
            composed = compose(D1, D2)
            assert composed.f_states in maps
            assert all(r.ok for r in check_symmetry(composed))


def test_inverse_of_swap(swap):
    assert compose(swap, swap).f_states == identity_dictionary(swap.source).f_states
    assert inverse(swap).f_states == swap.f_states
    assert compose(swap, inverse(swap)).f_states == identity_dictionary(swap.source).f_states


def test_identity_lower_adjoint(mo2):
    D = identity_dictionary(mo2)
    assert lower_adjoint(D, "a") == "a"
    assert lower_adjoint(D, "bot") == "bot"


def test_lower_adjoint_needs_a_source_test(mo2):
    partial = Dictionary(mo2, mo2, SWAP, {})
    with pytest.raises(EmptyFilterError):
        lower_adjoint(partial, "a")


def test_induced_map_of_swap(swap):
    induced = induced_lattice_map(swap)
    assert induced.mapping[frozenset({"a"})] == frozenset({"b"})
    assert induced.right_adjoint[frozenset({"b"})] == frozenset({"a"})


def test_collapse_fails_injectivity(mo2, bool2):
    f = {"bot": "{}", "a": "{1}", "a'": "{2}", "b": "{1}", "b'": "{2}"}
    D = Dictionary(mo2, bool2, f, {})
    failures = _failures(check_symmetry(D))
    assert failures["Injectivity"] == ("a", "b")


def test_corrupted_test_map_is_rejected(mo2, swap):
    f_tests = dict(swap.f_tests)
    f_tests[("a", "a'")] = ("a", "a'")
    D = Dictionary(mo2, mo2, SWAP, f_tests)
    assert check_chu_morphism(D).witness == ("a", "[a,a']")
    assert _failures(check_preservation(D))["Conjugation"] == ("[a,a']",)


def test_corrupted_test_map_has_no_right_adjoint(mo2, swap):
    f_tests = dict(swap.f_tests)
    f_tests[("a", "a'")] = ("a", "a'")
    D = Dictionary(mo2, mo2, SWAP, f_tests)
    failures = _failures(induced_lattice_map(D).checks)
    assert "InducedAdjunction" in failures
    assert "ChuMorphism" in _failures(_all_checks(D))


def test_missing_test_images_are_rejected(mo2, swap):
    f_tests = {t: s for t, s in swap.f_tests.items() if t != ("a", "a'")}
    D = Dictionary(mo2, mo2, SWAP, f_tests)
    failures = _failures(check_symmetry(D))
    assert failures["Surjectivity"] == ("[b,b']",)
    assert failures["SchemePreservation"] == ("[a,a']",)
    morphism = check_chu_morphism(D)
    assert morphism.witness == ("[a,a']",)
    assert morphism.detail == "target pair has no image"


def test_checks_need_both_schemes(mo2, n5):
    D = Dictionary(n5, mo2, {s: "bot" for s in n5.poset.elements}, {})
    with pytest.raises(NotOrthocomplementError):
        check_preservation(D)
    with pytest.raises(NotOrthocomplementError):
        induced_lattice_map(D)


def test_state_map_breaking_orthogonality(mo2):
    f = {"bot": "bot", "a": "a", "a'": "b", "b": "a'", "b'": "b'"}
    D = Dictionary(mo2, mo2, f, {})
    assert _failures(check_preservation(D))["Orthogonality"] == ("a", "a'")


def test_compose_requires_matching_spaces(bool2, swap):
    with pytest.raises(SpaceMismatchError):
        compose(swap, identity_dictionary(bool2))


def test_dictionary_from_non_injective_map(mo2):
    with pytest.raises(SpaceMismatchError):
        dictionary_from_state_map(mo2, mo2, {"bot": "bot", "a": "a", "a'": "a", "b": "b", "b'": "b'"})


@hypothesis.settings(max_examples=50, deadline=None)
@hypothesis.given(strat.integers(min_value=0, max_value=2 ** 32),
                  strat.integers(min_value=1, max_value=6),
                  strat.integers(min_value=1, max_value=4))
def test_quotient_map_is_a_chu_morphism(seed, n_prep, n_test):
    assert check_raw_chu_morphism(quotient_dictionary(random_chu(seed, n_prep, n_test))).ok
