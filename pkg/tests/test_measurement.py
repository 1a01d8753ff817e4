"""
Tests for properties, minimally disturbing measurements and compatibility
"""
from dataclasses import replace

import pytest

from src.checks import CheckMode, Verdict
from src.errors import DomainMismatchError, MissingConjugateError, NotQuasiClassicalError
from src.generators import gen_boolean, gen_mo
from src.measurement import (MeasurementMap, PropertyRecord, analyze_scheme, are_compatible, check_filter_preservation,
                             check_specker, check_theta_laws, coherence_descriptions, conjecture_perfect_sweep,
                             consistency_domain, description_test, is_perfect, is_scott_ideal, measure_theta,
                             property_record, retraction_pi, rho_extraction, specker_sweep, succession,
                             theorem_min_eq_qcl, theta_map, validate_measurement_map)
from src.order_core import build_poset
from src.ortho_hilbert import StateSpace

ALL_FLAGS = {"testable": True, "quasi_classical": True, "minimal": True,
             "first_kind": True, "ideal": True, "perfect": True}


@pytest.fixture
def bool3_with_isolated_atom(bool3):
    """bool3 plus an atom d that lies below nothing else"""
    P = bool3.poset
    names = list(P.elements) + ["d"]
    pairs = [(x, y) for x in P.elements for y in P.elements if x != y and P.leq(x, y)]
    return build_poset(names, pairs + [("{}", "d")])


def test_mo2_property_sets(mo2):
    record = property_record(mo2.poset, "a", "a'", mo2.pairs)
    assert record.id == "[a,a']"
    assert record.A == {"a"}
    assert record.Q == {"bot", "a", "b", "b'"}
    assert record.K == {"bot", "a"}
    assert record.flags == ALL_FLAGS
    assert consistency_domain(mo2.poset, record) == record.K


def test_mo2_measurement_collapses_onto_a(mo2):
    P = mo2.poset
    record = property_record(P, "a", "a'", mo2.pairs)
    for state in ("bot", "a", "b", "b'"):
        assert measure_theta(P, record, state) == "a"
    assert retraction_pi(P, record, "b") == "bot"
    assert check_theta_laws(P, record).ok
    with pytest.raises(DomainMismatchError):
        measure_theta(P, record, "a'")


def test_bool3_measurement_adds_the_element(bool3):
    P = bool3.poset
    record = property_record(P, "{1}", "{2,3}", bool3.pairs)
    assert measure_theta(P, record, "{}") == "{1}"
    assert measure_theta(P, record, "{2}") == "{1,2}"
    assert measure_theta(P, record, "{1,3}") == "{1,3}"
    assert record.flags == ALL_FLAGS


def test_every_scheme_property_of_the_corpus_is_minimal():
    for space in (gen_mo(1), gen_mo(2), gen_mo(3), gen_boolean(2), gen_boolean(3)):
        for record in analyze_scheme(space.poset, space.pairs):
            assert record.minimal, record.id
            assert theorem_min_eq_qcl(space.poset, record, space.pairs).ok


def test_scott_ideal_failure(bool3):
    sub = ["{}", "{1}", "{2}"]
    result = is_scott_ideal(bool3.poset, sub, sub + ["{1,2}"])
    assert result.verdict == Verdict.FAIL
    assert result.witness == ("{1,2}",)


def test_non_quasi_classical_property(bool3_with_isolated_atom):
    P = bool3_with_isolated_atom
    record = property_record(P, "{1}", "d")
    assert not record.quasi_classical
    assert not record.minimal
    assert record.measurement is None
    assert is_scott_ideal(P, record.K, record.Q).witness == ("{2,3}",)
    with pytest.raises(NotQuasiClassicalError):
        retraction_pi(P, record, "{}")
    result = theorem_min_eq_qcl(P, record)
    assert result.ok
    assert "exhaustive search" in result.detail


def test_validate_measurement_map_flags(mo2):
    P = mo2.poset
    record = property_record(P, "a", "a'", mo2.pairs)
    identity_on_a = MeasurementMap(domain=record.Q, mapping={s: ("a" if s != "b'" else "b'") for s in record.Q})
    flags = validate_measurement_map(P, identity_on_a, record)
    assert not flags["first_kind"]
    assert not flags["minimal"]
    assert validate_measurement_map(P, theta_map(P, record), record) == {
        "monotone": True, "first_kind": True, "ideal": True, "minimal": True}


def test_measurement_map_domain_must_match():
    with pytest.raises(DomainMismatchError):
        MeasurementMap(domain=frozenset({"a"}), mapping={})


def test_succession(mo2):
    P = mo2.poset
    a, a_bar, b = (property_record(P, s, t, mo2.pairs) for s, t in [("a", "a'"), ("a'", "a"), ("b", "b'")])
    assert succession(P, a, b) is None
    assert succession(P, a, a_bar) is None
    twice = succession(P, a, a)
    assert twice.id == "[a,a'].[a,a']"
    assert twice.A == {"a"}
    assert twice.measurement("b") == "a"


def test_succession_of_compatible_atoms(bool3):
    P = bool3.poset
    one = property_record(P, "{1}", "{2,3}", bool3.pairs)
    two = property_record(P, "{2}", "{1,3}", bool3.pairs)
    both = succession(P, one, two, bool3.pairs)
    assert both.id == "[{1},{2,3}].[{2},{1,3}]"
    assert both.sigma == "{1,2}"
    assert both.A == {"{1,2}"}
    assert both.Q == {"{}", "{1}", "{2}", "{1,2}"}
    assert both.flags["first_kind"]
    assert both.flags["ideal"]
    assert both.minimal


def test_succession_keeps_first_kind_and_ideal(bool3):
    P = bool3.poset
    records = analyze_scheme(P, bool3.pairs)
    for l1 in records:
        for l2 in records:
            step = succession(P, l1, l2, bool3.pairs)
            if step is None:
                assert not l1.A & l2.A
                continue
            assert step.flags["first_kind"], step.id
            assert step.flags["ideal"], step.id


def _then(P, context, l1, l2):
    if l1 is None or l2 is None:
        return None
    return succession(P, l1, l2, context)


def test_succession_is_associative(bool3):
    P = bool3.poset
    records = [r for r in analyze_scheme(P, bool3.pairs) if r.minimal]
    assert len(records) == 6
    for l1 in records:
        for l2 in records:
            for l3 in records:
                left = _then(P, bool3.pairs, _then(P, bool3.pairs, l1, l2), l3)
                right = _then(P, bool3.pairs, l1, _then(P, bool3.pairs, l2, l3))
                if left is None or right is None:
                    assert left is right is None
                    continue
                assert (left.sigma, left.A, left.Q) == (right.sigma, right.A, right.Q)
                assert left.measurement.mapping == right.measurement.mapping


def test_specker_discrepancy_on_bool3_atoms(bool3):
    records = analyze_scheme(bool3.poset, bool3.pairs)
    atoms = records[:3]
    assert not are_compatible(bool3.poset, atoms)
    result = check_specker(bool3.poset, atoms)
    assert result.mode == CheckMode.REPORT
    assert result.witness == ("[{1},{2,3}]", "[{2},{1,3}]", "[{3},{1,2}]")
    assert specker_sweep(bool3.poset, records).witness == result.witness


def test_specker_sweep_is_quiet_on_mo2(mo2):
    assert specker_sweep(mo2.poset, analyze_scheme(mo2.poset, mo2.pairs)).verdict == Verdict.PASS


def test_coherence_descriptions_of_bool3(bool3):
    summary = coherence_descriptions(bool3.poset, analyze_scheme(bool3.poset, bool3.pairs))
    assert summary.maximal == (("[{1},{2,3}]", "[{2},{1,3}]", "[{1,2},{3}]"),
                               ("[{1},{2,3}]", "[{3},{1,2}]", "[{1,3},{2}]"),
                               ("[{2},{1,3}]", "[{3},{1,2}]", "[{2,3},{1}]"))
    checks = {c.axiom_id: c for c in summary.checks}
    assert checks["DownwardClosed"].ok
    assert checks["Singletons"].ok
    assert checks["PairwiseJoinable"].verdict == Verdict.FAIL
    assert checks["PairwiseJoinable"].mode == CheckMode.REPORT


def test_coherence_descriptions_of_nothing(mo2):
    assert coherence_descriptions(mo2.poset, []).maximal == ((),)


def test_description_test(bool3):
    records = analyze_scheme(bool3.poset, bool3.pairs)
    test = description_test(bool3.poset, records[:2])
    assert test.pair == ("{1,2}", "{3}")


def test_perfect_tests(mo2):
    P = mo2.poset
    assert is_perfect(P, property_record(P, "a", "a'", mo2.pairs), mo2.pairs)
    with pytest.raises(MissingConjugateError):
        is_perfect(P, property_record(P, "a"))


@pytest.mark.parametrize("space", [gen_mo(2), gen_mo(3), gen_boolean(2), gen_boolean(3)],
                         ids=["mo2", "mo3", "bool2", "bool3"])
def test_discriminating_tests_are_perfect(space):
    result = conjecture_perfect_sweep(space.poset, space.pairs)
    assert result.verdict == Verdict.PASS
    assert result.mode == CheckMode.REPORT


def test_rho_extraction_matches_retraction(mo2, bool3):
    for space, pair in ((mo2, ("a", "a'")), (bool3, ("{1}", "{2,3}"))):
        record = property_record(space.poset, *pair, space.pairs)
        rho, result = rho_extraction(space.poset, record, record.measurement)
        assert result.ok
        assert rho == {s: retraction_pi(space.poset, record, s) for s in record.Q}


def test_rho_extraction_without_a_meet():
    # p and q have two maximal lower bounds x and y
    P = build_poset(["bot", "x", "y", "p", "q"],
                    [("bot", "x"), ("bot", "y"), ("x", "p"), ("y", "p"), ("x", "q"), ("y", "q")])
    m = MeasurementMap(domain=frozenset({"p", "q"}), mapping={"p": "p", "q": "p"})
    record = PropertyRecord("[p]", "p", None, frozenset({"p"}), frozenset({"p", "q"}),
                            frozenset({"bot", "x", "y", "p"}), {}, m)
    rho, result = rho_extraction(P, record, m)
    assert rho == {"p": "p"}
    assert result.verdict == Verdict.FAIL
    assert result.witness == ("q", "p")


def test_filter_preservation(bool3, mo2):
    record = property_record(bool3.poset, "{1}", "{2,3}", bool3.pairs)
    result = check_filter_preservation(bool3.poset, record)
    assert result.verdict == Verdict.PASS
    assert result.detail == "6 filters"
    record = property_record(mo2.poset, "a", "a'", mo2.pairs)
    assert check_filter_preservation(mo2.poset, record).ok


def test_filter_preservation_catches_a_non_monotone_map(mo2):
    record = property_record(mo2.poset, "a", "a'", mo2.pairs)
    bad = MeasurementMap(domain=record.Q, mapping={"bot": "a", "a": "a", "b": "a", "b'": "bot"})
    result = check_filter_preservation(mo2.poset, replace(record, measurement=bad))
    assert result.verdict == Verdict.FAIL
    assert result.mode == CheckMode.REPORT
    assert result.witness == ("bot",)


def test_property_without_conjugate_has_full_questionable_set():
    space = StateSpace(gen_mo(2).poset)
    record = property_record(space.poset, "a")
    assert record.id == "[a]"
    assert record.Q == set(space.poset.elements)
    assert record.quasi_classical
    assert not record.flags["perfect"]
    assert measure_theta(space.poset, record, "a'") == "a"
