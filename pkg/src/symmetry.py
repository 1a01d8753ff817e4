"""
Dictionaries between state spaces: Chu morphisms, symmetries, the lower
adjoint and the maps they induce on closed-set lattices
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from src.checks import CheckResult, failed, passed
from src.chu_core import ChuSpace, Pair, StateChu, TruthValue, evaluate_pair, pair_name, quotient, saturate
from src.errors import (AdjunctionError, EmptyFilterError, EmptyPerpError, NotOrthocomplementError,
                        PartialityMismatchError, QChuError, SpaceMismatchError)
from src.measurement import PropertyRecord, analyze_scheme, property_record, succession
from src.ortho_hilbert import StateSpace, build_closed_set_lattice, orthogonal, star_of
from src.order_core import Poset, bits, underline_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dictionary:
    """
    `f_states` sends source states to target states; `f_tests` sends target
    scheme pairs back to source scheme pairs.
    """
    source: StateSpace
    target: StateSpace
    f_states: Dict[str, str] = field(hash=False)
    f_tests: Dict[Pair, Pair] = field(hash=False)

    def __post_init__(self):
        missing = [s for s in self.source.poset.elements if s not in self.f_states]
        if missing:
            raise ValueError(f"state map undefined at {missing[0]}")
        for s, t in self.f_states.items():
            if t not in self.target.poset.index:
                raise ValueError(f"{s} is sent to unknown state {t}")


def require_schemes(D: Dictionary) -> None:
    for side, space in (("source", D.source), ("target", D.target)):
        if space.scheme is None:
            raise NotOrthocomplementError(f"{side} state space has no scheme or star")


def check_chu_morphism(D: Dictionary) -> CheckResult:
    """ẽ_t(f(σ)) = ẽ_f(t)(σ) for every source state and target pair"""
    Ps, Pt = D.source.poset, D.target.poset
    for t in D.target.pairs:
        if t not in D.f_tests:
            return failed("ChuMorphism", (pair_name(t),), "target pair has no image")
    for sigma in Ps.elements:
        for t in D.target.pairs:
            if evaluate_pair(Pt, t, D.f_states[sigma]) != evaluate_pair(Ps, D.f_tests[t], sigma):
                return failed("ChuMorphism", (sigma, pair_name(t)), "the two sides disagree")
    return passed("ChuMorphism")


def _records_by_pair(space: StateSpace) -> Dict[Pair, PropertyRecord]:
    return {(r.sigma, r.sigma_bar): r for r in analyze_scheme(space.poset, space.pairs)}


def _source_record(D: Dictionary, records: Dict[Pair, PropertyRecord], pair: Pair) -> PropertyRecord:
    if pair not in records:
        records[pair] = property_record(D.source.poset, pair[0], pair[1], D.source.pairs)
    return records[pair]


def _transport_measurement(D: Dictionary, ls: PropertyRecord, lt: PropertyRecord) -> Optional[str]:
    """
    First source state where f(σ)·t differs from f(σ·f(t)); raises when the
    two measurement domains do not correspond under f.
    """
    for sigma in D.source.poset.elements:
        in_source = sigma in ls.Q
        in_target = D.f_states[sigma] in lt.Q
        if in_source != in_target:
            raise PartialityMismatchError(f"{sigma} is measurable on one side only", witness=(sigma,))
        if not in_source:
            continue
        if lt.measurement(D.f_states[sigma]) != D.f_states[ls.measurement(sigma)]:
            return sigma
    return None


def _check_centerdot(D: Dictionary, source_records, target_records) -> CheckResult:
    for t in D.target.pairs:
        if t not in D.f_tests:
            continue
        lt = target_records[t]
        ls = _source_record(D, source_records, D.f_tests[t])
        if lt.minimal != ls.minimal:
            return failed("Centerdot", (pair_name(t),), "minimally disturbing on one side only")
        if not lt.minimal:
            continue
        try:
            bad = _transport_measurement(D, ls, lt)
        except PartialityMismatchError as e:
            return failed("Centerdot", (pair_name(t),) + e.witness, str(e))
        if bad is not None:
            return failed("Centerdot", (pair_name(t), bad), "measurement does not commute with the state map")
    return passed("Centerdot")


def _check_succession(D: Dictionary, source_records, target_records) -> CheckResult:
    Ps, Pt = D.source.poset, D.target.poset
    mapped = [t for t in D.target.pairs if t in D.f_tests and target_records[t].minimal]
    for t1, t2 in product(mapped, repeat=2):
        ls1 = _source_record(D, source_records, D.f_tests[t1])
        ls2 = _source_record(D, source_records, D.f_tests[t2])
        if not (ls1.minimal and ls2.minimal):
            continue
        st = succession(Pt, target_records[t1], target_records[t2])
        ss = succession(Ps, ls1, ls2)
        if (st is None) != (ss is None):
            return failed("Succession", (pair_name(t1), pair_name(t2)), "succession defined on one side only")
        if st is None:
            continue
        try:
            bad = _transport_measurement(D, ss, st)
        except PartialityMismatchError as e:
            return failed("Succession", (pair_name(t1), pair_name(t2)) + e.witness, str(e))
        if bad is not None:
            return failed("Succession", (pair_name(t1), pair_name(t2), bad), "succession is not transported")
    return passed("Succession")


def _check_injectivity(D: Dictionary) -> CheckResult:
    seen: Dict[str, str] = {}
    for sigma in D.source.poset.elements:
        image = D.f_states[sigma]
        if image in seen:
            return failed("Injectivity", (seen[image], sigma), "two states share an image")
        seen[image] = sigma
    return passed("Injectivity")


def _check_surjectivity(D: Dictionary) -> CheckResult:
    hit = set(D.f_tests.values())
    for pair in D.source.pairs:
        if pair not in hit:
            return failed("Surjectivity", (pair_name(pair),), "source pair is not the image of any target pair")
    return passed("Surjectivity")


def _check_scheme_preservation(D: Dictionary) -> CheckResult:
    source_pairs = set(D.source.pairs)
    for t in D.target.pairs:
        if t not in D.f_tests:
            return failed("SchemePreservation", (pair_name(t),), "target pair has no image")
        if D.f_tests[t] not in source_pairs:
            return failed("SchemePreservation", (pair_name(t), pair_name(D.f_tests[t])),
                          "image is not a source scheme pair")
    return passed("SchemePreservation")


def check_symmetry(D: Dictionary) -> List[CheckResult]:
    logger.info("Checking symmetry conditions")
    source_records = _records_by_pair(D.source)
    target_records = _records_by_pair(D.target)
    return [
        _check_centerdot(D, source_records, target_records),
        _check_succession(D, source_records, target_records),
        _check_injectivity(D),
        _check_surjectivity(D),
        _check_scheme_preservation(D),
    ]


def compose(D1: Dictionary, D2: Dictionary) -> Dictionary:
    """D1 followed by D2"""
    if D1.target.poset != D2.source.poset or set(D1.target.pairs) != set(D2.source.pairs):
        raise SpaceMismatchError("target of the first dictionary is not the source of the second")
    f_states = {s: D2.f_states[D1.f_states[s]] for s in D1.source.poset.elements}
    f_tests = {t: D1.f_tests[D2.f_tests[t]] for t in D2.target.pairs
               if t in D2.f_tests and D2.f_tests[t] in D1.f_tests}
    return Dictionary(D1.source, D2.target, f_states, f_tests)


def inverse(D: Dictionary) -> Dictionary:
    if len(set(D.f_states.values())) != len(D.target.poset) or len(D.f_states) != len(D.target.poset):
        raise SpaceMismatchError("state map is not a bijection")
    f_states = {t: s for s, t in D.f_states.items()}
    f_tests = {s: t for t, s in D.f_tests.items()}
    if len(f_tests) != len(D.f_tests):
        raise SpaceMismatchError("test map is not injective")
    return Dictionary(D.target, D.source, f_states, f_tests)


def identity_dictionary(space: StateSpace) -> Dictionary:
    return Dictionary(space, space, {s: s for s in space.poset.elements}, {p: p for p in space.pairs})


def _target_star(D: Dictionary, state: str) -> str:
    if D.target.scheme.star and state in D.target.scheme.star:
        return D.target.scheme.star[state]
    return star_of(D.target.poset, D.target.scheme, state)


def lower_adjoint(D: Dictionary, sigma: str) -> str:
    """Meet of the source states where the pulled-back test (Σ, Σ*) answers yes"""
    Ps, Pt = D.source.poset, D.target.poset
    if Pt.idx(sigma) == Pt.bottom:
        result = Ps.elements[Ps.bottom]
    else:
        pair = (sigma, _target_star(D, sigma))
        if pair not in D.f_tests:
            raise EmptyFilterError(f"no source test for {pair_name(pair)}", witness=(sigma,))
        source_pair = D.f_tests[pair]
        yes = [s for s in Ps.elements if evaluate_pair(Ps, source_pair, s) is TruthValue.YES]
        if not yes:
            raise EmptyFilterError(f"pulled-back test of {sigma} never answers yes", witness=(sigma,))
        g = Ps.glb_mask(Ps.mask_of(yes))
        result = Ps.elements[g]
    for other in Ps.elements:
        if Ps.leq(result, other) != Pt.leq(sigma, D.f_states[other]):
            raise AdjunctionError(f"Galois law fails for {sigma} at {other}", witness=(sigma, other))
    return result


def check_preservation(D: Dictionary) -> List[CheckResult]:
    require_schemes(D)
    Ps = D.source.poset
    source_records = _records_by_pair(D.source)
    target_records = _records_by_pair(D.target)

    minimal = passed("MinimalPullback")
    for t in D.target.pairs:
        if t in D.f_tests and target_records[t].minimal:
            if not _source_record(D, source_records, D.f_tests[t]).minimal:
                minimal = failed("MinimalPullback", (pair_name(t),), "pulled-back test is not minimally disturbing")
                break

    conjugation = passed("Conjugation")
    for t in D.target.pairs:
        t_bar = (t[1], t[0])
        if t in D.f_tests and t_bar in D.f_tests:
            image = D.f_tests[t]
            if D.f_tests[t_bar] != (image[1], image[0]):
                conjugation = failed("Conjugation", (pair_name(t),), "test map does not commute with conjugation")
                break
    if conjugation.ok and D.source.scheme and D.target.scheme:
        for i in range(len(Ps)):
            sigma = Ps.elements[i]
            image = D.f_states[sigma]
            if i == Ps.bottom or D.target.poset.idx(image) == D.target.poset.bottom:
                continue
            try:
                s_star = star_of(Ps, D.source.scheme, sigma)
                t_star = _target_star(D, image)
            except QChuError as e:
                conjugation = failed("Conjugation", (sigma,), str(e))
                break
            if D.f_states[s_star] != t_star:
                conjugation = failed("Conjugation", (sigma,), "state map does not commute with star")
                break

    ortho = _orthogonality_forward(D)
    if ortho.ok:
        try:
            reverse = _orthogonality_forward(inverse(D))
        except SpaceMismatchError:
            reverse = passed("Orthogonality", "reverse direction skipped: dictionary is not invertible")
        if not reverse.ok:
            ortho = failed("Orthogonality", reverse.witness, "reverse preservation fails")
        elif reverse.detail:
            ortho = reverse
    return [minimal, conjugation, ortho]


def _orthogonality_forward(D: Dictionary) -> CheckResult:
    Ps, Pt = D.source.poset, D.target.poset
    for i in range(len(Ps)):
        for j in range(len(Ps)):
            if Ps.bottom in (i, j):
                continue
            s1, s2 = Ps.elements[i], Ps.elements[j]
            if not orthogonal(Ps, D.source.scheme, s1, s2):
                continue
            if not orthogonal(Pt, D.target.scheme, D.f_states[s1], D.f_states[s2]):
                return failed("Orthogonality", (s1, s2), "orthogonality is not preserved")
    return passed("Orthogonality")


@dataclass(frozen=True)
class InducedMap:
    mapping: Dict[FrozenSet[str], FrozenSet[str]] = field(hash=False)
    right_adjoint: Dict[FrozenSet[str], FrozenSet[str]] = field(hash=False)
    checks: Tuple[CheckResult, ...] = ()


def induced_lattice_map(D: Dictionary) -> InducedMap:
    """Closed-set map c ↦ ⋁ f(σ), its right adjoint, and the ortho-morphism checks"""
    require_schemes(D)
    Ps, Pt = D.source.poset, D.target.poset
    L1 = build_closed_set_lattice(Ps, D.source.scheme)
    L2 = build_closed_set_lattice(Pt, D.target.scheme)

    mapping = {}
    for c in L1.closed_sets:
        images = set()
        for s in c:
            images |= underline_of(Pt, [D.f_states[s]])
        mapping[c] = L2.closure(images)

    def phi_source(state: str) -> FrozenSet[str]:
        return frozenset(underline_of(Ps, [state]))

    right = {}
    adjunction = passed("InducedAdjunction")
    for d in L2.closed_sets:
        if not d:
            right[d] = frozenset()
            continue
        meet = Pt.elements[Pt.glb_mask(Pt.mask_of(d))]
        try:
            right[d] = phi_source(lower_adjoint(D, meet))
        except (AdjunctionError, EmptyFilterError, EmptyPerpError) as e:
            logger.warning(f"No right adjoint at {L2.label(d)}: {e}")
            adjunction = failed("InducedAdjunction", e.witness or (L2.label(d),), str(e))
            break

    checks = []
    values = list(mapping.values())
    checks.append(passed("InducedInjective") if len(set(values)) == len(values)
                  else failed("InducedInjective", _first_collision(L1, mapping), "two closed sets share an image"))

    joins = passed("InducedJoins")
    for X in L1.closed_sets:
        for Y in L1.closed_sets:
            if mapping.get(L1.join(X, Y)) != L2.join(mapping[X], mapping[Y]):
                joins = failed("InducedJoins", (L1.label(X), L1.label(Y)), "join is not preserved")
                break
        if not joins.ok:
            break
    checks.append(joins)

    atoms = passed("InducedAtoms")
    for a in L1.atoms:
        if len(mapping[a]) != 1:
            atoms = failed("InducedAtoms", (L1.label(a),), "atom is not sent to an atom")
            break
    checks.append(atoms)

    ortho = passed("InducedOrtho")
    for c in L1.closed_sets:
        if mapping[L1.ortho[c]] != L2.ortho[mapping[c]]:
            ortho = failed("InducedOrtho", (L1.label(c),), "orthocomplement is not preserved")
            break
    checks.append(ortho)

    if adjunction.ok:
        adjunction = _check_adjunction(L1, L2, mapping, right)
    checks.append(adjunction)
    return InducedMap(mapping=mapping, right_adjoint=right, checks=tuple(checks))


def _check_adjunction(L1, L2, mapping, right) -> CheckResult:
    for c in L1.closed_sets:
        for d in L2.closed_sets:
            if (mapping[c] <= d) != (c <= right[d]):
                return failed("InducedAdjunction", (L1.label(c), L2.label(d)), "Galois adjunction fails")
    return passed("InducedAdjunction")


def _first_collision(L, mapping) -> Tuple[str, ...]:
    seen = {}
    for c in L.closed_sets:
        image = mapping[c]
        if image in seen:
            return (L.label(seen[image]), L.label(c))
        seen[image] = c
    return ()


def dictionary_from_state_map(source: StateSpace, target: StateSpace, f: Mapping[str, str]) -> Dictionary:
    """Dictionary of a bijective state map; tests are pulled back through its inverse"""
    back = {t: s for s, t in f.items()}
    if len(back) != len(f):
        raise SpaceMismatchError("state map is not injective")
    f_tests = {}
    for s, s_bar in target.pairs:
        if s in back and s_bar in back:
            f_tests[(s, s_bar)] = (back[s], back[s_bar])
    return Dictionary(source, target, dict(f), f_tests)


def _cover_graph(P: Poset) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(P.elements)
    for i in range(len(P)):
        for j in bits(P.cover_masks[i]):
            graph.add_edge(P.elements[i], P.elements[j])
    return graph


def automorphisms(space: StateSpace) -> List[Dictionary]:
    """Order automorphisms that map scheme pairs onto scheme pairs"""
    P = space.poset
    graph = _cover_graph(P)
    pairs = set(space.pairs)
    found = []
    for iso in DiGraphMatcher(graph, graph).isomorphisms_iter():
        if {(iso[s], iso[b]) for s, b in pairs} != pairs:
            continue
        found.append(dict(iso))
    found.sort(key=lambda f: [P.idx(f[s]) for s in P.elements])
    logger.info(f"Found {len(found)} scheme-preserving automorphisms")
    return [dictionary_from_state_map(space, space, f) for f in found]


@dataclass(frozen=True)
class RawDictionary:
    """From a raw Chu space to its quotient: preparations to states, tests to themselves"""
    source: ChuSpace
    target: StateChu
    f_preps: Dict[str, str] = field(hash=False)
    f_tests: Dict[str, str] = field(hash=False)


def quotient_dictionary(C: ChuSpace) -> RawDictionary:
    S = quotient(saturate(C))
    by_row = {row: state for state, row in zip(S.states.elements, S.eval)}
    f_preps = {p: by_row[row] for p, row in zip(C.preparations, C.eval)}
    return RawDictionary(C, S, f_preps, {t: t for t in C.tests})


def check_raw_chu_morphism(R: RawDictionary) -> CheckResult:
    for p in R.source.preparations:
        for t in R.source.tests:
            if R.source.value(p, t) != R.target.value(R.f_preps[p], R.f_tests[t]):
                return failed("ChuMorphism", (p, t), "raw and quotient evaluations disagree")
    return passed("ChuMorphism")
