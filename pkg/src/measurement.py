"""
Properties as measurements: consistency domains, Scott ideals, the minimally
disturbing map, succession, compatibility and descriptions
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from config.config import DESCRIPTION_LIMIT, MAP_SEARCH_MAX_STATES, SUBSET_CHECK_CAP
from src.checks import CheckMode, CheckResult, failed, passed
from src.chu_core import GeneralizedTest, Pair, make_generalized_test, pair_name
from src.errors import (AmbiguousJoinError, DomainMismatchError, JoinError, MissingConjugateError,
                        NotQuasiClassicalError, SizeLimitError)
from src.order_core import Poset, bits, is_quasi_consistent

logger = logging.getLogger(__name__)

FLAG_NAMES = ("testable", "quasi_classical", "minimal", "first_kind", "ideal", "perfect")
MAP_FLAGS = ("monotone", "first_kind", "ideal", "minimal")


@dataclass(frozen=True)
class MeasurementMap:
    domain: FrozenSet[str]
    mapping: Dict[str, str] = field(hash=False)

    def __post_init__(self):
        if set(self.mapping) != set(self.domain):
            raise DomainMismatchError("mapping is not defined exactly on its domain")

    def __call__(self, state: str) -> str:
        return self.mapping[state]


@dataclass(frozen=True)
class PropertyRecord:
    id: str
    sigma: str
    sigma_bar: Optional[str]
    A: FrozenSet[str]
    Q: FrozenSet[str]
    K: FrozenSet[str]
    flags: Dict[str, bool] = field(hash=False, compare=False)
    measurement: Optional[MeasurementMap] = field(default=None, hash=False)

    @property
    def quasi_classical(self) -> bool:
        return self.flags.get("quasi_classical", False)

    @property
    def minimal(self) -> bool:
        return self.flags.get("minimal", False)


def _lub(P: Poset, mask: int) -> Optional[int]:
    try:
        return P.lub_mask(mask)
    except AmbiguousJoinError:
        return None


def _down_closure(P: Poset, mask: int) -> int:
    result = 0
    for i in bits(mask):
        result |= P.down[i]
    return result


def consistency_domain(P: Poset, l: PropertyRecord) -> FrozenSet[str]:
    """States consistent with the property being actual"""
    return P.names(_down_closure(P, P.mask_of(l.A)))


def is_scott_ideal(P: Poset, sub: Iterable[str], ambient: Iterable[str]) -> CheckResult:
    """For every s in ambient the states of sub below s have a join inside sub"""
    sub_mask = P.mask_of(sub)
    for s in P.sorted_names(ambient):
        below = P.down[P.idx(s)] & sub_mask
        j = _lub(P, below) if below else P.bottom
        if j is None or not sub_mask >> j & 1:
            return failed("ScottIdeal", (s,), "join of the sub-states below it falls outside")
    return passed("ScottIdeal")


def _require_quasi_classical(l: PropertyRecord) -> None:
    if not l.quasi_classical:
        raise NotQuasiClassicalError(f"property {l.id} is not quasi-classical", witness=(l.sigma,))


def _require_in_domain(l: PropertyRecord, state: str) -> None:
    if state not in l.Q:
        raise DomainMismatchError(f"{state} is not in the measurement domain of {l.id}", witness=(state,))


def retraction_pi(P: Poset, l: PropertyRecord, state: str) -> str:
    _require_quasi_classical(l)
    _require_in_domain(l, state)
    below = P.down[P.idx(state)] & P.mask_of(l.K)
    j = _lub(P, below)
    if j is None:
        raise JoinError(f"no join of the consistency domain below {state}", witness=(state,))
    return P.elements[j]


def measure_theta(P: Poset, l: PropertyRecord, state: str) -> str:
    """Σ ⊔ π(σ)"""
    pi = retraction_pi(P, l, state)
    j = _lub(P, P.mask_of([l.sigma, pi]))
    if j is None:
        raise JoinError(f"{l.sigma} and {pi} have no join", witness=(l.sigma, pi))
    return P.elements[j]


def theta_map(P: Poset, l: PropertyRecord) -> MeasurementMap:
    return MeasurementMap(domain=l.Q, mapping={s: measure_theta(P, l, s) for s in P.sorted_names(l.Q)})


def _is_monotone(P: Poset, m: MeasurementMap) -> bool:
    domain = P.sorted_names(m.domain)
    return all(P.leq(m(x), m(y)) for x in domain for y in domain if P.leq(x, y))


def validate_measurement_map(P: Poset, m: MeasurementMap, l: PropertyRecord,
                             others: Iterable[PropertyRecord] = ()) -> Dict[str, bool]:
    """Flags monotone, first_kind, ideal and minimal for m measuring l"""
    if set(m.domain) != set(l.Q):
        raise DomainMismatchError(f"map domain differs from the questionable set of {l.id}")
    monotone = _is_monotone(P, m)
    first_kind = all(m(s) in l.A for s in m.domain) and all(m(s) == s for s in l.A)
    ideal = True
    for other in others:
        if not l.A & other.A:
            continue
        if any(m(s) not in other.A for s in l.Q & other.A):
            ideal = False
            break
    minimal = first_kind
    if minimal:
        for s in l.K:
            j = _lub(P, P.mask_of([s, l.sigma]))
            if j is None or m(s) != P.elements[j]:
                minimal = False
                break
    return {"monotone": monotone, "first_kind": first_kind, "ideal": ideal, "minimal": minimal}


def _up_mask(P: Poset, name: str) -> int:
    return P.up[P.idx(name)]


def _context_records(P: Poset, context: Sequence[Pair]) -> List[PropertyRecord]:
    """Actuality sets of the pairs the ideal flag quantifies over"""
    return [PropertyRecord(pair_name(p), p[0], p[1], P.names(_up_mask(P, p[0])), frozenset(), frozenset(), {})
            for p in context]


def property_record(P: Poset, sigma: str, sigma_bar: Optional[str] = None,
                    context: Sequence[Pair] = (), with_perfect: bool = True) -> PropertyRecord:
    """
    Record for the generalized test (Σ, Σ'). `context` lists the pairs
    whose actuality sets the ideal flag is checked against.
    """
    a_mask = _up_mask(P, sigma)
    q_mask = P.full & ~_up_mask(P, sigma_bar) if sigma_bar is not None else P.full
    k_mask = _down_closure(P, a_mask)
    A, Q, K = P.names(a_mask), P.names(q_mask), P.names(k_mask)
    flags = {name: False for name in FLAG_NAMES}
    flags["testable"] = True
    flags["quasi_classical"] = K <= Q and is_scott_ideal(P, K, Q).ok
    ident = pair_name((sigma, sigma_bar)) if sigma_bar is not None else f"[{sigma}]"
    record = PropertyRecord(ident, sigma, sigma_bar, A, Q, K, flags)
    if not flags["quasi_classical"]:
        return record

    theta = theta_map(P, record)
    others = _context_records(P, context)
    map_flags = validate_measurement_map(P, theta, record, others)
    flags["first_kind"] = map_flags["first_kind"]
    flags["ideal"] = map_flags["ideal"]
    flags["minimal"] = map_flags["minimal"] and map_flags["monotone"]
    if with_perfect and sigma_bar is not None and flags["minimal"]:
        reverse = property_record(P, sigma_bar, sigma, context, with_perfect=False)
        flags["perfect"] = reverse.minimal
    return PropertyRecord(ident, sigma, sigma_bar, A, Q, K, flags, theta)


def analyze_scheme(P: Poset, pairs: Sequence[Pair]) -> List[PropertyRecord]:
    logger.info(f"Analyzing {len(pairs)} scheme properties")
    return [property_record(P, s, s_bar, pairs) for s, s_bar in pairs]


def _search_minimal_map(P: Poset, l: PropertyRecord) -> Optional[Dict[str, str]]:
    """Backtracking search for a monotone first-kind map agreeing with σ ⊔ Σ on K"""
    if not l.K <= l.Q:
        return None
    forced: Dict[str, str] = {}
    for s in l.K:
        j = _lub(P, P.mask_of([s, l.sigma]))
        if j is None:
            return None
        forced[s] = P.elements[j]
    for s in l.A:
        if forced.get(s, s) != s:
            return None
        forced[s] = s
    free = [s for s in P.sorted_names(l.Q) if s not in forced]
    targets = P.sorted_names(l.A)
    domain = P.sorted_names(l.Q)

    def consistent(assign: Dict[str, str], s: str) -> bool:
        for x in domain:
            if x not in assign:
                continue
            if P.leq(x, s) and not P.leq(assign[x], assign[s]):
                return False
            if P.leq(s, x) and not P.leq(assign[s], assign[x]):
                return False
        return True

    assign = dict(forced)
    for s in P.sorted_names(forced):
        if not consistent(assign, s):
            return None

    def extend(k: int) -> bool:
        if k == len(free):
            return True
        s = free[k]
        for t in targets:
            assign[s] = t
            if consistent(assign, s) and extend(k + 1):
                return True
        del assign[s]
        return False

    return dict(assign) if extend(0) else None


def theorem_min_eq_qcl(P: Poset, l: PropertyRecord, context: Sequence[Pair] = ()) -> CheckResult:
    """A minimally disturbing map exists exactly when the property is quasi-classical"""
    name = "MinimalIffQuasiClassical"
    if l.quasi_classical:
        theta = l.measurement or theta_map(P, l)
        others = _context_records(P, context)
        flags = validate_measurement_map(P, theta, l, others)
        bad = [f for f in MAP_FLAGS if not flags[f]]
        if bad:
            return failed(name, (l.sigma,), f"constructed map lacks {', '.join(bad)}")
        return passed(name)
    if len(P) > MAP_SEARCH_MAX_STATES:
        return passed(name, "criterion-only")
    found = _search_minimal_map(P, l)
    if found is not None:
        return failed(name, (l.sigma,), "a minimal map exists for a non-quasi-classical property")
    return passed(name, "no minimal map found by exhaustive search")


def succession(P: Poset, l1: PropertyRecord, l2: PropertyRecord,
               context: Sequence[Pair] = ()) -> Optional[PropertyRecord]:
    """l1 followed by l2; None when the two are incompatible"""
    for l in (l1, l2):
        if l.measurement is None:
            raise NotQuasiClassicalError(f"property {l.id} has no measurement map", witness=(l.sigma,))
    a_mask = P.mask_of(l1.A & l2.A)
    if not a_mask:
        return None
    j = _lub(P, P.mask_of([l1.sigma, l2.sigma]))
    if j is None:
        raise JoinError(f"{l1.sigma} and {l2.sigma} have no join", witness=(l1.sigma, l2.sigma))
    sigma = P.elements[j]
    Q = frozenset(s for s in l1.Q if l1.measurement(s) in l2.Q)
    mapping = {s: l2.measurement(l1.measurement(s)) for s in P.sorted_names(Q)}
    A = P.names(a_mask)
    K = P.names(_down_closure(P, a_mask))
    flags = {name: False for name in FLAG_NAMES}
    flags["testable"] = True
    flags["quasi_classical"] = K <= Q and is_scott_ideal(P, K, Q).ok
    record = PropertyRecord(f"{l1.id}.{l2.id}", sigma, None, A, Q, K, flags,
                            MeasurementMap(domain=Q, mapping=mapping))
    others = _context_records(P, context)
    map_flags = validate_measurement_map(P, record.measurement, record, others)
    flags["first_kind"] = map_flags["first_kind"]
    flags["ideal"] = map_flags["ideal"]
    flags["minimal"] = map_flags["minimal"] and map_flags["monotone"]
    return record


def are_compatible(P: Poset, props: Iterable[PropertyRecord]) -> bool:
    common = None
    for l in props:
        common = l.A if common is None else common & l.A
    return common is None or bool(common)


def _pairwise_compatible(P: Poset, props: Sequence[PropertyRecord]) -> bool:
    return all(l1.A & l2.A for l1, l2 in combinations(props, 2))


def check_specker(P: Poset, props: Iterable[PropertyRecord]) -> CheckResult:
    props = list(props)
    pairwise = _pairwise_compatible(P, props)
    joint = are_compatible(P, props)
    if pairwise != joint:
        ids = tuple(l.id for l in props)
        logger.warning(f"Specker discrepancy on {ids}: pairwise={pairwise}, joint={joint}")
        return failed("Specker", ids, f"pairwise compatible={pairwise}, jointly compatible={joint}",
                      mode=CheckMode.REPORT)
    return passed("Specker", mode=CheckMode.REPORT)


def specker_sweep(P: Poset, props: Sequence[PropertyRecord]) -> CheckResult:
    """Specker check on every subfamily of size 3 up to the subset cap"""
    for size in range(3, SUBSET_CHECK_CAP + 1):
        for family in combinations(props, size):
            result = check_specker(P, family)
            if not result.ok:
                return result
    return passed("Specker", f"{len(props)} properties swept", mode=CheckMode.REPORT)


@dataclass(frozen=True)
class DescriptionSummary:
    maximal: Tuple[Tuple[str, ...], ...]
    checks: Tuple[CheckResult, ...]


def coherence_descriptions(P: Poset, props: Sequence[PropertyRecord]) -> DescriptionSummary:
    """
    Maximal jointly compatible families, with the coherence-domain closure
    checks. A family is compatible iff some state lies in every actuality
    set, so the maximal ones are the maximal state-wise families.
    """
    if len(props) > DESCRIPTION_LIMIT:
        raise SizeLimitError(f"{len(props)} properties exceeds the description limit {DESCRIPTION_LIMIT}")
    ids = [l.id for l in props]
    if not props:
        return DescriptionSummary(maximal=((),), checks=(passed("DownwardClosed"), passed("Singletons"),
                                                         passed("PairwiseJoinable", mode=CheckMode.REPORT)))
    families = set()
    for s in P.elements:
        family = frozenset(l.id for l in props if s in l.A)
        if family:
            families.add(family)
    maximal = [f for f in families if not any(f < g for g in families)]
    order = {name: k for k, name in enumerate(ids)}
    maximal_sorted = sorted((tuple(sorted(f, key=order.get)) for f in maximal),
                            key=lambda t: [order[x] for x in t])
    by_id = {l.id: l for l in props}

    checks = []
    downward = passed("DownwardClosed")
    for family in maximal_sorted:
        for k in range(len(family)):
            rest = [by_id[x] for j, x in enumerate(family) if j != k]
            if not are_compatible(P, rest):
                downward = failed("DownwardClosed", family, "a subfamily is not compatible")
                break
    checks.append(downward)

    singles = passed("Singletons")
    for l in props:
        if not any(l.id in f for f in maximal):
            singles = failed("Singletons", (l.id,), "property lies in no description")
            break
    checks.append(singles)

    web = nx.Graph()
    web.add_nodes_from(ids)
    web.add_edges_from((l1.id, l2.id) for l1, l2 in combinations(props, 2) if l1.A & l2.A)
    joinable = passed("PairwiseJoinable", mode=CheckMode.REPORT)
    cliques = sorted((tuple(sorted(c, key=order.get)) for c in nx.find_cliques(web)),
                     key=lambda t: [order[x] for x in t])
    for clique in cliques:
        if not are_compatible(P, [by_id[x] for x in clique]):
            logger.warning(f"Pairwise compatible family {clique} is not jointly compatible")
            joinable = failed("PairwiseJoinable", clique, "pairwise compatible but not a description",
                              mode=CheckMode.REPORT)
            break
    checks.append(joinable)
    return DescriptionSummary(maximal=tuple(maximal_sorted), checks=tuple(checks))


def description_test(P: Poset, D: Iterable[PropertyRecord]) -> Optional[GeneralizedTest]:
    """Conjoint test (⊔Σ, ⊓Σ'); None when that pair is consistent"""
    D = list(D)
    missing = [l.id for l in D if l.sigma_bar is None]
    if missing:
        raise MissingConjugateError(f"no conjugate for {missing[0]}", witness=tuple(missing))
    if not D:
        return None
    j = _lub(P, P.mask_of(l.sigma for l in D))
    m = P.glb_mask(P.mask_of(l.sigma_bar for l in D))
    if j is None or m is None:
        return None
    if P.up[j] & P.up[m]:
        return None
    return make_generalized_test(P, P.elements[j], P.elements[m])


def is_perfect(P: Poset, l: PropertyRecord, context: Sequence[Pair] = ()) -> bool:
    if l.sigma_bar is None:
        raise MissingConjugateError(f"property {l.id} has no conjugate", witness=(l.sigma,))
    if not l.minimal:
        return False
    return property_record(P, l.sigma_bar, l.sigma, context, with_perfect=False).minimal


def conjecture_perfect_sweep(P: Poset, context: Sequence[Pair] = ()) -> CheckResult:
    """Every discriminating pair of states is a perfect test"""
    name = "DiscriminatingIsPerfect"
    count = 0
    for s in P.elements:
        for s_bar in P.elements:
            if s == P.elements[P.bottom] or s_bar == P.elements[P.bottom]:
                continue
            if _up_mask(P, s) & _up_mask(P, s_bar) or not is_quasi_consistent(P, s, s_bar):
                continue
            count += 1
            record = property_record(P, s, s_bar, context)
            if not is_perfect(P, record, context):
                logger.warning(f"Discriminating pair ({s}, {s_bar}) is not perfect")
                return failed(name, (s, s_bar), "discriminating test is not perfect", mode=CheckMode.REPORT)
    return passed(name, f"{count} discriminating pairs", mode=CheckMode.REPORT)


def rho_extraction(P: Poset, l: PropertyRecord, m: MeasurementMap) -> Tuple[Dict[str, str], CheckResult]:
    """σ ↦ σ ⊓ m(σ), checked to be a retraction onto K that equals π"""
    name = "RhoRetraction"
    rho = {}
    for s in P.sorted_names(m.domain):
        g = P.glb_mask(P.mask_of([s, m(s)]))
        if g is None:
            return rho, failed(name, (s, m(s)), "state and its image have no meet")
        rho[s] = P.elements[g]
    for s, r in rho.items():
        if r not in l.K or (s in l.K and r != s):
            return rho, failed(name, (s,), "not a retraction onto the consistency domain")
        if l.quasi_classical and r != retraction_pi(P, l, s):
            return rho, failed(name, (s,), "differs from the retraction π")
    return rho, passed(name)


def check_filter_preservation(P: Poset, l: PropertyRecord) -> CheckResult:
    """
    Θ(⊓F) = ⊓Θ(F) for every filter F of Q. A finite filter is ↑x ∩ Q for its
    least member x, so one filter per state of Q is scanned.
    """
    name = "FilterPreservation"
    if not l.quasi_classical:
        return passed(name, "not quasi-classical", mode=CheckMode.REPORT)
    theta = l.measurement or theta_map(P, l)
    domain = P.sorted_names(l.Q)
    for x in domain:
        members = [y for y in domain if P.leq(x, y)]
        image_meet = P.glb_mask(P.mask_of([theta(y) for y in members]))
        if image_meet is None or P.elements[image_meet] != theta(x):
            return failed(name, (x,), "meet of images differs", mode=CheckMode.REPORT)
    return passed(name, f"{len(domain)} filters", mode=CheckMode.REPORT)


def check_theta_laws(P: Poset, l: PropertyRecord) -> CheckResult:
    """Idempotent, monotone, image and fixed points both equal to A"""
    name = "ThetaLaws"
    _require_quasi_classical(l)
    theta = l.measurement or theta_map(P, l)
    for s in P.sorted_names(l.Q):
        if theta(s) not in l.Q or theta(theta(s)) != theta(s):
            return failed(name, (s,), "not idempotent")
    if not _is_monotone(P, theta):
        return failed(name, (l.sigma,), "not monotone")
    image = frozenset(theta.mapping.values())
    fixed = frozenset(s for s in l.Q if theta(s) == s)
    if image != l.A or fixed != l.A:
        return failed(name, (l.sigma,), "image or fixed points differ from the actuality set")
    return passed(name)
