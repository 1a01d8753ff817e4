"""
Three-valued Chu spaces, their state quotients and property-states
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from config.config import SATURATE_LIMIT
from src.checks import CheckResult, failed, passed
from src.errors import ConsistentPairError, NoBottomRowError, NotPrincipalError, SizeLimitError
from src.order_core import Poset, bits, build_poset

logger = logging.getLogger(__name__)


class TruthValue(str, Enum):
    """Flat boolean domain: BOTTOM below both YES and NO"""
    BOTTOM = "_"
    YES = "Y"
    NO = "N"

    def leq(self, other: "TruthValue") -> bool:
        return self is TruthValue.BOTTOM or self is other

    def meet(self, other: "TruthValue") -> "TruthValue":
        return self if self is other else TruthValue.BOTTOM

    def bar(self) -> "TruthValue":
        if self is TruthValue.YES:
            return TruthValue.NO
        if self is TruthValue.NO:
            return TruthValue.YES
        return TruthValue.BOTTOM


Row = Tuple[TruthValue, ...]


def row_code(row: Sequence[TruthValue]) -> str:
    return "".join(v.value for v in row)


def parse_row(code: str) -> Row:
    return tuple(TruthValue(c) for c in code)


def row_leq(r1: Row, r2: Row) -> bool:
    return all(a.leq(b) for a, b in zip(r1, r2))


def row_meet(r1: Row, r2: Row) -> Row:
    return tuple(a.meet(b) for a, b in zip(r1, r2))


@dataclass(frozen=True)
class ChuSpace:
    preparations: Tuple[str, ...]
    tests: Tuple[str, ...]
    eval: Tuple[Row, ...]

    def __post_init__(self):
        if len(self.eval) != len(self.preparations):
            raise ValueError(f"{len(self.eval)} rows for {len(self.preparations)} preparations")
        for p, row in zip(self.preparations, self.eval):
            if len(row) != len(self.tests):
                raise ValueError(f"row {p!r} has {len(row)} cells for {len(self.tests)} tests")
        if len(set(self.preparations)) != len(self.preparations):
            raise ValueError("duplicate preparation identifiers")
        if len(set(self.tests)) != len(self.tests):
            raise ValueError("duplicate test identifiers")

    def row(self, p: str) -> Row:
        return self.eval[self.preparations.index(p)]

    def column(self, t: str) -> Row:
        j = self.tests.index(t)
        return tuple(row[j] for row in self.eval)

    def value(self, p: str, t: str) -> TruthValue:
        return self.row(p)[self.tests.index(t)]


def conjugate_test(C: ChuSpace, t: str) -> Tuple[ChuSpace, str]:
    """
    Test whose column is the bar of t's column. Returns the (possibly
    extended) space and the conjugate test's identifier.
    """
    target = tuple(v.bar() for v in C.column(t))
    for other in C.tests:
        if C.column(other) == target:
            return C, other
    name = f"~{t}"
    while name in C.tests:
        name = f"~{name}"
    rows = tuple(row + (v,) for row, v in zip(C.eval, target))
    return ChuSpace(C.preparations, C.tests + (name,), rows), name


def missing_conjugates(C: ChuSpace) -> List[str]:
    columns = {C.column(t) for t in C.tests}
    return [t for t in C.tests if tuple(v.bar() for v in C.column(t)) not in columns]


def mix(C: ChuSpace, preps: Iterable[str]) -> Row:
    preps = list(preps)
    if not preps:
        raise ValueError("mixture of no preparations")
    result = C.row(preps[0])
    for p in preps[1:]:
        result = row_meet(result, C.row(p))
    return result


def saturate(C: ChuSpace, limit: int = SATURATE_LIMIT) -> ChuSpace:
    """Close the rows under pointwise meets and add the all-indeterminate row"""
    known = set(C.eval)
    frontier = list(dict.fromkeys(C.eval))
    rows = list(frontier)
    bottom = tuple(TruthValue.BOTTOM for _ in C.tests)
    added = []
    if bottom not in known:
        known.add(bottom)
        added.append(bottom)
    while frontier:
        fresh = []
        for r1 in frontier:
            for r2 in rows:
                m = row_meet(r1, r2)
                if m not in known:
                    known.add(m)
                    fresh.append(m)
                    added.append(m)
                    if len(known) > limit:
                        raise SizeLimitError(f"saturation exceeds {limit} rows")
        rows.extend(fresh)
        frontier = fresh
    if not added:
        return C
    added.sort(key=row_code)
    names = []
    for row in added:
        name = f"mix:{row_code(row)}"
        while name in C.preparations or name in names:
            name = f"{name}'"
        names.append(name)
    logger.debug(f"Saturation added {len(added)} rows")
    return ChuSpace(C.preparations + tuple(names), C.tests, C.eval + tuple(added))


@dataclass(frozen=True)
class StateChu:
    """Separated Chu space of states; eval rows follow the poset's element order"""
    states: Poset
    tests: Tuple[str, ...]
    eval: Tuple[Row, ...]
    rep: Dict[str, str] = field(hash=False)

    def row(self, state: str) -> Row:
        return self.eval[self.states.idx(state)]

    def column(self, t: str) -> Row:
        j = self.tests.index(t)
        return tuple(row[j] for row in self.eval)

    def value(self, state: str, t: str) -> TruthValue:
        return self.row(state)[self.tests.index(t)]


def quotient(C: ChuSpace) -> StateChu:
    distinct: Dict[Row, str] = {}
    for p, row in zip(C.preparations, C.eval):
        distinct.setdefault(row, p)
    bottom = tuple(TruthValue.BOTTOM for _ in C.tests)
    if bottom not in distinct:
        raise NoBottomRowError("no all-indeterminate row; saturate the space first")
    rows = list(distinct)
    names = [distinct[r] for r in rows]
    pairs = [(names[i], names[j]) for i in range(len(rows)) for j in range(len(rows))
             if i != j and row_leq(rows[i], rows[j])]
    poset = build_poset(names, pairs)
    logger.info(f"Quotient: {len(C.preparations)} preparations -> {len(names)} states")
    return StateChu(states=poset, tests=C.tests, eval=tuple(rows), rep={n: n for n in names})


def property_quotient(C: ChuSpace) -> List[Tuple[str, ...]]:
    classes: Dict[Row, List[str]] = {}
    for t in C.tests:
        classes.setdefault(C.column(t), []).append(t)
    return [tuple(members) for members in classes.values()]


def actual_and_questionable(S: StateChu, t: str) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    column = S.column(t)
    names = S.states.elements
    actual = frozenset(s for s, v in zip(names, column) if v is TruthValue.YES)
    questionable = frozenset(s for s, v in zip(names, column) if v is not TruthValue.NO)
    return actual, questionable


def _principal_minimum(P: Poset, mask: int, label: str) -> Optional[str]:
    if not mask:
        return None
    g = P.glb_mask(mask)
    if g is None or not mask >> g & 1 or P.up[g] != mask:
        raise NotPrincipalError(f"actuality set of {label} is not a principal filter",
                                witness=tuple(P.sorted_names(P.names(mask))))
    return P.elements[g]


def property_state(S: StateChu, t: str) -> Optional[str]:
    actual, _ = actual_and_questionable(S, t)
    return _principal_minimum(S.states, S.states.mask_of(actual), t)


def _first_duplicate(items: Iterable[Tuple[str, Row]]) -> Optional[Tuple[str, str]]:
    seen: Dict[Row, str] = {}
    for name, row in items:
        if row in seen:
            return seen[row], name
        seen[row] = name
    return None


def check_biextensional(S: StateChu, test_subset: Optional[Iterable[str]] = None) -> CheckResult:
    axiom = "BiExtensional"
    rows = _first_duplicate(zip(S.states.elements, S.eval))
    if rows:
        return failed(axiom, rows, "states with identical rows")
    tests = list(S.tests if test_subset is None else test_subset)
    columns = _first_duplicate((t, S.column(t)) for t in tests)
    if columns:
        return failed(axiom, columns, "tests with identical columns")
    return passed(axiom)


# Generalized tests as (Σ, Σ') pairs

Pair = Tuple[str, str]


def pair_name(pair: Pair) -> str:
    return f"[{pair[0]},{pair[1]}]"


def evaluate_pair(P: Poset, pair: Pair, state: str) -> TruthValue:
    """Yes above Σ, No above Σ', indeterminate elsewhere"""
    if P.leq(pair[0], state):
        return TruthValue.YES
    if P.leq(pair[1], state):
        return TruthValue.NO
    return TruthValue.BOTTOM


@dataclass(frozen=True)
class GeneralizedTest:
    sigma: str
    sigma_bar: str

    @property
    def pair(self) -> Pair:
        return (self.sigma, self.sigma_bar)

    @property
    def name(self) -> str:
        return pair_name(self.pair)

    def value(self, P: Poset, state: str) -> TruthValue:
        return evaluate_pair(P, self.pair, state)

    def column(self, P: Poset) -> Row:
        return tuple(self.value(P, s) for s in P.elements)

    def conjugate(self) -> "GeneralizedTest":
        return GeneralizedTest(self.sigma_bar, self.sigma)


def make_generalized_test(P: Poset, sigma: str, sigma_bar: str) -> GeneralizedTest:
    if P.up[P.idx(sigma)] & P.up[P.idx(sigma_bar)]:
        raise ConsistentPairError(f"{sigma} and {sigma_bar} have a common upper bound",
                                  witness=(sigma, sigma_bar))
    return GeneralizedTest(sigma, sigma_bar)


def chu_from_scheme(P: Poset, pairs: Iterable[Pair]) -> StateChu:
    """States against scheme pairs, evaluated by the pair rule"""
    pairs = list(pairs)
    rows = tuple(tuple(evaluate_pair(P, pair, s) for pair in pairs) for s in P.elements)
    return StateChu(states=P, tests=tuple(pair_name(p) for p in pairs), eval=rows,
                    rep={s: s for s in P.elements})


def check_state_chu(S: StateChu) -> List[CheckResult]:
    """Separation, monotonicity, meet-compatibility, property-states, conjugate law"""
    P = S.states
    duplicate = _first_duplicate(zip(P.elements, S.eval))
    results = [failed("Separation", duplicate, "states with identical rows") if duplicate
               else passed("Separation")]

    monotone = passed("EvalMonotone")
    for i in range(len(P)):
        for j in bits(P.up[i]):
            if not row_leq(S.eval[i], S.eval[j]):
                monotone = failed("EvalMonotone", (P.elements[i], P.elements[j]),
                                  "evaluation decreases along the order")
                break
        if not monotone.ok:
            break
    results.append(monotone)

    meet_ok = passed("MeetCompatible")
    for i in range(len(P)):
        for j in range(i + 1, len(P)):
            m = P.meet_table[i][j]
            if m is None or S.eval[m] != row_meet(S.eval[i], S.eval[j]):
                meet_ok = failed("MeetCompatible", (P.elements[i], P.elements[j]),
                                 "meet row differs from the pointwise meet")
                break
        if not meet_ok.ok:
            break
    results.append(meet_ok)

    characterized = passed("PropertyState")
    for t in S.tests:
        try:
            sigma = property_state(S, t)
        except NotPrincipalError:
            characterized = failed("PropertyState", (t,), "actuality set is not a principal filter")
            break
        if sigma is None:
            continue
        bad = [s for s in P.elements
               if (S.value(s, t) is TruthValue.YES) != P.leq(sigma, s)]
        if bad:
            characterized = failed("PropertyState", (t, bad[0]), "Yes does not coincide with the filter")
            break
    results.append(characterized)

    conjugates = passed("ConjugateComplement")
    columns = {S.column(t): t for t in S.tests}
    for t in S.tests:
        bar_col = tuple(v.bar() for v in S.column(t))
        t_bar = columns.get(bar_col)
        if t_bar is None:
            continue
        actual_bar, _ = actual_and_questionable(S, t_bar)
        _, questionable = actual_and_questionable(S, t)
        if questionable != frozenset(P.elements) - actual_bar:
            conjugates = failed("ConjugateComplement", (t, t_bar), "Q_t is not the complement of A of the conjugate")
            break
    results.append(conjugates)
    return results
