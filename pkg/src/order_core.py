"""
Finite poset engine: meets, partial joins, consistency, covers, pure states
and the order-theoretic axiom checks of a space of states
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from config.config import ORACLE_MAX_ELEMENTS
from src.checks import CheckMode, CheckResult, failed, passed, trivial
from src.errors import (AmbiguousJoinError, CycleError, NoBottomError, NoMeetError,
                        UnknownAxiomError)

logger = logging.getLogger(__name__)


class PureType(str, Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"


class AxiomId(str, Enum):
    BOUNDED_COMPLETE = "BoundedComplete"
    STRONG_ATOMICITY = "StrongAtomicity"
    RELATIVE_COMPLEMENT = "RelativeComplement"
    LOWER_SEMIMODULAR = "LowerSemimodular"
    COND_UPPER_SEMIMODULAR = "CondUpperSemimodular"
    COND_MODULAR = "CondModular"
    ATOMISTIC = "Atomistic"
    NO_TYPE2 = "NoType2"
    JOIN_CONTINUITY = "JoinContinuity"
    DIRECTED_COMPLETE = "DirectedComplete"
    CHAIN_COMPLETE = "ChainComplete"
    MEET_CONTINUOUS = "MeetContinuous"
    ALGEBRAIC = "Algebraic"
    SCOTT_CONTINUOUS = "ScottContinuous"


FINITE_AXIOMS = (AxiomId.DIRECTED_COMPLETE, AxiomId.CHAIN_COMPLETE, AxiomId.MEET_CONTINUOUS,
                 AxiomId.ALGEBRAIC, AxiomId.SCOTT_CONTINUOUS)


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class Poset:
    """
    Finite pointed poset. `up[i]` is the bitmask of indices j with i <= j.
    Element order is the declared order and fixes witness order.
    """
    elements: Tuple[str, ...]
    up: Tuple[int, ...]
    bottom: int

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.elements == other.elements and self.up == other.up

    def __hash__(self) -> int:
        return hash((self.elements, self.up))

    @cached_property
    def index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    @cached_property
    def down(self) -> Tuple[int, ...]:
        down = [0] * len(self.elements)
        for i, mask in enumerate(self.up):
            for j in bits(mask):
                down[j] |= 1 << i
        return tuple(down)

    @cached_property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    # name <-> index helpers

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.idx(name)
        return mask

    def names(self, mask: int) -> FrozenSet[str]:
        return frozenset(self.elements[i] for i in bits(mask))

    def sorted_names(self, names: Iterable[str]) -> List[str]:
        """Names in element-list order"""
        return sorted(names, key=self.idx)

    def leq(self, x: str, y: str) -> bool:
        return bool(self.up[self.idx(x)] >> self.idx(y) & 1)

    def le(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def up_set(self, names: Iterable[str]) -> FrozenSet[str]:
        mask = 0
        for i in bits(self.mask_of(names)):
            mask |= self.up[i]
        return self.names(mask)

    def down_set(self, names: Iterable[str]) -> FrozenSet[str]:
        mask = 0
        for i in bits(self.mask_of(names)):
            mask |= self.down[i]
        return self.names(mask)

    # bitmask lattice operations

    def glb_mask(self, mask: int) -> Optional[int]:
        """Greatest lower bound of a nonempty mask, None if absent"""
        lower = self.full
        for i in bits(mask):
            lower &= self.down[i]
        for g in bits(lower):
            if self.down[g] & lower == lower:
                return g
        return None

    def lub_mask(self, mask: int) -> Optional[int]:
        """Least upper bound; None if no upper bound; AmbiguousJoinError otherwise"""
        upper = self.full
        for i in bits(mask):
            upper &= self.up[i]
        if not upper:
            return None
        for u in bits(upper):
            if self.up[u] & upper == upper:
                return u
        raise AmbiguousJoinError("upper bounds exist but no least one",
                                 witness=tuple(self.elements[i] for i in bits(mask)))

    def upper_mask(self, mask: int) -> int:
        upper = self.full
        for i in bits(mask):
            upper &= self.up[i]
        return upper

    @cached_property
    def meet_table(self) -> Tuple[Tuple[Optional[int], ...], ...]:
        n = len(self.elements)
        return tuple(tuple(self.glb_mask((1 << i) | (1 << j)) for j in range(n)) for i in range(n))

    @cached_property
    def join_table(self) -> Tuple[Tuple[Optional[int], ...], ...]:
        """Pairwise joins; None when absent or ambiguous"""
        n = len(self.elements)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                try:
                    row.append(self.lub_mask((1 << i) | (1 << j)))
                except AmbiguousJoinError:
                    row.append(None)
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def cover_masks(self) -> Tuple[int, ...]:
        """cover_masks[i] = elements covering i"""
        covers = []
        for i in range(len(self.elements)):
            strict = self.up[i] & ~(1 << i)
            mask = 0
            for j in bits(strict):
                between = strict & self.down[j] & ~(1 << j)
                if not between:
                    mask |= 1 << j
            covers.append(mask)
        return tuple(covers)

    def covers(self, i: int, j: int) -> bool:
        return bool(self.cover_masks[i] >> j & 1)

    @cached_property
    def atoms_mask(self) -> int:
        return self.cover_masks[self.bottom]

    @cached_property
    def pure_types(self) -> Dict[int, PureType]:
        types = {}
        for i in range(len(self.elements)):
            if i == self.bottom:
                continue
            strict = self.up[i] & ~(1 << i)
            if not strict:
                types[i] = PureType.TYPE1
            elif self.glb_mask(strict) != i:
                types[i] = PureType.TYPE2
        return types

    @cached_property
    def pure_mask(self) -> int:
        mask = 0
        for i in self.pure_types:
            mask |= 1 << i
        return mask


def build_poset(elements: Sequence[str], pairs: Iterable[Tuple[str, str]]) -> Poset:
    """
    Build a poset from the reflexive-transitive closure of `pairs`.
    """
    elements = tuple(elements)
    index: Dict[str, int] = {}
    for i, name in enumerate(elements):
        if name in index:
            raise ValueError(f"duplicate element {name!r}")
        index[name] = i
    n = len(elements)
    if n == 0:
        raise NoBottomError("empty poset has no bottom")

    up = [1 << i for i in range(n)]
    for lower, upper in pairs:
        if lower not in index or upper not in index:
            raise KeyError(f"pair ({lower!r}, {upper!r}) references an unknown element")
        up[index[lower]] |= 1 << index[upper]

    # Warshall closure on bit rows
    for k in range(n):
        bit_k = 1 << k
        for i in range(n):
            if up[i] & bit_k:
                up[i] |= up[k]

    for i in range(n):
        for j in bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise CycleError(f"{elements[i]} and {elements[j]} are mutually below each other",
                                 witness=(elements[i], elements[j]))

    full = (1 << n) - 1
    bottoms = [i for i in range(n) if up[i] == full]
    if not bottoms:
        raise NoBottomError("no element lies below every element")
    poset = Poset(elements=elements, up=tuple(up), bottom=bottoms[0])
    logger.debug(f"Built poset with {n} elements, bottom {elements[bottoms[0]]}")
    return poset


def meet_of(P: Poset, subset: Iterable[str]) -> str:
    mask = P.mask_of(subset)
    if not mask:
        raise ValueError("meet of an empty set is undefined")
    g = P.glb_mask(mask)
    if g is None:
        raise NoMeetError("no greatest lower bound", witness=tuple(P.sorted_names(P.names(mask))))
    return P.elements[g]


def join_of(P: Poset, subset: Iterable[str]) -> Optional[str]:
    """Least upper bound, or None (Absent) when the subset is inconsistent"""
    u = P.lub_mask(P.mask_of(subset))
    return None if u is None else P.elements[u]


def is_consistent(P: Poset, subset: Iterable[str]) -> bool:
    return P.upper_mask(P.mask_of(subset)) != 0


def is_quasi_consistent(P: Poset, x: str, y: str) -> bool:
    i, j = P.idx(x), P.idx(y)
    return _quasi_consistent(P, i, j)


def _quasi_consistent(P: Poset, i: int, j: int) -> bool:
    for k in bits(P.down[j] & ~(1 << j)):
        if not P.up[i] & P.up[k]:
            return False
    for k in bits(P.down[i] & ~(1 << i)):
        if not P.up[j] & P.up[k]:
            return False
    return True


def cover_relation(P: Poset) -> List[Tuple[str, str]]:
    return [(P.elements[i], P.elements[j])
            for i in range(len(P)) for j in bits(P.cover_masks[i])]


def pure_states(P: Poset) -> Tuple[FrozenSet[str], Dict[str, PureType]]:
    """
    Completely meet-irreducible elements. Type1 = maximal, Type2 = the rest;
    for a Type2 element the strict upper set has no meet equal to it, and
    under bounded completeness that upper set has a minimum.
    """
    types = {P.elements[i]: t for i, t in sorted(P.pure_types.items())}
    return frozenset(types), types


def underline_of(P: Poset, subset: Iterable[str]) -> FrozenSet[str]:
    return P.names(P.upper_mask(P.mask_of(subset)) & P.pure_mask)


def atoms(P: Poset) -> FrozenSet[str]:
    return P.names(P.atoms_mask)


# Primitive operations behind the axiom scans. The table-driven version is
# what check_axiom uses; the naive version recomputes everything from the
# raw order and backs the brute-force twins.

class _TableOps:
    def __init__(self, P: Poset):
        self.P = P
        self.n = len(P)

    def le(self, i: int, j: int) -> bool:
        return self.P.le(i, j)

    def meet(self, i: int, j: int) -> Optional[int]:
        return self.P.meet_table[i][j]

    def join(self, i: int, j: int) -> Optional[int]:
        return self.P.join_table[i][j]

    def join_ambiguous(self, i: int, j: int) -> bool:
        return self.consistent(i, j) and self.P.join_table[i][j] is None

    def consistent(self, i: int, j: int) -> bool:
        return bool(self.P.up[i] & self.P.up[j])

    def covers(self, i: int, j: int) -> bool:
        return self.P.covers(i, j)

    def pure_types(self) -> Dict[int, PureType]:
        return self.P.pure_types

    def join_mask(self, mask: int) -> Optional[int]:
        try:
            return self.P.lub_mask(mask)
        except AmbiguousJoinError:
            return None


class _NaiveOps:
    def __init__(self, P: Poset):
        self.P = P
        self.n = len(P)

    def le(self, i: int, j: int) -> bool:
        return self.P.le(i, j)

    def _lower(self, idxs: Sequence[int]) -> List[int]:
        return [k for k in range(self.n) if all(self.le(k, i) for i in idxs)]

    def _upper(self, idxs: Sequence[int]) -> List[int]:
        return [k for k in range(self.n) if all(self.le(i, k) for i in idxs)]

    def meet(self, i: int, j: int) -> Optional[int]:
        lower = self._lower([i, j])
        best = [g for g in lower if all(self.le(x, g) for x in lower)]
        return best[0] if best else None

    def _least_upper(self, idxs: Sequence[int]) -> Tuple[bool, Optional[int]]:
        upper = self._upper(idxs)
        least = [u for u in upper if all(self.le(u, x) for x in upper)]
        return bool(upper), (least[0] if least else None)

    def join(self, i: int, j: int) -> Optional[int]:
        return self._least_upper([i, j])[1]

    def join_ambiguous(self, i: int, j: int) -> bool:
        bounded, least = self._least_upper([i, j])
        return bounded and least is None

    def consistent(self, i: int, j: int) -> bool:
        return bool(self._upper([i, j]))

    def covers(self, i: int, j: int) -> bool:
        if i == j or not self.le(i, j):
            return False
        return not any(k not in (i, j) and self.le(i, k) and self.le(k, j) for k in range(self.n))

    def pure_types(self) -> Dict[int, PureType]:
        return _brute_pure_types(self.P)

    def join_mask(self, mask: int) -> Optional[int]:
        return self._least_upper(list(bits(mask)))[1]


def _brute_pure_types(P: Poset) -> Dict[int, PureType]:
    n = len(P)
    if n > ORACLE_MAX_ELEMENTS:
        raise ValueError(f"brute-force oracle limited to {ORACLE_MAX_ELEMENTS} elements, got {n}")
    reducible = set()
    for mask in range(1, 1 << n):
        g = P.glb_mask(mask)
        if g is not None and not mask >> g & 1:
            reducible.add(g)
    types = {}
    for i in range(n):
        if i == P.bottom or i in reducible:
            continue
        maximal = P.up[i] == 1 << i
        types[i] = PureType.TYPE1 if maximal else PureType.TYPE2
    return types


def _names(P: Poset, *idxs: int) -> Tuple[str, ...]:
    return tuple(P.elements[i] for i in idxs)


def _scan_bounded_complete(P: Poset, ops) -> CheckResult:
    axiom = AxiomId.BOUNDED_COMPLETE.value
    for i in range(ops.n):
        for j in range(i + 1, ops.n):
            if ops.meet(i, j) is None:
                return failed(axiom, _names(P, i, j), "pair has no meet")
            if ops.join_ambiguous(i, j):
                return failed(axiom, _names(P, i, j), "bounded pair has no least upper bound")
    return passed(axiom)


def _scan_strong_atomicity(P: Poset, ops) -> CheckResult:
    axiom = AxiomId.STRONG_ATOMICITY.value
    for i in range(ops.n):
        for j in range(ops.n):
            if i == j or not ops.le(i, j):
                continue
            if not any(ops.covers(i, k) and ops.le(k, j) for k in range(ops.n)):
                return failed(axiom, _names(P, i, j), "no cover of the lower element below the upper")
    return passed(axiom)


def _scan_relative_complement(P: Poset, ops) -> CheckResult:
    axiom = AxiomId.RELATIVE_COMPLEMENT.value
    n = ops.n
    for a in range(n):
        for b in range(n):
            if not ops.le(a, b):
                continue
            for c in range(n):
                if not ops.le(b, c):
                    continue
                found = any(ops.le(a, x) and ops.le(x, c)
                            and ops.meet(x, b) == a and ops.join(x, b) == c for x in range(n))
                if not found:
                    return failed(axiom, _names(P, a, b, c), "no relative complement in the interval")
    return passed(axiom)


def _scan_lower_semimodular(P: Poset, ops) -> CheckResult:
    axiom = AxiomId.LOWER_SEMIMODULAR.value
    n = ops.n
    for x in range(n):
        for b in range(n):
            for c in range(n):
                if not ops.covers(b, c) or not ops.le(x, c) or ops.le(x, b):
                    continue
                m = ops.meet(x, b)
                if m is None or not ops.covers(m, x):
                    return failed(axiom, _names(P, x, b, c), "meet with the lower cover is not covered")
    return passed(axiom)


def _scan_cond_upper_semimodular(P: Poset, ops) -> CheckResult:
    axiom = AxiomId.COND_UPPER_SEMIMODULAR.value
    n = ops.n
    for a in range(n):
        for b in range(n):
            if not ops.covers(a, b):
                continue
            for x in range(n):
                if not ops.le(a, x) or ops.le(b, x) or not ops.consistent(x, b):
                    continue
                j = ops.join(x, b)
                if j is None or not ops.covers(x, j):
                    return failed(axiom, _names(P, a, b, x), "join with the cover does not cover")
    return passed(axiom)


def _scan_cond_modular(P: Poset, ops) -> CheckResult:
    axiom = AxiomId.COND_MODULAR.value
    n = ops.n
    for a in range(n):
        for b in range(n):
            if not ops.le(b, a):
                continue
            for c in range(n):
                if not ops.consistent(b, c):
                    continue
                bc = ops.join(b, c)
                ac = ops.meet(a, c)
                lhs = None if bc is None else ops.meet(a, bc)
                rhs = None if ac is None else ops.join(b, ac)
                if lhs is None or rhs is None or lhs != rhs:
                    return failed(axiom, _names(P, a, b, c), "modular law fails")
    return passed(axiom)


def _scan_atomistic(P: Poset, ops) -> CheckResult:
    axiom = AxiomId.ATOMISTIC.value
    atom_mask = 0
    for k in range(ops.n):
        if ops.covers(P.bottom, k):
            atom_mask |= 1 << k
    for i in range(ops.n):
        below = 0
        for k in bits(atom_mask):
            if ops.le(k, i):
                below |= 1 << k
        j = P.bottom if not below else ops.join_mask(below)
        if j != i:
            return failed(axiom, _names(P, i), "not the join of the atoms below it")
    return passed(axiom)


def _scan_no_type2(P: Poset, ops) -> CheckResult:
    axiom = AxiomId.NO_TYPE2.value
    for i, kind in sorted(ops.pure_types().items()):
        if kind == PureType.TYPE2:
            return failed(axiom, _names(P, i), "pure state of type 2")
    return passed(axiom)


def _scan_join_continuity(P: Poset, ops) -> CheckResult:
    """
    A finite chain contains its meet, so σ ⊔ ⊓C = ⊓{σ ⊔ σ'' : σ'' ⊑ σ'} holds as soon as
    every join on the left and right exists. What remains to scan: σ ⊔ m
    exists for every m below a state σ' consistent with σ.
    """
    axiom = AxiomId.JOIN_CONTINUITY.value
    n = ops.n
    for s in range(n):
        for s2 in range(n):
            if not ops.consistent(s, s2):
                continue
            for m in range(n):
                if ops.le(m, s2) and ops.join(s, m) is None:
                    return failed(axiom, _names(P, s, m, s2), "join with a lower chain member is missing",
                                  mode=CheckMode.REPORT)
    return passed(axiom, "finite chains contain their meet; all bounded joins exist", mode=CheckMode.REPORT)


_SCANS = {
    AxiomId.BOUNDED_COMPLETE: _scan_bounded_complete,
    AxiomId.STRONG_ATOMICITY: _scan_strong_atomicity,
    AxiomId.RELATIVE_COMPLEMENT: _scan_relative_complement,
    AxiomId.LOWER_SEMIMODULAR: _scan_lower_semimodular,
    AxiomId.COND_UPPER_SEMIMODULAR: _scan_cond_upper_semimodular,
    AxiomId.COND_MODULAR: _scan_cond_modular,
    AxiomId.ATOMISTIC: _scan_atomistic,
    AxiomId.NO_TYPE2: _scan_no_type2,
    AxiomId.JOIN_CONTINUITY: _scan_join_continuity,
}


# Definitional forms of the axioms that hold automatically on finite posets

def _subsets(P: Poset) -> Iterator[int]:
    return iter(range(1, 1 << len(P)))


def _is_directed(P: Poset, mask: int) -> bool:
    return all(P.upper_mask((1 << i) | (1 << j)) & mask for i in bits(mask) for j in bits(mask))


def _is_chain(P: Poset, mask: int) -> bool:
    return all(P.le(i, j) or P.le(j, i) for i in bits(mask) for j in bits(mask))


def _safe_lub(P: Poset, mask: int) -> Optional[int]:
    try:
        return P.lub_mask(mask)
    except AmbiguousJoinError:
        return None


def _exhaustive_finite(P: Poset, axiom: AxiomId) -> CheckResult:
    name = axiom.value
    if axiom == AxiomId.SCOTT_CONTINUOUS:
        return trivial(name, "monotone maps are Scott-continuous on finite posets")
    for mask in _subsets(P):
        if axiom == AxiomId.DIRECTED_COMPLETE and _is_directed(P, mask):
            if _safe_lub(P, mask) is None:
                return failed(name, P.sorted_names(P.names(mask)), "directed subset without a join")
        elif axiom == AxiomId.CHAIN_COMPLETE and _is_chain(P, mask):
            if _safe_lub(P, mask) is None:
                return failed(name, P.sorted_names(P.names(mask)), "chain without a join")
        elif axiom == AxiomId.MEET_CONTINUOUS and _is_directed(P, mask):
            d = _safe_lub(P, mask)
            for s in range(len(P)):
                lhs = None if d is None else P.meet_table[s][d]
                meets = [P.meet_table[s][x] for x in bits(mask)]
                rhs = None if None in meets else _safe_lub(P, sum(1 << m for m in set(meets)))
                if lhs is None or lhs != rhs:
                    return failed(name, (P.elements[s],) + tuple(P.sorted_names(P.names(mask))),
                                  "meet does not distribute over the directed join")
    if axiom == AxiomId.ALGEBRAIC:
        for s in range(len(P)):
            if _safe_lub(P, P.down[s]) != s:
                return failed(name, (P.elements[s],), "not the join of the compact elements below it")
    return passed(name, "definitional form verified exhaustively")


def check_axiom(P: Poset, axiom_id, exhaustive: bool = False) -> CheckResult:
    try:
        axiom = AxiomId(axiom_id)
    except ValueError:
        raise UnknownAxiomError(f"unknown axiom {axiom_id!r}") from None
    if axiom in FINITE_AXIOMS:
        if exhaustive and len(P) <= ORACLE_MAX_ELEMENTS:
            return _exhaustive_finite(P, axiom)
        return trivial(axiom.value)
    return _SCANS[axiom](P, _TableOps(P))


PROJECTIVE_BUNDLE = (
    AxiomId.DIRECTED_COMPLETE,
    AxiomId.BOUNDED_COMPLETE,
    AxiomId.ATOMISTIC,
    AxiomId.MEET_CONTINUOUS,
    AxiomId.RELATIVE_COMPLEMENT,
    AxiomId.COND_MODULAR,
    AxiomId.STRONG_ATOMICITY,
    AxiomId.NO_TYPE2,
    AxiomId.LOWER_SEMIMODULAR,
    AxiomId.COND_UPPER_SEMIMODULAR,
    AxiomId.JOIN_CONTINUITY,
)


def check_projective_domain(P: Poset, exhaustive: bool = False) -> List[CheckResult]:
    logger.info(f"Checking projective-domain bundle on {len(P)} elements")
    results = [check_axiom(P, axiom, exhaustive=exhaustive) for axiom in PROJECTIVE_BUNDLE]
    for result in results:
        if not result.ok:
            logger.debug(f"{result.axiom_id} failed at {result.witness}")
    return results


def check_order_generation(P: Poset) -> CheckResult:
    """Every state is the meet of the pure states above it"""
    name = "OrderGeneration"
    for i in range(len(P)):
        above = P.up[i] & P.pure_mask
        if not above or P.glb_mask(above) != i:
            return failed(name, (P.elements[i],), "not the meet of the pure states above it")
    return passed(name)


def check_modular_equivalent(P: Poset) -> CheckResult:
    """Cancellation form of conditional modularity"""
    name = "ModularCancellation"
    ops = _TableOps(P)
    n = len(P)
    for a in range(n):
        for b in range(n):
            if a == b or not ops.le(b, a):
                continue
            for c in range(n):
                if not ops.consistent(a, c):
                    continue
                if ops.meet(a, c) == ops.meet(b, c) and ops.join(a, c) == ops.join(b, c):
                    return failed(name, _names(P, a, b, c), "distinct comparable states share meet and join")
    return passed(name)


# Brute-force twins

def brute_force_pure_states(P: Poset) -> Tuple[FrozenSet[str], Dict[str, PureType]]:
    """Definition scan: σ = ⊓S implies σ ∈ S for every nonempty S"""
    types = {P.elements[i]: t for i, t in sorted(_brute_pure_types(P).items())}
    return frozenset(types), types


def brute_force_covers(P: Poset) -> List[Tuple[str, str]]:
    ops = _NaiveOps(P)
    return [(P.elements[i], P.elements[j])
            for i in range(len(P)) for j in range(len(P)) if ops.covers(i, j)]


def brute_force_check(P: Poset, axiom_id) -> CheckResult:
    try:
        axiom = AxiomId(axiom_id)
    except ValueError:
        raise UnknownAxiomError(f"unknown axiom {axiom_id!r}") from None
    if axiom in FINITE_AXIOMS:
        return _exhaustive_finite(P, axiom)
    return _SCANS[axiom](P, _NaiveOps(P))
