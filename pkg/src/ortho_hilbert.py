"""
Schemes of discriminating tests, the orthogonality and star calculus, and
the lattice of ortho-closed sets of pure states
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from config.config import CLOSED_SET_LIMIT, ORACLE_MAX_ELEMENTS, SUBSET_CHECK_CAP
from src.checks import CheckResult, failed, passed
from src.chu_core import Pair
from src.errors import (AmbiguousJoinError, EmptyPerpError, NotOrthocomplementError, SizeLimitError)
from src.measurement import measure_theta, property_record
from src.order_core import Poset, bits, is_quasi_consistent, underline_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scheme:
    pairs: Tuple[Pair, ...]
    star: Optional[Dict[str, str]] = field(default=None, hash=False, compare=False)


@dataclass(frozen=True)
class StateSpace:
    """A poset of states with an optional scheme of generalized tests"""
    poset: Poset
    scheme: Optional[Scheme] = None

    @property
    def pairs(self) -> Tuple[Pair, ...]:
        return self.scheme.pairs if self.scheme else ()


def _non_bottom(P: Poset) -> List[int]:
    return [i for i in range(len(P)) if i != P.bottom]


def _lub(P: Poset, mask: int) -> Optional[int]:
    try:
        return P.lub_mask(mask)
    except AmbiguousJoinError:
        return None


def is_discriminating(P: Poset, sigma: str, sigma_bar: str) -> bool:
    inconsistent = not P.up[P.idx(sigma)] & P.up[P.idx(sigma_bar)]
    return inconsistent and is_quasi_consistent(P, sigma, sigma_bar)


def validate_scheme(P: Poset, U: Scheme, require_discriminating: bool = False) -> List[CheckResult]:
    results = []
    firsts = {s for s, _ in U.pairs}
    missing = [P.elements[i] for i in _non_bottom(P) if P.elements[i] not in firsts]
    results.append(failed("Complete", (missing[0],), "state is not the first component of any pair")
                   if missing else passed("Complete"))

    irredundant = passed("Irredundant")
    for (s1, b1), (s2, b2) in ((p, q) for p in U.pairs for q in U.pairs):
        if P.leq(s1, s2) != P.leq(b2, b1):
            irredundant = failed("Irredundant", (s1, b1, s2, b2), "order of Σ and reversed order of Σ' disagree")
            break
    results.append(irredundant)

    members = set(U.pairs)
    closed = passed("Closed")
    for s, b in U.pairs:
        if (b, s) not in members:
            closed = failed("Closed", (s, b), "conjugate pair missing")
            break
    if closed.ok:
        for (s1, b1), (s2, b2) in combinations(U.pairs, 2):
            if not P.up[P.idx(s1)] & P.up[P.idx(s2)]:
                continue
            j = _lub(P, P.mask_of([s1, s2]))
            m = P.glb_mask(P.mask_of([b1, b2]))
            if j is None or m is None or (P.elements[j], P.elements[m]) not in members:
                closed = failed("Closed", (s1, b1, s2, b2), "fused pair missing")
                break
    results.append(closed)

    inconsistent = passed("Inconsistent")
    for s, b in U.pairs:
        if P.up[P.idx(s)] & P.up[P.idx(b)]:
            inconsistent = failed("Inconsistent", (s, b), "pair has a common upper bound")
            break
    results.append(inconsistent)

    if require_discriminating:
        discriminating = passed("Discriminating")
        for s, b in U.pairs:
            if not is_discriminating(P, s, b):
                discriminating = failed("Discriminating", (s, b), "pair is not discriminating")
                break
        results.append(discriminating)
    return results


def scheme_from_star(P: Poset, star: Mapping[str, str]) -> Scheme:
    bottom = P.elements[P.bottom]
    for i in _non_bottom(P):
        s = P.elements[i]
        if s not in star:
            raise NotOrthocomplementError(f"star undefined at {s}", witness=(s,))
        if star[s] == bottom or star[s] not in P.index:
            raise NotOrthocomplementError(f"star of {s} is not a non-bottom state", witness=(s,))
    for i in _non_bottom(P):
        s = P.elements[i]
        if not is_discriminating(P, s, star[s]):
            raise NotOrthocomplementError(f"({s}, {star[s]}) is not discriminating", witness=(s, star[s]))
    for i in _non_bottom(P):
        s = P.elements[i]
        if star[star[s]] != s:
            raise NotOrthocomplementError(f"star is not involutive at {s}", witness=(s,))
    for i in _non_bottom(P):
        for j in bits(P.up[i]):
            if j != P.bottom and not P.leq(star[P.elements[j]], star[P.elements[i]]):
                raise NotOrthocomplementError("star is not order-reversing",
                                              witness=(P.elements[i], P.elements[j]))
    pairs = tuple((P.elements[i], star[P.elements[i]]) for i in _non_bottom(P))
    return Scheme(pairs=pairs, star={s: star[s] for s, _ in pairs})


# Orthogonality

def _perp_masks(P: Poset, U: Scheme) -> Tuple[int, ...]:
    """perp[i] = states orthogonal to state i"""
    perp = [0] * len(P)
    for s, b in U.pairs:
        above_s = P.up[P.idx(s)]
        above_b = P.up[P.idx(b)]
        for i in bits(above_s):
            perp[i] |= above_b
    return tuple(perp)


def orthogonal(P: Poset, U: Scheme, s1: str, s2: str) -> bool:
    return any(P.leq(s, s1) and P.leq(b, s2) for s, b in U.pairs)


def star_of(P: Poset, U: Scheme, state: str) -> str:
    perp = _perp_masks(P, U)[P.idx(state)]
    return _star_from_perp(P, perp, state)


def _star_from_perp(P: Poset, perp: int, state: str) -> str:
    if not perp:
        raise EmptyPerpError(f"no state is orthogonal to {state}", witness=(state,))
    g = P.glb_mask(perp)
    if g is None or P.up[g] != perp:
        raise EmptyPerpError(f"states orthogonal to {state} do not form a principal filter", witness=(state,))
    return P.elements[g]


def _small_subsets(items: Sequence[int], cap: int) -> Iterator[Tuple[int, ...]]:
    for size in range(1, min(cap, len(items)) + 1):
        yield from combinations(items, size)


def check_star_laws(P: Poset, U: Scheme) -> List[CheckResult]:
    """Involution, order reversal, De Morgan, double-perp closure, unique pair"""
    perp = _perp_masks(P, U)
    states = _non_bottom(P)
    non_bottom_mask = P.full & ~(1 << P.bottom)
    star: Dict[int, Optional[int]] = {}
    principal = passed("PerpPrincipal")
    for i in states:
        try:
            star[i] = P.idx(_star_from_perp(P, perp[i], P.elements[i]))
        except EmptyPerpError:
            star[i] = None
            if principal.ok:
                principal = failed("PerpPrincipal", (P.elements[i],), "orthogonal set is not ↑ of a state")
    results = [principal]

    involution = passed("StarInvolution")
    for i in states:
        s = star[i]
        if s is None or s == P.bottom or star.get(s) != i:
            involution = failed("StarInvolution", (P.elements[i],), "star is not involutive")
            break
    results.append(involution)

    reversing = passed("StarOrderReversing")
    for i in states:
        for j in bits(P.up[i] & non_bottom_mask):
            if star[i] is None or star[j] is None or not P.le(star[j], star[i]):
                reversing = failed("StarOrderReversing", (P.elements[i], P.elements[j]), "star is not antitone")
                break
        if not reversing.ok:
            break
    results.append(reversing)

    de_morgan = passed("StarDeMorgan")
    for subset in _small_subsets(states, SUBSET_CHECK_CAP):
        mask = sum(1 << i for i in subset)
        if not P.upper_mask(mask):
            continue
        j = _lub(P, mask)
        stars = [star[i] for i in subset]
        m = None if None in stars else P.glb_mask(sum(1 << s for s in stars))
        if j is None or m is None or star.get(j) != m:
            de_morgan = failed("StarDeMorgan", tuple(P.elements[i] for i in subset),
                               "star of the join is not the meet of stars")
            break
    results.append(de_morgan)

    closure = passed("PerpClosure")
    for subset in _small_subsets(states, SUBSET_CHECK_CAP):
        x_perp = non_bottom_mask
        for i in subset:
            x_perp &= perp[i]
        double = non_bottom_mask
        for k in bits(x_perp):
            double &= perp[k]
        g = P.glb_mask(sum(1 << i for i in subset))
        expected = None if g is None else P.up[g] & non_bottom_mask
        if double != expected:
            closure = failed("PerpClosure", tuple(P.elements[i] for i in subset), "double perp is not ↑ of the meet")
            break
    results.append(closure)

    firsts: Dict[str, List[str]] = {}
    for s, b in U.pairs:
        firsts.setdefault(s, []).append(b)
    unique = passed("UniquePair")
    for i in states:
        if len(set(firsts.get(P.elements[i], []))) != 1:
            unique = failed("UniquePair", (P.elements[i],), "state is not the first component of exactly one pair")
            break
    results.append(unique)
    return results


def _pure_perp(P: Poset, U: Scheme) -> Dict[str, FrozenSet[str]]:
    perp = _perp_masks(P, U)
    return {P.elements[i]: P.names(perp[i] & P.pure_mask) for i in bits(P.pure_mask)}


def _double_perp(universe: FrozenSet[str], perp: Mapping[str, FrozenSet[str]], X: Iterable[str]) -> FrozenSet[str]:
    x_perp = set(universe)
    for x in X:
        x_perp &= perp[x]
    result = set(universe)
    for y in x_perp:
        result &= perp[y]
    return frozenset(result)


def perp_closure(P: Poset, U: Scheme, X: Iterable[str]) -> FrozenSet[str]:
    """X^⊥⊥ on pure states"""
    perp = _pure_perp(P, U)
    return _double_perp(P.names(P.pure_mask), perp, X)


def check_perp_closure_formula(P: Poset, U: Scheme) -> CheckResult:
    """Double perp of pure states equals the pure states above their meet"""
    name = "PerpClosureFormula"
    perp = _pure_perp(P, U)
    universe = P.names(P.pure_mask)
    for subset in _small_subsets(list(bits(P.pure_mask)), SUBSET_CHECK_CAP):
        names = [P.elements[i] for i in subset]
        g = P.glb_mask(sum(1 << i for i in subset))
        if g is None or _double_perp(universe, perp, names) != underline_of(P, [P.elements[g]]):
            return failed(name, tuple(names), "double perp differs from the underline of the meet")
    return passed(name)


# Closed-set lattice

@dataclass(frozen=True)
class ClosedSetLattice:
    universe: Tuple[str, ...]
    closed_sets: Tuple[FrozenSet[str], ...]
    ortho: Dict[FrozenSet[str], FrozenSet[str]] = field(hash=False)
    atoms: Tuple[FrozenSet[str], ...]
    perp: Dict[str, FrozenSet[str]] = field(hash=False)

    @property
    def top(self) -> FrozenSet[str]:
        return frozenset(self.universe)

    def closure(self, X: Iterable[str]) -> FrozenSet[str]:
        return _double_perp(self.top, self.perp, X)

    def join(self, X: FrozenSet[str], Y: FrozenSet[str]) -> FrozenSet[str]:
        return self.closure(X | Y)

    def label(self, X: Iterable[str]) -> str:
        return "{" + ",".join(s for s in self.universe if s in X) + "}"


def _set_key(universe: Sequence[str]):
    position = {s: k for k, s in enumerate(universe)}
    return lambda X: (len(X), sorted(position[s] for s in X))


def _lattice_from_sets(universe: Tuple[str, ...], perp: Dict[str, FrozenSet[str]],
                       family: Iterable[FrozenSet[str]]) -> ClosedSetLattice:
    top = frozenset(universe)
    closed = tuple(sorted(set(family), key=_set_key(universe)))
    ortho = {}
    for X in closed:
        x_perp = set(top)
        for x in X:
            x_perp &= perp[x]
        ortho[X] = frozenset(x_perp)
    atoms = tuple(X for X in closed if len(X) == 1)
    return ClosedSetLattice(universe=universe, closed_sets=closed, ortho=ortho, atoms=atoms, perp=perp)


def build_closed_set_lattice(P: Poset, U: Scheme) -> ClosedSetLattice:
    """
    Ortho-closed sets are exactly the intersections of single-state perps,
    so the family is the intersection closure of those perps, the closed
    principal generators and the universe.
    """
    universe = tuple(P.elements[i] for i in bits(P.pure_mask))
    top = frozenset(universe)
    perp = _pure_perp(P, U)
    generators = {top}
    generators.update(perp[s] for s in universe)
    for i in range(len(P)):
        generators.add(_double_perp(top, perp, underline_of(P, [P.elements[i]])))
    family = set(generators)
    frontier = list(generators)
    while frontier:
        fresh = []
        for X in frontier:
            for Y in list(family):
                Z = X & Y
                if Z not in family:
                    family.add(Z)
                    fresh.append(Z)
                    if len(family) > CLOSED_SET_LIMIT:
                        raise SizeLimitError(f"more than {CLOSED_SET_LIMIT} closed sets")
        frontier = fresh
    lattice = _lattice_from_sets(universe, perp, family)
    logger.info(f"Closed-set lattice: {len(universe)} pure states, {len(lattice.closed_sets)} closed sets")
    return lattice


def brute_force_closed_sets(P: Poset, U: Scheme) -> List[FrozenSet[str]]:
    """All subsets X of pure states with X = X^⊥⊥"""
    universe = tuple(P.elements[i] for i in bits(P.pure_mask))
    if len(universe) > ORACLE_MAX_ELEMENTS:
        raise ValueError(f"closed-set oracle limited to {ORACLE_MAX_ELEMENTS} pure states")
    perp = _pure_perp(P, U)
    top = frozenset(universe)
    found = []
    for mask in range(1 << len(universe)):
        X = frozenset(universe[k] for k in range(len(universe)) if mask >> k & 1)
        if _double_perp(top, perp, X) == X:
            found.append(X)
    return sorted(found, key=_set_key(universe))


def _non_orthogonality_graph(L: ClosedSetLattice) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(L.universe)
    graph.add_edges_from((a, b) for a, b in combinations(L.universe, 2) if b not in L.perp[a])
    return graph


def center_elements(L: ClosedSetLattice) -> List[FrozenSet[str]]:
    """Proper nonempty closed X whose union with X^⊥ covers every atom"""
    top = L.top
    return [X for X in L.closed_sets if X and X != top and X | L.ortho[X] == top]


def check_hilbert_lattice(L: ClosedSetLattice) -> List[CheckResult]:
    family = set(L.closed_sets)
    top = L.top
    results = []

    lattice = passed("Lattice")
    if frozenset() not in family or top not in family:
        lattice = failed("Lattice", (L.label(frozenset()),), "bounds missing")
    else:
        for X, Y in combinations(L.closed_sets, 2):
            if X & Y not in family or L.join(X, Y) not in family:
                lattice = failed("Lattice", (L.label(X), L.label(Y)), "meet or join not closed")
                break
    results.append(lattice)

    ortho = passed("Ortho")
    for X in L.closed_sets:
        Xp = L.ortho[X]
        if Xp not in family or L.ortho.get(Xp) != X or X & Xp or L.join(X, Xp) != top:
            ortho = failed("Ortho", (L.label(X),), "not an orthocomplement")
            break
    if ortho.ok:
        for X in L.closed_sets:
            for Y in L.closed_sets:
                if X <= Y and not L.ortho[Y] <= L.ortho[X]:
                    ortho = failed("Ortho", (L.label(X), L.label(Y)), "orthocomplement is not antitone")
                    break
            if not ortho.ok:
                break
    results.append(ortho)

    atomic = passed("Atomic")
    for s in L.universe:
        if L.closure([s]) != frozenset([s]):
            atomic = failed("Atomic", (s,), "singleton is not closed")
            break
    results.append(atomic)

    atomistic = passed("Atomistic")
    for X in L.closed_sets:
        joined = frozenset()
        for s in X:
            joined = L.join(joined, frozenset([s]))
        if joined != X:
            atomistic = failed("Atomistic", (L.label(X),), "not the join of its atoms")
            break
    results.append(atomistic)

    orthomodular = passed("Orthomodular")
    for A in L.closed_sets:
        for B in L.closed_sets:
            if A <= B and L.join(A, B & L.ortho[A]) != B:
                orthomodular = failed("Orthomodular", (L.label(A), L.label(B)), "orthomodular law fails")
                break
        if not orthomodular.ok:
            break
    results.append(orthomodular)

    covering = passed("Covering")
    for A in L.closed_sets:
        for s in L.universe:
            if s in A:
                continue
            upper = L.join(A, frozenset([s]))
            if any(A < C < upper for C in L.closed_sets):
                covering = failed("Covering", (L.label(A), s), "adding an atom does not give a cover")
                break
        if not covering.ok:
            break
    results.append(covering)

    exchange = passed("Exchange")
    for subset in _small_subsets(list(L.universe), SUBSET_CHECK_CAP):
        closure = L.closure(subset)
        for s in L.universe:
            if s in closure:
                continue
            target = L.closure(subset + (s,))
            if not any(all(t in L.perp[x] for x in subset) and L.closure(subset + (t,)) == target
                       for t in L.universe):
                exchange = failed("Exchange", subset + (s,), "no orthogonal replacement")
                break
        if not exchange.ok:
            break
    results.append(exchange)

    graph = _non_orthogonality_graph(L)
    center = center_elements(L)
    if L.universe and nx.is_connected(graph) and not center:
        results.append(passed("Irreducible"))
    elif L.universe and nx.is_connected(graph):
        results.append(failed("Irreducible", (L.label(center[0]),), "proper closed set is central"))
    else:
        components = sorted((sorted(c, key=L.universe.index) for c in nx.connected_components(graph)),
                            key=lambda c: L.universe.index(c[0]))
        witness = tuple(components[0]) if components else ("{}",)
        detail = f"pure states split into mutually orthogonal blocks; {len(center)} central elements"
        results.append(failed("Irreducible", witness, detail))
    return results


def check_kripke_frame(P: Poset, U: Scheme) -> List[CheckResult]:
    """Separation, Representation and Superposition on the pure states"""
    perp = _pure_perp(P, U)
    all_perp = _perp_masks(P, U)
    pure = [P.elements[i] for i in bits(P.pure_mask)]
    results = []

    separation = passed("Separation")
    for s1 in pure:
        for s2 in pure:
            if s1 == s2:
                continue
            if not any(s3 in perp[s1] and s3 not in perp[s2] for s3 in pure):
                separation = failed("Separation", (s1, s2), "no pure state separates them")
                break
        if not separation.ok:
            break
    results.append(separation)

    representation = passed("Representation")
    skipped = 0
    for subset in _small_subsets(list(bits(P.pure_mask)), SUBSET_CHECK_CAP):
        g = P.glb_mask(sum(1 << i for i in subset))
        if g is None or g == P.bottom:
            continue
        try:
            g_star = _star_from_perp(P, all_perp[g], P.elements[g])
        except EmptyPerpError:
            skipped += 1
            continue
        record = property_record(P, P.elements[g], g_star, U.pairs, with_perfect=False)
        if not record.minimal:
            skipped += 1
            continue
        names = [P.elements[i] for i in subset]
        s_perp = set(pure)
        for x in names:
            s_perp &= perp[x]
        for s in pure:
            if s in s_perp or s not in record.Q:
                continue
            image = measure_theta(P, record, s)
            image_perp = all_perp[P.idx(image)]
            if any((s in perp[x]) != bool(image_perp >> P.idx(x) & 1) for x in names):
                representation = failed("Representation", tuple(names) + (s,),
                                        "orthogonality to S is not preserved by the measurement")
                break
        if not representation.ok:
            break
    if representation.ok and skipped:
        representation = passed("Representation", f"{skipped} subsets without a minimal test skipped")
    results.append(representation)

    superposition = passed("Superposition")
    for s1, s2 in combinations(pure, 2):
        g = P.glb_mask(P.mask_of([s1, s2]))
        above = set() if g is None else underline_of(P, [P.elements[g]])
        if not above - {s1, s2}:
            superposition = failed("Superposition", (s1, s2), "no third pure state above their meet")
            break
    results.append(superposition)
    return results


def lattice_graph(L: ClosedSetLattice) -> nx.DiGraph:
    """Hasse diagram of the closed sets, edges from each set to its covers"""
    graph = nx.DiGraph()
    for X in L.closed_sets:
        graph.add_node(L.label(X), size=len(X))
    for X in L.closed_sets:
        for Y in L.closed_sets:
            if X < Y and not any(X < Z < Y for Z in L.closed_sets):
                graph.add_edge(L.label(X), L.label(Y))
    return graph


def to_dot(L: ClosedSetLattice) -> str:
    graph = lattice_graph(L)
    ids = {label: f"n{k}" for k, label in enumerate(graph.nodes)}
    lines = ["digraph closed_sets {", "  rankdir=BT;"]
    for label, node_id in ids.items():
        escaped = label.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {node_id} [label="{escaped}"];')
    for src, dst in graph.edges:
        lines.append(f"  {ids[src]} -> {ids[dst]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
