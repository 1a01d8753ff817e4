"""
Fixture factory: Boolean and MO_n state spaces, counterexamples, products,
spaces cut from orthocomplemented lattices, and seeded random Chu spaces
"""
import logging
from itertools import combinations
from typing import Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, Field

from config.config import BOOLEAN_RANGE, MO_RANGE, ORACLE_MAX_ELEMENTS, PRODUCT_LIMIT, RANDOM_CHU_MAX
from src.chu_core import ChuSpace, TruthValue
from src.errors import NotOrthocomplementError, NotProjectiveLatticeError, RangeError, SizeLimitError
from src.order_core import FINITE_AXIOMS, AxiomId, Poset, bits, brute_force_check, build_poset
from src.ortho_hilbert import Scheme, StateSpace, scheme_from_star

logger = logging.getLogger(__name__)

MO_LETTERS = "abcdefgh"


def _check_range(name: str, value: int, bounds: Tuple[int, int]) -> None:
    low, high = bounds
    if not low <= value <= high:
        raise RangeError(f"{name} must lie in [{low}, {high}], got {value}")


def subset_name(items) -> str:
    return "{" + ",".join(str(i) for i in sorted(items)) + "}"


def boolean_lattice(n: int) -> Tuple[Poset, Dict[str, str]]:
    """All subsets of {1..n} with complement"""
    universe = range(1, n + 1)
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(universe, k)]
    names = [subset_name(s) for s in subsets]
    pairs = [(subset_name(s), subset_name(s | {x})) for s in subsets for x in universe if x not in s]
    star = {subset_name(s): subset_name(set(universe) - s) for s in subsets}
    return build_poset(names, pairs), star


def gen_boolean(n: int) -> StateSpace:
    _check_range("boolean n", n, BOOLEAN_RANGE)
    lattice, star = boolean_lattice(n)
    return from_lattice(lattice, star)


def mo_lattice(n: int) -> Tuple[Poset, Dict[str, str]]:
    atoms = []
    for letter in MO_LETTERS[:n]:
        atoms.extend([letter, letter + "'"])
    names = ["bot"] + atoms + ["top"]
    pairs = [("bot", a) for a in atoms] + [(a, "top") for a in atoms]
    star = {a: (a[:-1] if a.endswith("'") else a + "'") for a in atoms}
    star.update({"bot": "top", "top": "bot"})
    return build_poset(names, pairs), star


def gen_mo(n: int) -> StateSpace:
    _check_range("mo n", n, MO_RANGE)
    lattice, star = mo_lattice(n)
    return from_lattice(lattice, star)


def gen_chain(k: int) -> StateSpace:
    if k < 3:
        raise RangeError(f"chain length must be at least 3, got {k}")
    names = [f"c{i}" for i in range(k)]
    return StateSpace(build_poset(names, list(zip(names, names[1:]))))


def gen_n5() -> StateSpace:
    """Pentagon: bot < a < c < top and bot < b < top"""
    names = ["bot", "a", "b", "c", "top"]
    pairs = [("bot", "a"), ("a", "c"), ("c", "top"), ("bot", "b"), ("b", "top")]
    return StateSpace(build_poset(names, pairs))


def gen_point() -> StateSpace:
    """Single-state space; the unit of gen_product"""
    return StateSpace(build_poset(["pt"], []), Scheme(pairs=(), star={}))


def _star_of_space(space: StateSpace) -> Dict[str, str]:
    if space.scheme is None:
        raise NotOrthocomplementError("space has no scheme")
    if space.scheme.star:
        return dict(space.scheme.star)
    return {s: b for s, b in space.scheme.pairs}


def completed_lattice(space: StateSpace) -> Tuple[Poset, Dict[str, str], str]:
    """
    Add a top to the space (a single state is its own top) and extend the
    star by bottom <-> top. Returns the lattice, its star and the top's name.
    """
    P = space.poset
    bottom = P.elements[P.bottom]
    star = _star_of_space(space)
    if len(P) == 1:
        return P, {bottom: bottom}, bottom
    top = "top"
    while top in P.index:
        top += "'"
    names = list(P.elements) + [top]
    pairs = [(P.elements[i], P.elements[j]) for i in range(len(P)) for j in bits(P.cover_masks[i])]
    pairs += [(s, top) for s in P.elements]
    star.update({bottom: top, top: bottom})
    return build_poset(names, pairs), star, top


def gen_product(F1: StateSpace, F2: StateSpace) -> StateSpace:
    """Product of the completed lattices with the product top removed"""
    L1, star1, top1 = completed_lattice(F1)
    L2, star2, top2 = completed_lattice(F2)
    size = len(L1) * len(L2) - 1
    if size > PRODUCT_LIMIT:
        raise SizeLimitError(f"product has {size} elements, limit {PRODUCT_LIMIT}")
    names = []
    for x in L1.elements:
        for y in L2.elements:
            if (x, y) != (top1, top2):
                names.append(f"({x}|{y})")
    pairs = []
    for x in L1.elements:
        for y in L2.elements:
            if (x, y) == (top1, top2):
                continue
            for i in bits(L1.cover_masks[L1.idx(x)]):
                x2 = L1.elements[i]
                if (x2, y) != (top1, top2):
                    pairs.append((f"({x}|{y})", f"({x2}|{y})"))
            for j in bits(L2.cover_masks[L2.idx(y)]):
                y2 = L2.elements[j]
                if (x, y2) != (top1, top2):
                    pairs.append((f"({x}|{y})", f"({x}|{y2})"))
    poset = build_poset(names, pairs)
    star = {}
    for x in L1.elements:
        for y in L2.elements:
            if (x, y) != (top1, top2):
                star[f"({x}|{y})"] = f"({star1[x]}|{star2[y]})"
    bottom = poset.elements[poset.bottom]
    star.pop(bottom, None)
    logger.info(f"Product space with {len(poset)} states")
    return StateSpace(poset, scheme_from_star(poset, star) if len(poset) > 1 else Scheme((), {}))


def _violation(message: str, *witness: str):
    return NotProjectiveLatticeError(message, witness=tuple(witness))


def from_lattice(L: Poset, star: Mapping[str, str]) -> StateSpace:
    """
    State space S = L minus its top, for L a modular atomistic
    orthocomplemented lattice.
    """
    n = len(L)
    tops = [i for i in range(n) if L.down[i] == L.full]
    if not tops:
        raise _violation("lattice has no top")
    top = tops[0]
    for i in range(n):
        for j in range(i + 1, n):
            if L.meet_table[i][j] is None or L.join_table[i][j] is None:
                raise _violation("pair without meet or join", L.elements[i], L.elements[j])
    for a in range(n):
        for b in bits(L.down[a]):
            for c in range(n):
                lhs = L.meet_table[a][L.join_table[b][c]]
                rhs = L.join_table[b][L.meet_table[a][c]]
                if lhs != rhs:
                    raise _violation("lattice is not modular", L.elements[a], L.elements[b], L.elements[c])
    atoms = L.atoms_mask
    for i in range(n):
        below = L.down[i] & atoms
        joined = L.bottom if not below else L.lub_mask(below)
        if joined != i:
            raise _violation("lattice is not atomistic", L.elements[i])
    for i in range(n):
        strict = L.up[i] & ~(1 << i)
        if i == top or not strict:
            continue
        minimum = [j for j in bits(strict) if L.up[j] == strict]
        if minimum and minimum[0] != top:
            raise _violation("meet-irreducible element is not a coatom", L.elements[i])

    bottom_name, top_name = L.elements[L.bottom], L.elements[top]
    for i in range(n):
        if i in (L.bottom, top):
            continue
        x = L.elements[i]
        if x not in star or star[x] not in L.index:
            raise NotOrthocomplementError(f"no orthocomplement for {x}", witness=(x,))
        j = L.idx(star[x])
        if L.meet_table[i][j] != L.bottom or L.join_table[i][j] != top:
            raise NotOrthocomplementError(f"{star[x]} is not a complement of {x}", witness=(x,))

    names = [s for s in L.elements if s != top_name]
    pairs = [(L.elements[i], L.elements[j]) for i in range(n) for j in bits(L.cover_masks[i]) if j != top]
    poset = build_poset(names, pairs)
    state_star = {s: star[s] for s in names if s != bottom_name}
    scheme = scheme_from_star(poset, state_star) if len(poset) > 1 else Scheme((), {})
    return StateSpace(poset, scheme)


# Seeded random Chu spaces

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        return z ^ (z >> 31)


CELL_ORDER = (TruthValue.BOTTOM, TruthValue.YES, TruthValue.NO)


def random_chu(seed: int, n_prep: int, n_test: int) -> ChuSpace:
    for label, size in (("preparations", n_prep), ("tests", n_test)):
        if not 1 <= size <= RANDOM_CHU_MAX:
            raise RangeError(f"{label} must lie in [1, {RANDOM_CHU_MAX}], got {size}")
    rng = SplitMix64(seed)
    rows = tuple(tuple(CELL_ORDER[rng.next() % 3] for _ in range(n_test)) for _ in range(n_prep))
    return ChuSpace(tuple(f"p{i}" for i in range(n_prep)), tuple(f"t{j}" for j in range(n_test)), rows)


# Fixture specifications

Family = Literal["boolean", "mo", "chain", "n5", "product", "from_lattice", "random_chu"]


class FixtureSpec(BaseModel):
    family: Family
    params: Dict[str, int] = Field(default_factory=dict)
    expected: Dict[str, str] = Field(default_factory=dict)


def build_fixture(spec: FixtureSpec) -> Union[StateSpace, ChuSpace]:
    p = spec.params
    if spec.family == "boolean":
        return gen_boolean(p.get("n", 3))
    if spec.family == "mo":
        return gen_mo(p.get("n", 2))
    if spec.family == "chain":
        return gen_chain(p.get("n", 3))
    if spec.family == "n5":
        return gen_n5()
    if spec.family == "product":
        n = p.get("n", 2)
        return gen_product(gen_mo(n), gen_mo(p.get("m", n)))
    if spec.family == "from_lattice":
        lattice, star = boolean_lattice(p.get("n", 3))
        return from_lattice(lattice, star)
    return random_chu(p.get("seed", 1), p.get("n", 4), p.get("m", 3))


def oracle_expectations(space: StateSpace, axioms: Optional[List[AxiomId]] = None) -> Dict[str, str]:
    """Expected verdicts computed by the brute-force twins"""
    if len(space.poset) > ORACLE_MAX_ELEMENTS:
        raise SizeLimitError(f"oracle expectations need at most {ORACLE_MAX_ELEMENTS} states")
    chosen = axioms or [a for a in AxiomId if a not in FINITE_AXIOMS]
    return {a.value: brute_force_check(space.poset, a).verdict.value for a in chosen}
