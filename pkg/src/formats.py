"""
JSON file formats: chu3 spaces, state spaces and dictionaries.

Output is canonical (sorted keys, two-space indent, trailing newline) so that
regenerated fixtures diff cleanly.
"""
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from src.chu_core import ChuSpace, Pair, TruthValue, pair_name
from src.errors import SchemaError
from src.order_core import build_poset, cover_relation
from src.ortho_hilbert import Scheme, StateSpace, scheme_from_star
from src.symmetry import Dictionary

logger = logging.getLogger(__name__)

Cell = Literal["Y", "N", "_"]


class Chu3File(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["chu3"]
    preparations: List[str]
    tests: List[str]
    evaluation: List[List[Cell]]


class StateSpaceFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["state_space"]
    elements: List[str]
    leq: List[Tuple[str, str]]
    star: Optional[Dict[str, str]] = None
    scheme: Optional[List[Tuple[str, str]]] = None


class DictionaryFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["dictionary"]
    source: Union[str, StateSpaceFile]
    target: Union[str, StateSpaceFile]
    f_states: Dict[str, str]
    f_tests: Dict[str, str]


def _escape(part: Any) -> str:
    return str(part).replace("~", "~0").replace("/", "~1")


def json_pointer(loc: Tuple[Any, ...]) -> str:
    return "".join("/" + _escape(part) for part in loc)


def _validate(model, data: Any, prefix: Tuple[Any, ...] = ()):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        errors = e.errors()
        pointers = sorted({json_pointer(prefix + tuple(err["loc"])) for err in errors})
        first = errors[0]
        raise SchemaError(f"{first['msg']} at {json_pointer(prefix + tuple(first['loc']))}",
                          witness=tuple(pointers)) from None


# Conversions between file models and in-memory values

def chu_from_file(doc: Chu3File) -> ChuSpace:
    rows = tuple(tuple(TruthValue(c) for c in row) for row in doc.evaluation)
    try:
        return ChuSpace(tuple(doc.preparations), tuple(doc.tests), rows)
    except ValueError as e:
        raise SchemaError(f"{e} at /evaluation", witness=("/evaluation",)) from None


def chu_to_file(C: ChuSpace) -> Chu3File:
    return Chu3File(kind="chu3", preparations=list(C.preparations), tests=list(C.tests),
                    evaluation=[[v.value for v in row] for row in C.eval])


def space_from_file(doc: StateSpaceFile) -> StateSpace:
    names = set(doc.elements)
    for k, pair in enumerate(doc.leq):
        for j, s in enumerate(pair):
            if s not in names:
                pointer = f"/leq/{k}/{j}"
                raise SchemaError(f"unknown element {s!r} at {pointer}", witness=(pointer,))
    try:
        poset = build_poset(doc.elements, doc.leq)
    except ValueError as e:
        raise SchemaError(f"{e} at /elements", witness=("/elements",)) from None
    for k, pair in enumerate(doc.scheme or []):
        for j, s in enumerate(pair):
            if s not in poset.index:
                pointer = f"/scheme/{k}/{j}"
                raise SchemaError(f"unknown state {s!r} at {pointer}", witness=(pointer,))
    if doc.scheme is not None:
        return StateSpace(poset, Scheme(tuple(tuple(p) for p in doc.scheme), doc.star))
    if doc.star is not None:
        return StateSpace(poset, scheme_from_star(poset, doc.star))
    return StateSpace(poset)


def space_to_file(space: StateSpace) -> StateSpaceFile:
    P = space.poset
    leq = sorted(cover_relation(P))
    star, scheme = None, None
    if space.scheme is not None:
        if space.scheme.star:
            star = dict(space.scheme.star)
        else:
            scheme = sorted(space.scheme.pairs)
    return StateSpaceFile(kind="state_space", elements=list(P.elements), leq=leq, star=star, scheme=scheme)


def _resolve_space(ref: Union[str, StateSpaceFile], base_dir: Path, field_name: str) -> StateSpace:
    if isinstance(ref, StateSpaceFile):
        return space_from_file(ref)
    path = Path(ref)
    if not path.is_absolute():
        path = base_dir / path
    loaded = load(path)
    if not isinstance(loaded, StateSpace):
        raise SchemaError(f"/{field_name} does not name a state_space file", witness=(f"/{field_name}",))
    return loaded


def _pair_lookup(space: StateSpace, name: str, pointer: str) -> Pair:
    by_name = {pair_name(p): p for p in space.pairs}
    if name not in by_name:
        raise SchemaError(f"{name!r} is not a scheme pair at {pointer}", witness=(pointer,))
    return by_name[name]


def dictionary_from_file(doc: DictionaryFile, base_dir: Path) -> Dictionary:
    source = _resolve_space(doc.source, base_dir, "source")
    target = _resolve_space(doc.target, base_dir, "target")
    f_tests = {}
    for t_name, s_name in doc.f_tests.items():
        pointer = f"/f_tests/{_escape(t_name)}"
        f_tests[_pair_lookup(target, t_name, pointer)] = _pair_lookup(source, s_name, pointer)
    try:
        return Dictionary(source, target, dict(doc.f_states), f_tests)
    except ValueError as e:
        raise SchemaError(f"{e} at /f_states", witness=("/f_states",)) from None


def dictionary_to_file(D: Dictionary) -> DictionaryFile:
    return DictionaryFile(kind="dictionary", source=space_to_file(D.source), target=space_to_file(D.target),
                          f_states=dict(D.f_states),
                          f_tests={pair_name(t): pair_name(s) for t, s in D.f_tests.items()})


# Load and save

Loaded = Union[ChuSpace, StateSpace, Dictionary]

KINDS = {"chu3": Chu3File, "state_space": StateSpaceFile, "dictionary": DictionaryFile}


def parse_document(data: Any, base_dir: Path = Path(".")) -> Loaded:
    if not isinstance(data, dict):
        raise SchemaError("document must be a JSON object at /", witness=("",))
    kind = data.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r} at /kind", witness=("/kind",))
    doc = _validate(KINDS[kind], data)
    if isinstance(doc, Chu3File):
        return chu_from_file(doc)
    if isinstance(doc, StateSpaceFile):
        return space_from_file(doc)
    return dictionary_from_file(doc, base_dir)


def loads(text: str, base_dir: Path = Path(".")) -> Loaded:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} (line {e.lineno})", witness=("",)) from None
    return parse_document(data, base_dir)


def load(path: Union[str, Path]) -> Loaded:
    """Load any of the three kinds; "-" reads stdin"""
    if str(path) == "-":
        return loads(sys.stdin.read())
    path = Path(path)
    logger.info(f"Loading {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}", witness=("",)) from None
    return loads(text, path.parent)


def to_document(value: Loaded) -> Dict[str, Any]:
    if isinstance(value, ChuSpace):
        model = chu_to_file(value)
    elif isinstance(value, StateSpace):
        model = space_to_file(value)
    elif isinstance(value, Dictionary):
        model = dictionary_to_file(value)
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")
    return model.model_dump(mode="json", exclude_none=True)


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps(value: Loaded) -> str:
    return canonical_json(to_document(value))


def save(value: Loaded, path: Union[str, Path]) -> None:
    """Write canonical JSON; "-" writes stdout"""
    text = dumps(value)
    if str(path) == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Saved {path}")
