"""
Model checker orchestrating the check bundles behind each CLI command
"""
import logging
from pathlib import Path
from typing import Callable, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

from src.checks import CheckResult, aggregate_ok, report_failures
from src.chu_core import ChuSpace, missing_conjugates, quotient, saturate
from src.errors import NotOrthocomplementError, QChuError, SchemaError
from src.formats import Loaded, load, save
from src.generators import FixtureSpec, build_fixture
from src.measurement import (FLAG_NAMES, analyze_scheme, check_filter_preservation, check_theta_laws,
                             coherence_descriptions, conjecture_perfect_sweep, measure_theta, property_record,
                             rho_extraction, specker_sweep, theorem_min_eq_qcl)
from src.order_core import AxiomId, check_axiom, check_order_generation, check_projective_domain
from src.ortho_hilbert import (StateSpace, build_closed_set_lattice, check_hilbert_lattice, check_kripke_frame,
                               check_perp_closure_formula, check_star_laws, to_dot, validate_scheme)
from src.symmetry import (Dictionary, check_chu_morphism, check_preservation, check_symmetry, induced_lattice_map,
                          require_schemes)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_REPORT_ONLY = 3


class Report(BaseModel):
    command: str
    target: str
    results: List[CheckResult] = Field(default_factory=list)
    discrepancies: List[CheckResult] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    summary: Literal["pass", "fail", "input_error"] = "pass"
    error: Optional[str] = None

    @property
    def exit_code(self) -> int:
        if self.summary == "input_error":
            return EXIT_INPUT_ERROR
        if self.summary == "fail":
            return EXIT_FAIL
        return EXIT_REPORT_ONLY if self.discrepancies else EXIT_PASS

    def render(self) -> str:
        lines = [f"{self.command} {self.target}"]
        lines.extend(self.notes)
        lines.extend(r.line() for r in self.results)
        if self.error is not None:
            lines.append(f"error: {self.error}")
        lines.append(f"summary: {self.summary} ({len(self.discrepancies)} discrepancies)")
        return "\n".join(lines) + "\n"


Step = Callable[[], Tuple[List[CheckResult], List[str]]]


def as_state_space(value: Loaded) -> StateSpace:
    """State spaces pass through; chu3 spaces are saturated and quotiented"""
    if isinstance(value, StateSpace):
        return value
    if isinstance(value, ChuSpace):
        return StateSpace(quotient(saturate(value)).states)
    raise SchemaError("expected a state_space or chu3 document at /kind", witness=("/kind",))


def _require_scheme(space: StateSpace) -> None:
    if space.scheme is None:
        raise NotOrthocomplementError("state space has no scheme or star")


class ModelChecker:
    """Runs one command's bundle and folds the outcome into a Report"""

    def __init__(self, exhaustive: bool = False):
        self.exhaustive = exhaustive

    def _run(self, command: str, target: str, step: Step) -> Report:
        logger.info(f"Running {command} on {target}")
        try:
            results, notes = step()
        except QChuError as e:
            logger.error(f"{command} failed on {target}: {e}")
            error = str(e)
            if e.witness:
                error += " witness=(" + ", ".join(e.witness) + ")"
            return Report(command=command, target=target, summary="input_error", error=error)
        report = Report(command=command, target=target, results=results, notes=notes,
                        discrepancies=report_failures(results),
                        summary="pass" if aggregate_ok(results) else "fail")
        for r in report.discrepancies:
            logger.warning(f"Discrepancy: {r.line()}")
        logger.info(f"{command} finished: {report.summary}")
        return report

    def check_domain(self, path: Union[str, Path], exhaustive: Optional[bool] = None) -> Report:
        exhaustive = self.exhaustive if exhaustive is None else exhaustive

        def step():
            P = as_state_space(load(path)).poset
            results = check_projective_domain(P, exhaustive=exhaustive)
            results.append(check_order_generation(P))
            return results, []

        return self._run("check-domain", str(path), step)

    def quotient(self, path: Union[str, Path], out: Union[str, Path] = "-") -> Report:
        def step():
            C = load(path)
            if not isinstance(C, ChuSpace):
                raise SchemaError("expected a chu3 document at /kind", witness=("/kind",))
            S = quotient(saturate(C))
            notes = [f"states: {len(S.states)}"]
            for t in missing_conjugates(C):
                logger.warning(f"Test {t} has no conjugate column")
                notes.append(f"missing conjugate: {t}")
            save(StateSpace(S.states), out)
            return [], notes

        return self._run("quotient", str(path), step)

    def properties(self, path: Union[str, Path]) -> Report:
        def step():
            space = as_state_space(load(path))
            P = space.poset
            notes, results = [], []
            for record in analyze_scheme(P, space.pairs):
                flags = ",".join(f for f in FLAG_NAMES if record.flags.get(f))
                notes.append(f"{record.id}: A={{{','.join(P.sorted_names(record.A))}}} "
                             f"Q={{{','.join(P.sorted_names(record.Q))}}} "
                             f"K={{{','.join(P.sorted_names(record.K))}}} flags={flags}")
                results.append(theorem_min_eq_qcl(P, record, space.pairs))
            return results, notes

        return self._run("properties", str(path), step)

    def measure(self, path: Union[str, Path], sigma: str, state: str) -> Report:
        def step():
            space = as_state_space(load(path))
            P = space.poset
            for name in (sigma, state):
                if name not in P.index:
                    raise SchemaError(f"unknown state {name!r}", witness=(name,))
            bars = [b for s, b in space.pairs if s == sigma]
            record = property_record(P, sigma, bars[0] if bars else None, space.pairs)
            image = measure_theta(P, record, state)
            results = [check_theta_laws(P, record), rho_extraction(P, record, record.measurement)[1],
                       check_filter_preservation(P, record)]
            return results, [f"Theta{record.id}({state}) = {image}"]

        return self._run("measure", str(path), step)

    def specker(self, path: Union[str, Path]) -> Report:
        def step():
            space = as_state_space(load(path))
            P = space.poset
            records = analyze_scheme(P, space.pairs)
            results = [specker_sweep(P, records)]
            summary = coherence_descriptions(P, records)
            results.extend(summary.checks)
            results.append(conjecture_perfect_sweep(P, space.pairs))
            results.append(check_axiom(P, AxiomId.JOIN_CONTINUITY))
            notes = ["description: {" + ", ".join(family) + "}" for family in summary.maximal]
            return results, notes

        return self._run("specker", str(path), step)

    def ortho(self, path: Union[str, Path]) -> Report:
        def step():
            space = as_state_space(load(path))
            _require_scheme(space)
            P, U = space.poset, space.scheme
            results = validate_scheme(P, U, require_discriminating=True)
            results.extend(check_star_laws(P, U))
            results.append(check_perp_closure_formula(P, U))
            return results, []

        return self._run("ortho", str(path), step)

    def hilbert(self, path: Union[str, Path], dot: Optional[Union[str, Path]] = None) -> Report:
        def step():
            space = as_state_space(load(path))
            _require_scheme(space)
            L = build_closed_set_lattice(space.poset, space.scheme)
            notes = [f"closed sets: {len(L.closed_sets)}"]
            if dot is not None:
                Path(dot).write_text(to_dot(L), encoding="utf-8")
                notes.append(f"dot: {dot}")
            results = check_hilbert_lattice(L)
            results.extend(check_kripke_frame(space.poset, space.scheme))
            return results, notes

        return self._run("hilbert", str(path), step)

    def symmetry(self, path: Union[str, Path]) -> Report:
        def step():
            D = load(path)
            if not isinstance(D, Dictionary):
                raise SchemaError("expected a dictionary document at /kind", witness=("/kind",))
            require_schemes(D)
            results = [check_chu_morphism(D)]
            results.extend(check_symmetry(D))
            results.extend(check_preservation(D))
            results.extend(induced_lattice_map(D).checks)
            return results, []

        return self._run("symmetry", str(path), step)

    def generate(self, spec: FixtureSpec, out: Union[str, Path] = "-") -> Report:
        def step():
            save(build_fixture(spec), out)
            return [], [f"family: {spec.family}"]

        return self._run("generate", str(out), step)
