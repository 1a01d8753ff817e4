"""
Check results shared by every verification module
"""
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel, model_validator


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    TRIVIAL_FINITE = "trivial_finite"


class CheckMode(str, Enum):
    ASSERT = "assert"
    REPORT = "report"


class CheckResult(BaseModel):
    axiom_id: str
    verdict: Verdict
    witness: Optional[Tuple[str, ...]] = None
    detail: str = ""
    mode: CheckMode = CheckMode.ASSERT

    @model_validator(mode="after")
    def _witness_iff_fail(self):
        if (self.verdict == Verdict.FAIL) != (self.witness is not None):
            raise ValueError(f"{self.axiom_id}: witness must be present exactly when the verdict is fail")
        return self

    @property
    def ok(self) -> bool:
        return self.verdict != Verdict.FAIL

    def line(self) -> str:
        """One deterministic report line"""
        tag = "REPORT " if self.mode == CheckMode.REPORT else ""
        text = f"{tag}{self.axiom_id}: {self.verdict.value}"
        if self.witness is not None:
            text += " witness=(" + ", ".join(self.witness) + ")"
        if self.detail:
            text += f" -- {self.detail}"
        return text


def passed(axiom_id: str, detail: str = "", mode: CheckMode = CheckMode.ASSERT) -> CheckResult:
    return CheckResult(axiom_id=axiom_id, verdict=Verdict.PASS, detail=detail, mode=mode)


def failed(axiom_id: str, witness: Iterable[str], detail: str = "",
           mode: CheckMode = CheckMode.ASSERT) -> CheckResult:
    return CheckResult(axiom_id=axiom_id, verdict=Verdict.FAIL, witness=tuple(witness),
                       detail=detail, mode=mode)


def trivial(axiom_id: str, detail: str = "trivially satisfied (finite)") -> CheckResult:
    return CheckResult(axiom_id=axiom_id, verdict=Verdict.TRIVIAL_FINITE, detail=detail)


def aggregate_ok(results: List[CheckResult]) -> bool:
    """True iff no assertion-mode check failed"""
    return all(r.ok for r in results if r.mode == CheckMode.ASSERT)


def report_failures(results: List[CheckResult]) -> List[CheckResult]:
    return [r for r in results if r.mode == CheckMode.REPORT and not r.ok]
