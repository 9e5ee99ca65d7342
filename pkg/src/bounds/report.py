"""Auditable records of one theorem inequality evaluated on one graph."""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
INFORMATIONAL = "informational"
SOLVER_FLAG = "solver_flag"
NOT_APPLICABLE = "not_applicable"
SKIPPED = "skipped"

CERTIFIED = "certified"
UNMET = "unmet"
SUPPLIED = "supplied"
NOT_FALSIFIED = "not falsified"
FALSIFIED = "falsified"
UNCONDITIONAL = "unconditional"

COMPUTED = "computed"

AT_MOST = "<="
AT_LEAST = ">="


@dataclass(frozen=True)
class Quantity:
    """An input value and where it came from (``computed`` or ``supplied``)."""

    value: Any
    provenance: str = COMPUTED

    def as_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "provenance": self.provenance}


@dataclass
class BoundReport:
    """
    One evaluated inequality.

    ``orientation`` reads as ``lhs <orientation> rhs``. ``margin`` is oriented so that the inequality holds iff
    margin >= -tolerance: lhs - rhs for ``>=``, rhs - lhs for ``<=``.
    """

    theorem: str
    orientation: str
    lhs: Optional[float]
    rhs: Optional[float]
    margin: Optional[float]
    status: str
    hypothesis: str
    inputs: Dict[str, Quantity] = field(default_factory=dict)
    parameters: Dict[str, Any] = field(default_factory=dict)
    tolerance: float = 1e-9
    notes: str = ""

    @property
    def satisfied(self) -> Optional[bool]:
        if self.margin is None:
            return None
        return self.margin >= -self.tolerance

    @property
    def certificate_failure(self) -> bool:
        return self.status == FAIL

    def as_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "orientation": self.orientation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "satisfied": self.satisfied,
            "status": self.status,
            "hypothesis": self.hypothesis,
            "inputs": {name: quantity.as_dict() for name, quantity in self.inputs.items()},
            "parameters": dict(self.parameters),
            "notes": self.notes,
        }


def evaluate(
    theorem: str,
    lhs: float,
    rhs: float,
    orientation: str,
    hypothesis: str,
    inputs: Optional[Dict[str, Quantity]] = None,
    parameters: Optional[Dict[str, Any]] = None,
    tolerance: float = 1e-9,
    on_failure: str = FAIL,
    notes: str = "",
) -> BoundReport:
    """
    Compare both sides and assign a status.

    A violated inequality is a ``fail`` (or ``on_failure``) only under a certified or unconditional hypothesis;
    any other hypothesis makes the evaluation informational.
    """
    if orientation not in (AT_MOST, AT_LEAST):
        raise ValueError(f"unknown orientation {orientation!r}")
    lhs, rhs = float(lhs), float(rhs)
    margin = lhs - rhs if orientation == AT_LEAST else rhs - lhs
    if math.isnan(margin):
        margin = -math.inf

    trusted = hypothesis in (CERTIFIED, UNCONDITIONAL)
    if margin >= -tolerance:
        status = PASS if trusted else INFORMATIONAL
    else:
        status = on_failure if trusted else INFORMATIONAL

    return BoundReport(
        theorem=theorem,
        orientation=orientation,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        status=status,
        hypothesis=hypothesis,
        inputs=dict(inputs or {}),
        parameters=dict(parameters or {}),
        tolerance=tolerance,
        notes=notes,
    )


def unevaluated(
    theorem: str,
    status: str,
    notes: str,
    hypothesis: str = UNMET,
    inputs: Optional[Dict[str, Quantity]] = None,
    parameters: Optional[Dict[str, Any]] = None,
) -> BoundReport:
    """A report without sides: vacuous, not applicable, or skipped."""
    return BoundReport(
        theorem=theorem,
        orientation="",
        lhs=None,
        rhs=None,
        margin=None,
        status=status,
        hypothesis=hypothesis,
        inputs=dict(inputs or {}),
        parameters=dict(parameters or {}),
        notes=notes,
    )
