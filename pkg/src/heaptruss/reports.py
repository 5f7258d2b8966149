"""Violation reports and the error taxonomy shared by every axiom checker.

A validator never raises on a *failed axiom*; it returns a ViolationReport.
Exceptions are reserved for malformed input (StructureError), oversized
sweeps (BudgetError), the odd-characteristic guard (CharacteristicTwoError)
and operations that require an already-valid structure (ValidationFailure).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

WITNESS_CAP = 100


class StructureError(ValueError):
    """Malformed input: bad table sizes, out-of-range entries, wrong kinds."""


class BudgetError(RuntimeError):
    """A sweep or search exceeds the configured size limits."""


class CharacteristicTwoError(ValueError):
    """The construction needs a field of characteristic different from 2."""


class ClosureError(RuntimeError):
    """A derived operation produced a value outside its expected carrier."""


class TheoryError(ValueError):
    """An expression contains nodes the requested equational theory lacks."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]
    lhs: int | None = None
    rhs: int | None = None

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": list(self.witness),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass
class ViolationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def full(self) -> bool:
        return len(self.violations) >= WITNESS_CAP

    def add(self, axiom: str, witness, lhs=None, rhs=None) -> None:
        if not self.full:
            witness = tuple(int(w) for w in witness)
            lhs = None if lhs is None else int(lhs)
            rhs = None if rhs is None else int(rhs)
            self.violations.append(Violation(axiom, witness, lhs, rhs))

    def merge(self, other: "ViolationReport") -> None:
        for v in other.violations:
            if self.full:
                break
            self.violations.append(v)

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}

    def require(self, message: str) -> None:
        if not self.ok:
            raise ValidationFailure(message, self)


class ValidationFailure(Exception):
    """Raised when an operation needs a valid structure and got violations."""

    def __init__(self, message: str, report: ViolationReport):
        first = report.violations[0] if report.violations else None
        detail = f" (first: {first.axiom} at {first.witness})" if first else ""
        super().__init__(message + detail)
        self.report = report


def add_mismatches(report, axiom, lhs, rhs, collect_all, witness_fn=None):
    """Record positions where two equally-shaped arrays differ.

    Witnesses come out in row-major (lowest-first) order, so reports are
    deterministic.  Returns True if anything was added.
    """
    neq = lhs != rhs
    if not np.any(neq):
        return False
    limit = WITNESS_CAP - len(report.violations) if collect_all else 1
    if limit <= 0:
        return True
    bad = np.argwhere(neq)[:limit]
    l = np.broadcast_to(lhs, neq.shape)
    r = np.broadcast_to(rhs, neq.shape)
    for idx in bad:
        key = tuple(int(i) for i in idx)
        witness = key if witness_fn is None else witness_fn(key)
        report.add(axiom, witness, l[key], r[key])
    return True
