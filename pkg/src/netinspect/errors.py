"""Exception hierarchy. Each class carries the CLI exit code it maps to."""

from __future__ import annotations


class InspectionError(Exception):
    exit_code = 1
    code = "error"

    def __init__(self, message: str, *, code: str | None = None, location: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.location = location

    def payload(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        if self.location is not None:
            out["location"] = self.location
        return out


class ValidationError(InspectionError, ValueError):
    """Malformed instance, strategy, or action."""

    exit_code = 2
    code = "validation"


class SizeCapError(InspectionError):
    """Action sets too large to enumerate under the configured cap."""

    exit_code = 3
    code = "size-cap"


class SolverError(InspectionError):
    """Numerical failure inside the LP routine."""

    exit_code = 4
    code = "solver-numeric"


class DomainError(InspectionError):
    """Operation requires structure the instance does not have (e.g. disjoint sets)."""

    exit_code = 5
    code = "infeasible-mode"
