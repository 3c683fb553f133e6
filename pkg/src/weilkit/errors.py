"""Exception hierarchy. Every class carries a stable ``code`` used by the CLI."""

from __future__ import annotations

from typing import Any


class WeilError(ValueError):
    code = "weil_error"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details = details

    def payload(self) -> dict[str, Any]:
        return {"code": self.code, "message": str(self), "details": self.details}


class ModeError(WeilError):
    """Exact and float scalars were mixed, or a float-only operation ran in exact mode."""

    code = "mode_mismatch"


class PresentationError(WeilError):
    code = "invalid_presentation"


class DimensionError(WeilError):
    code = "dimension_mismatch"


class AlgebraMismatchError(WeilError):
    code = "algebra_mismatch"


class NotInvertibleError(WeilError, ZeroDivisionError):
    code = "not_invertible"


class RelationViolation(WeilError):
    code = "relation_violation"


class HomError(WeilError):
    code = "invalid_hom"


class DomainError(WeilError):
    """log or sqrt applied outside its real domain."""

    code = "domain_error"


class ExpressionError(WeilError):
    code = "invalid_expression"


class FigureError(WeilError):
    code = "figure_error"


class ConfigError(WeilError):
    code = "config_error"
