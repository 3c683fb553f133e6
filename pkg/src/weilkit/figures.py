"""Implicit polynomial figures in R^n and their first-order fibers.

A figure is a list of polynomial equations; its W-points are the tuples of
elements of R (x) W on which every equation vanishes. Intersection is
concatenation of equation lists, so the intersection of two figures is again a
figure at every level.

Over the dual numbers D, the D-points above a base point b are exactly
``b + v*eps`` with ``J(b) v = 0``, so the first-order fiber is the kernel of the
Jacobian. Jacobian columns are read off one D-evaluation per variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .algebra import WeilAlgebra, WeilPresentation, build_from_presentation, ground_field
from .errors import DimensionError, FigureError
from .expression import Expr, from_json as expr_from_json
from .functor import LiftedPoint, eval_expression, point
from .scalars import EXACT, FLOAT, format_scalar, mode_of, to_scalar

DEFAULT_TOLERANCE = 1e-9


def dual_numbers(mode: str = EXACT) -> WeilAlgebra:
    return build_from_presentation(WeilPresentation(1, ((2,),)), mode, name="D")


@dataclass(frozen=True)
class ImplicitFigure:
    ambient_dim: int
    equations: tuple[Expr, ...]
    variables: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.variables:
            object.__setattr__(self, "variables", tuple(f"x{i + 1}" for i in range(self.ambient_dim)))
        if len(self.variables) != self.ambient_dim:
            raise FigureError(f"{len(self.variables)} variable names for ambient dimension {self.ambient_dim}")
        object.__setattr__(self, "equations", tuple(self.equations))
        for eq in self.equations:
            if not eq.is_polynomial():
                raise FigureError(f"equation {eq} is not polynomial")
            stray = eq.free_vars() - set(self.variables)
            if stray:
                raise FigureError(f"equation {eq} uses variables {sorted(stray)} outside the ambient space")

    def intersect(self, other: "ImplicitFigure") -> "ImplicitFigure":
        if self.variables != other.variables:
            raise FigureError("figures live in different ambient spaces")
        return ImplicitFigure(self.ambient_dim, self.equations + other.equations, self.variables)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "variables": list(self.variables),
            "equations": [e.to_json() for e in self.equations],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ImplicitFigure":
        try:
            n = int(data["ambient_dim"])
            eqs = tuple(expr_from_json(e) for e in data["equations"])
        except (KeyError, TypeError) as exc:
            raise FigureError(f"malformed figure: {exc}") from exc
        return cls(n, eqs, tuple(data.get("variables", ())))


@dataclass(frozen=True)
class FiberDescription:
    base_point: tuple
    level: WeilAlgebra
    dimension: int
    basis: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "base_point": [format_scalar(b) for b in self.base_point],
            "level": self.level.name,
            "dimension": self.dimension,
            "basis": [[format_scalar(c) for c in v] for v in self.basis],
        }


def is_w_point(f: ImplicitFigure, p: LiftedPoint, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Whether every equation of ``f`` vanishes at ``p`` (exactly, or within ``tolerance`` in float mode)."""
    if len(p) != f.ambient_dim:
        raise DimensionError(f"point has {len(p)} coordinates, figure lives in R^{f.ambient_dim}")
    env = dict(zip(f.variables, p.coords))
    for eq in f.equations:
        v = eval_expression(eq, env, p.algebra)
        if p.algebra.mode == EXACT:
            if v:
                return False
        elif any(abs(c) > tolerance for c in v.coeffs):
            return False
    return True


def _base_mode(base: Sequence) -> str:
    return FLOAT if any(mode_of(b) == FLOAT for b in base) else EXACT


def _check_base(f: ImplicitFigure, base: tuple, mode: str, tolerance: float) -> None:
    k = ground_field(mode)
    if not is_w_point(f, point(k, base), tolerance):
        raise FigureError("base point does not lie on the figure",
                          base=[format_scalar(b) for b in base])


def jacobian(f: ImplicitFigure, base: Sequence, mode: str | None = None) -> list[list]:
    """Rows = equations, columns = variables; one dual-number evaluation per column."""
    mode = mode or _base_mode(base)
    base = tuple(to_scalar(b, mode) for b in base)
    if len(base) != f.ambient_dim:
        raise DimensionError(f"base has {len(base)} coordinates, figure lives in R^{f.ambient_dim}")
    d = dual_numbers(mode)
    zero, one = to_scalar(0, mode), to_scalar(1, mode)
    cols = []
    for i in range(f.ambient_dim):
        p = point(d, [[b, one if j == i else zero] for j, b in enumerate(base)])
        env = dict(zip(f.variables, p.coords))
        cols.append([eval_expression(eq, env, d).coeffs[1] for eq in f.equations])
    return [list(row) for row in zip(*cols)] if f.equations else []


def _kernel(rows: list[list], n: int, mode: str) -> list[list]:
    if mode == EXACT:
        return linalg.nullspace(rows, n)
    return linalg.float_nullspace(rows, n, linalg.RANK_THRESHOLD)


def first_order_fiber(f: ImplicitFigure, base: Sequence, mode: str | None = None,
                      tolerance: float = DEFAULT_TOLERANCE) -> FiberDescription:
    mode = mode or _base_mode(base)
    base = tuple(to_scalar(b, mode) for b in base)
    _check_base(f, base, mode, tolerance)
    basis = _kernel(jacobian(f, base, mode), f.ambient_dim, mode)
    return FiberDescription(base, dual_numbers(mode), len(basis), tuple(tuple(v) for v in basis))


def intersect_first_order(f1: ImplicitFigure, f2: ImplicitFigure, base: Sequence,
                          mode: str | None = None,
                          tolerance: float = DEFAULT_TOLERANCE) -> FiberDescription:
    """Kernel of the stacked Jacobians: the D-points over ``base`` common to both figures."""
    if f1.variables != f2.variables:
        raise FigureError("figures live in different ambient spaces")
    mode = mode or _base_mode(base)
    base = tuple(to_scalar(b, mode) for b in base)
    for i, f in enumerate((f1, f2)):
        try:
            _check_base(f, base, mode, tolerance)
        except FigureError as exc:
            raise FigureError(f"base point does not lie on figure {i + 1}", **exc.details) from None
    rows = jacobian(f1, base, mode) + jacobian(f2, base, mode)
    basis = _kernel(rows, f1.ambient_dim, mode)
    return FiberDescription(base, dual_numbers(mode), len(basis), tuple(tuple(v) for v in basis))


def tangent_point(base: Sequence, direction: Sequence, mode: str | None = None) -> LiftedPoint:
    """The D-point ``base + direction * eps``."""
    mode = mode or _base_mode(list(base) + list(direction))
    d = dual_numbers(mode)
    return point(d, [[to_scalar(b, mode), to_scalar(v, mode)] for b, v in zip(base, direction)])
