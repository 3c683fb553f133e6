"""Prolongation of maps between Euclidean spaces, and the induced alpha maps.

A W-point of R^m is an m-tuple of elements of R (x) W. The prolongation of a
map given by expressions is the same expressions evaluated on those elements;
an algebra hom acts on W-points coordinate by coordinate.

Iterated prolongation ``T^{W2}(T^{W1} f)`` is computed literally: W1-elements
whose coefficients are W2-elements. ``nest`` and ``unnest`` move between that
representation and points over ``W1 (x) W2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .algebra import AlgebraHom, WeilAlgebra, WeilElement, tensor_algebra
from .errors import AlgebraMismatchError, DimensionError, ExpressionError, ModeError
from .expression import Expr
from .scalars import EXACT


@dataclass(frozen=True)
class LiftedPoint:
    algebra: WeilAlgebra
    coords: tuple

    def __post_init__(self) -> None:
        for c in self.coords:
            if not isinstance(c, WeilElement) or not (c.algebra is self.algebra or c.algebra == self.algebra):
                raise AlgebraMismatchError("all coordinates of a lifted point must share its algebra")

    def __len__(self) -> int:
        return len(self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LiftedPoint):
            return NotImplemented
        return self.algebra == other.algebra and all(
            a.coeffs == b.coeffs for a, b in zip(self.coords, other.coords)
        ) and len(self) == len(other)

    def __hash__(self) -> int:
        return hash((self.algebra, tuple(c.coeffs for c in self.coords)))

    @property
    def base(self) -> tuple:
        """The underlying 0-level point (augmentation parts)."""
        return tuple(c.aug for c in self.coords)

    def __add__(self, other: "LiftedPoint") -> "LiftedPoint":
        return LiftedPoint(self.algebra, self.coords + other.coords)


def point(algebra: WeilAlgebra, coords: Sequence) -> LiftedPoint:
    """Build a lifted point from coefficient lists, scalars (constant coordinates) or elements."""
    out = []
    for c in coords:
        if isinstance(c, WeilElement):
            out.append(c)
        elif isinstance(c, (list, tuple)):
            out.append(algebra.element(c))
        else:
            out.append(algebra.constant(algebra.scalar(c)))
    return LiftedPoint(algebra, tuple(out))


def eval_expression(e: Expr, env: Mapping[str, WeilElement], w: WeilAlgebra) -> WeilElement:
    missing = e.free_vars() - set(env)
    if missing:
        raise ExpressionError(f"no value for variables {sorted(missing)}", variables=sorted(missing))
    if w.mode == EXACT and e.has_functions():
        raise ModeError("elementary functions need float mode")
    for name, v in env.items():
        if not isinstance(v, WeilElement) or not (v.algebra is w or v.algebra == w):
            raise AlgebraMismatchError(f"value of {name!r} is not an element of {w.name or w.id}")
    out = e.evaluate(env)
    if isinstance(out, WeilElement):
        return out
    return w.constant(w.scalar(out))


def default_variables(fs: Sequence[Expr]) -> tuple[str, ...]:
    return tuple(sorted(frozenset().union(*(f.free_vars() for f in fs)))) if fs else ()


def prolong_map(fs: Sequence[Expr], w: WeilAlgebra,
                variables: Sequence[str] | None = None) -> Callable[[LiftedPoint], LiftedPoint]:
    """``T^W f`` for ``f = (fs[0], ..., fs[p-1])`` in the given variable order."""
    fs = tuple(fs)
    variables = tuple(variables) if variables is not None else default_variables(fs)
    stray = set(default_variables(fs)) - set(variables)
    if stray:
        raise ExpressionError(f"variables {sorted(stray)} not in the domain", variables=sorted(stray))

    def lifted(p: LiftedPoint) -> LiftedPoint:
        if not (p.algebra is w or p.algebra == w):
            raise AlgebraMismatchError("point lives over a different algebra")
        if len(p) != len(variables):
            raise DimensionError(f"map expects {len(variables)} coordinates, got {len(p)}")
        env = dict(zip(variables, p.coords))
        return LiftedPoint(w, tuple(eval_expression(f, env, w) for f in fs))

    return lifted


def apply_alpha(phi: AlgebraHom, p: LiftedPoint) -> LiftedPoint:
    if not (p.algebra is phi.source or p.algebra == phi.source):
        raise AlgebraMismatchError("point is not over the source of the hom")
    return LiftedPoint(phi.target, tuple(phi(c) for c in p.coords))


def nest(p: LiftedPoint) -> LiftedPoint:
    """Point over ``W1 (x) W2`` -> W1-point whose coefficients are W2-elements."""
    if p.algebra.factors is None:
        raise AlgebraMismatchError("nest needs a point over a tensor algebra")
    w1, w2 = p.algebra.factors
    d2 = w2.dim
    coords = tuple(
        WeilElement(w1, tuple(WeilElement(w2, c.coeffs[i * d2:(i + 1) * d2]) for i in range(w1.dim)))
        for c in p.coords
    )
    return LiftedPoint(w1, coords)


def unnest(p: LiftedPoint) -> LiftedPoint:
    """Inverse of ``nest``."""
    w1 = p.algebra
    inner = p.coords[0].coeffs[0]
    if not isinstance(inner, WeilElement):
        raise AlgebraMismatchError("unnest needs a point with algebra-valued coefficients")
    w = tensor_algebra(w1, inner.algebra)
    return LiftedPoint(w, tuple(
        WeilElement(w, tuple(v for e in c.coeffs for v in e.coeffs)) for c in p.coords
    ))


def prolong_iterated(fs: Sequence[Expr], p: LiftedPoint,
                     variables: Sequence[str] | None = None) -> LiftedPoint:
    """``T^{W2}(T^{W1} f)`` at a point over ``W1 (x) W2``, returned over ``W1 (x) W2``."""
    inner = nest(p)
    variables = tuple(variables) if variables is not None else default_variables(fs)
    env = dict(zip(variables, inner.coords))
    if len(inner) != len(variables):
        raise DimensionError(f"map expects {len(variables)} coordinates, got {len(inner)}")
    vals = []
    for f in fs:
        v = f.evaluate(env)
        if not isinstance(v, WeilElement):
            v = inner.algebra.constant(p.algebra.factors[1].constant(v))
        vals.append(v)
    return unnest(LiftedPoint(inner.algebra, tuple(vals)))


def leaves(w: WeilAlgebra) -> list[WeilAlgebra]:
    if w.factors is None:
        return [w]
    return leaves(w.factors[0]) + leaves(w.factors[1])


def _leaf_index(w: WeilAlgebra, i: int) -> tuple[int, ...]:
    if w.factors is None:
        return (i,)
    a, b = w.factors
    i1, i2 = divmod(i, b.dim)
    return _leaf_index(a, i1) + _leaf_index(b, i2)


def reassociation_permutation(source: WeilAlgebra, target: WeilAlgebra) -> list[int]:
    """``perm[i]`` is the target index of source basis element i."""
    if leaves(source) != leaves(target):
        raise AlgebraMismatchError("tensor factor lists differ; cannot reassociate")
    where = {_leaf_index(target, j): j for j in range(target.dim)}
    return [where[_leaf_index(source, i)] for i in range(source.dim)]


def reassociate(p: LiftedPoint, target: WeilAlgebra) -> LiftedPoint:
    """Re-parenthesize a point over a tensor of the same factors, e.g. (A(x)B)(x)C -> A(x)(B(x)C)."""
    perm = reassociation_permutation(p.algebra, target)
    coords = []
    for c in p.coords:
        out = [None] * target.dim
        for i, j in enumerate(perm):
            out[j] = c.coeffs[i]
        coords.append(WeilElement(target, tuple(out)))
    return LiftedPoint(target, tuple(coords))
