"""Deliberately broken operations, used to show the law harness can fail.

Each mutant replaces one piece of the machinery the harness calls: the
algebras themselves, hom composition, or the tensor product table.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable

from .algebra import AlgebraHom, WeilAlgebra, compose_homs, tensor_algebra


@dataclass(frozen=True)
class Ops:
    tensor: Callable[[WeilAlgebra, WeilAlgebra], WeilAlgebra] = tensor_algebra
    compose: Callable[[AlgebraHom, AlgebraHom], AlgebraHom] = compose_homs
    transform: Callable[[WeilAlgebra], WeilAlgebra] = lambda w: w


def break_commutativity(w: WeilAlgebra) -> WeilAlgebra:
    """Zero out ``e_j * e_i`` for the first pair of distinct non-unit basis elements with i < j.

    Algebras with fewer than two non-unit basis elements are returned unchanged.
    """
    nonunit = [i for i in range(w.dim) if i != w.unit_index]
    pairs = [(i, j) for i in nonunit for j in nonunit if i < j and w.products[i][j]]
    if not pairs:
        return w
    i, j = pairs[0]
    rows = [list(r) for r in w.products]
    rows[j][i] = ()
    return dataclasses.replace(
        w, products=tuple(tuple(r) for r in rows), name=f"{w.name}~noncomm", _nilpotency=[]
    )


def compose_dropping_top_row(psi: AlgebraHom, phi: AlgebraHom) -> AlgebraHom:
    """Composite whose last target coordinate is forced to zero."""
    good = compose_homs(psi, phi)
    if good.target.dim < 2:
        return good
    rows = list(good.matrix)
    rows[-1] = tuple(v * 0 for v in rows[-1])
    return AlgebraHom(good.source, good.target, tuple(rows))


def tensor_without_cross_terms(w1: WeilAlgebra, w2: WeilAlgebra) -> WeilAlgebra:
    """Tensor table in which ``(a (x) 1)(1 (x) b) = 0`` for nilpotent basis elements a, b."""
    good = tensor_algebra(w1, w2)
    d2 = w2.dim
    u1, u2 = w1.unit_index, w2.unit_index
    rows = [list(r) for r in good.products]
    for i in range(w1.dim):
        for j in range(d2):
            if i == u1 or j == u2:
                continue
            a, b = i * d2 + u2, u1 * d2 + j
            rows[a][b] = ()
            rows[b][a] = ()
    return dataclasses.replace(
        good, products=tuple(tuple(r) for r in rows), name=f"{good.name}~nocross", _nilpotency=[]
    )


MUTANTS: dict[str, Ops] = {
    "noncommutative": Ops(transform=break_commutativity),
    "alpha-composition": Ops(compose=compose_dropping_top_row),
    "tensor-constants": Ops(tensor=tensor_without_cross_terms),
}


def ops_for(mutant: str | None) -> Ops:
    if mutant is None:
        return Ops()
    return MUTANTS[mutant]
