"""JSON encodings for algebras, elements, homs and lifted points.

Algebras are written out in full (structure constants included) and referenced
by a content hash of their table. On input an algebra may be given as a
presentation, a shorthand name, a tensor of other specs, or a raw table.
"""

from __future__ import annotations

from typing import Any, Callable

from .algebra import (
    AlgebraHom,
    WeilAlgebra,
    WeilElement,
    WeilPresentation,
    build_from_presentation,
    build_from_structure_constants,
    ground_field,
    tensor_algebra,
)
from .errors import AlgebraMismatchError, DimensionError, PresentationError
from .functor import LiftedPoint
from .scalars import EXACT, format_scalar

SHORTHANDS = {
    "k": WeilPresentation(0, ()),
    "D": WeilPresentation(1, ((2,),)),
}


def algebra_from_spec(spec: Any, mode: str = EXACT,
                      tensor_fn: Callable[[WeilAlgebra, WeilAlgebra], WeilAlgebra] = tensor_algebra
                      ) -> WeilAlgebra:
    if isinstance(spec, str):
        if spec not in SHORTHANDS:
            raise PresentationError(f"unknown algebra shorthand {spec!r}; known: {sorted(SHORTHANDS)}")
        if spec == "k":
            return ground_field(mode)
        return build_from_presentation(SHORTHANDS[spec], mode, name=spec)
    if not isinstance(spec, dict):
        raise PresentationError(f"algebra spec must be a string or object, got {type(spec).__name__}")
    name = spec.get("name")
    if "tensor" in spec:
        factors = [algebra_from_spec(s, mode, tensor_fn) for s in spec["tensor"]]
        if not factors:
            raise PresentationError("empty tensor factor list")
        out = factors[0]
        for f in factors[1:]:
            out = tensor_fn(out, f)
        return out
    if "presentation" in spec or "generators" in spec:
        p = WeilPresentation.from_json(spec.get("presentation", spec))
        return build_from_presentation(p, mode, name=name)
    if "structure_constants" in spec:
        try:
            return build_from_structure_constants(
                spec["structure_constants"], int(spec.get("unit_index", 0)), spec["augmentation"],
                mode, name=name or "",
            )
        except KeyError as exc:
            raise DimensionError(f"structure-constant spec is missing {exc}") from exc
    if name is not None:
        return algebra_from_spec(name, mode, tensor_fn)
    raise PresentationError("algebra spec needs a presentation, tensor, table or name")


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    return label


def algebra_to_json(w: WeilAlgebra) -> dict:
    out = {
        "id": w.id,
        "name": w.name,
        "mode": w.mode,
        "dim": w.dim,
        "basis": [label_to_json(b) for b in w.basis],
        "unit_index": w.unit_index,
        "augmentation": [format_scalar(a) for a in w.augmentation],
        "structure_constants": [
            [[format_scalar(c) for c in vec] for vec in row] for row in w.structure_constants
        ],
        "nilpotency_index": w.nilpotency_index,
    }
    if w.presentation is not None:
        out["presentation"] = w.presentation.to_json()
    if w.factors is not None:
        out["factors"] = [f.name or f.id for f in w.factors]
    return out


def element_to_json(x: WeilElement) -> dict:
    return {"algebra": x.algebra.id, "coeffs": [format_scalar(c) for c in x.coeffs]}


def element_from_json(data: Any, w: WeilAlgebra) -> WeilElement:
    """Accepts ``{"algebra": id, "coeffs": [...]}``, a bare coefficient list, or a scalar."""
    if isinstance(data, dict):
        ref = data.get("algebra")
        if ref is not None and ref != w.id:
            raise AlgebraMismatchError(f"element refers to algebra {ref}, expected {w.id}")
        return w.element(data["coeffs"])
    if isinstance(data, list):
        return w.element(data)
    return w.constant(w.scalar(data))


def hom_to_json(h: AlgebraHom) -> dict:
    return {
        "source": h.source.name or h.source.id,
        "target": h.target.name or h.target.id,
        "matrix": [[format_scalar(v) for v in row] for row in h.matrix],
    }


def point_to_json(p: LiftedPoint) -> list:
    return [[format_scalar(c) for c in x.coeffs] for x in p.coords]
