"""Weil algebras, prolongation of maps along them, and a law harness for the result."""

from .algebra import (
    AlgebraHom,
    WeilAlgebra,
    WeilElement,
    WeilPresentation,
    WeilReport,
    augmentation_hom,
    build_from_presentation,
    build_from_structure_constants,
    check_weil,
    compose_homs,
    copair,
    ground_field,
    hom_from_images,
    identity_hom,
    invert_element,
    multiply_elements,
    tensor,
    tensor_algebra,
)
from .expression import Expr, parse
from .figures import FiberDescription, ImplicitFigure, first_order_fiber, intersect_first_order, is_w_point
from .functor import LiftedPoint, apply_alpha, eval_expression, point, prolong_map, reassociate
from .laws import LawConfig, run_laws

__all__ = [
    "AlgebraHom",
    "Expr",
    "FiberDescription",
    "ImplicitFigure",
    "LawConfig",
    "LiftedPoint",
    "WeilAlgebra",
    "WeilElement",
    "WeilPresentation",
    "WeilReport",
    "apply_alpha",
    "augmentation_hom",
    "build_from_presentation",
    "build_from_structure_constants",
    "check_weil",
    "compose_homs",
    "copair",
    "eval_expression",
    "first_order_fiber",
    "ground_field",
    "hom_from_images",
    "identity_hom",
    "intersect_first_order",
    "invert_element",
    "is_w_point",
    "multiply_elements",
    "parse",
    "point",
    "prolong_map",
    "reassociate",
    "run_laws",
    "tensor",
    "tensor_algebra",
]
