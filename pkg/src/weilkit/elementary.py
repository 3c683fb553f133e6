"""Elementary functions on floats and on Weil elements.

On an element ``x = a + n`` with ``a`` the augmentation part and ``n^r = 0``,

    f(x) = sum_{j<r} f^(j)(a) / j! * n^j

The scaled derivatives ``f^(j)(a)/j!`` come from closed forms, and ``a`` may
itself be an element of another algebra (nested prolongation), in which case
the closed forms recurse.
"""

from __future__ import annotations

import math

from .algebra import WeilElement, scalar_inverse
from .errors import DomainError, ModeError
from .scalars import EXACT


def _real_part(a) -> float:
    while isinstance(a, WeilElement):
        a = a.aug
    return a


def divide(x, y):
    if isinstance(y, WeilElement) or isinstance(x, WeilElement):
        return x / y
    if y == 0:
        raise ZeroDivisionError("division by zero")
    return x / y


def power(x, n: int):
    if isinstance(x, WeilElement):
        return x ** n
    if n < 0:
        return scalar_inverse(x) ** (-n)
    return x ** n


def _scalar(name: str, a) -> float:
    a = float(a)
    if name == "log" and a <= 0:
        raise DomainError(f"log at non-positive argument {a}", argument=a)
    if name == "sqrt" and a < 0:
        raise DomainError(f"sqrt at negative argument {a}", argument=a)
    return getattr(math, name)(a)


def taylor_coefficients(name: str, a, order: int) -> list:
    """``[f^(j)(a)/j! for j < order]`` for the named function."""
    if name == "exp":
        e = apply("exp", a)
        return [e * (1.0 / math.factorial(j)) for j in range(order)]
    if name in ("sin", "cos"):
        s, c = apply("sin", a), apply("cos", a)
        cycle = [s, c, -s, -c] if name == "sin" else [c, -s, -c, s]
        return [cycle[j % 4] * (1.0 / math.factorial(j)) for j in range(order)]
    if name == "log":
        inv = scalar_inverse(a)
        out = [apply("log", a)]
        p = inv
        for j in range(1, order):
            out.append(p * ((-1.0) ** (j - 1) / j))
            p = p * inv
        return out
    if name == "sqrt":
        s = apply("sqrt", a)
        inv = scalar_inverse(a)
        out, p, binom = [s], s, 1.0
        for j in range(1, order):
            binom *= (0.5 - (j - 1)) / j
            p = p * inv
            out.append(p * binom)
        return out
    raise ValueError(f"unknown function {name!r}")


def apply(name: str, x):
    if not isinstance(x, WeilElement):
        return _scalar(name, x)
    if x.algebra.mode == EXACT:
        raise ModeError(f"{name} needs float mode; the algebra {x.algebra.name} is exact")
    a = x.aug
    if name in ("log", "sqrt") and _real_part(a) <= 0:
        raise DomainError(f"{name} at non-positive augmentation part {_real_part(a)}",
                          argument=_real_part(a))
    n = x.nilpotent_part()
    r = x.algebra.nilpotency_index or x.algebra.dim + 1
    coeffs = taylor_coefficients(name, a, r)
    result = x.algebra.constant(coeffs[0])
    p = None
    for c in coeffs[1:]:
        p = n if p is None else p * n
        if not p:
            break
        result = result + p * c
    return result
