"""Weil algebras, their elements, homomorphisms and tensor products.

An algebra is stored by its multiplication table on a basis: ``products[i][j]``
is a sparse tuple of ``(k, c)`` pairs meaning ``e_i * e_j = sum c * e_k``. The
augmentation is a coordinate vector, so ``aug(x) = sum aug[i] * x[i]``.

Algebras built from a monomial presentation use the standard monomials (those
divisible by no relation) as basis, in graded lexicographic order. Tensor
products use lexicographic pair order, ``(i, j) -> i * dim2 + j``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    AlgebraMismatchError,
    DimensionError,
    HomError,
    ModeError,
    NotInvertibleError,
    PresentationError,
    RelationViolation,
)
from .scalars import EXACT, FLOAT, check_mode, format_scalar, to_scalar

Monomial = tuple[int, ...]

_GENERATOR_NAMES = "xyzw"


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _grlex_key(m: Monomial):
    # degree first; within a degree, larger power of an earlier generator first
    return (sum(m), tuple(-e for e in m))


@dataclass(frozen=True)
class WeilPresentation:
    """``k[x_1..x_g] / (relations)`` with every relation a monomial.

    Relations are normalized on construction: duplicates and relations divisible
    by another relation are dropped, and the rest are sorted.
    """

    generators: int
    relations: tuple[Monomial, ...] = ()

    def __post_init__(self) -> None:
        g = self.generators
        if not isinstance(g, int) or g < 0:
            raise PresentationError(f"generator count must be a non-negative integer, got {g!r}")
        rels = []
        for r in self.relations:
            r = tuple(r)
            if len(r) != g or any(not isinstance(e, int) or e < 0 for e in r):
                raise PresentationError(
                    f"relation {list(r)} is not an exponent vector of length {g}",
                    relation=list(r),
                )
            if sum(r) == 0:
                raise PresentationError("the unit monomial cannot be a relation", relation=list(r))
            rels.append(r)
        minimal = sorted(
            {r for r in rels if not any(s != r and _divides(s, r) for s in rels)},
            key=_grlex_key,
        )
        object.__setattr__(self, "relations", tuple(minimal))
        for i in range(g):
            if self.pure_power(i) is None:
                raise PresentationError(
                    f"generator {i} has no pure-power relation; the quotient is infinite-dimensional",
                    generator=i,
                )

    def pure_power(self, i: int) -> int | None:
        powers = [r[i] for r in self.relations if all(e == 0 for j, e in enumerate(r) if j != i)]
        return min(powers) if powers else None

    def standard_monomials(self) -> list[Monomial]:
        bounds = [self.pure_power(i) for i in range(self.generators)]
        mons = [
            m for m in product(*(range(b) for b in bounds))
            if not any(_divides(r, m) for r in self.relations)
        ]
        return sorted(mons, key=_grlex_key)

    def name(self) -> str:
        if self.generators == 0:
            return "k"
        if self.generators <= len(_GENERATOR_NAMES):
            names = list(_GENERATOR_NAMES[: self.generators])
        else:
            names = [f"x{i + 1}" for i in range(self.generators)]

        def mono(m):
            parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            return "*".join(parts)

        return f"k[{','.join(names)}]/({','.join(mono(r) for r in self.relations)})"

    def to_json(self) -> dict:
        return {"generators": self.generators, "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, data: dict) -> "WeilPresentation":
        try:
            return cls(int(data["generators"]), tuple(tuple(r) for r in data.get("relations", [])))
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed presentation: {exc}") from exc


def _is_zero(c) -> bool:
    return not c


def _zero_like(c):
    return c * 0


def _sum(terms: Iterable, zero):
    return reduce(lambda a, b: a + b, terms, zero)


@dataclass(frozen=True, eq=False)
class WeilAlgebra:
    """A finite-dimensional commutative algebra with augmentation, by structure constants.

    Equality compares the table, unit, augmentation, mode and tensor factor tree;
    basis labels, the display name and the originating presentation are metadata.
    """

    dim: int
    unit_index: int
    products: tuple
    augmentation: tuple
    mode: str = EXACT
    basis: tuple = ()
    name: str = ""
    presentation: WeilPresentation | None = None
    factors: tuple | None = None
    _nilpotency: list = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(self.dim)))
        key = (self.mode, self.dim, self.unit_index, self.augmentation, self.products, self.factors)
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, WeilAlgebra):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"WeilAlgebra({self.name or self.id}, dim={self.dim}, mode={self.mode})"

    @property
    def id(self) -> str:
        payload = json.dumps(
            {
                "mode": self.mode,
                "unit": self.unit_index,
                "aug": [format_scalar(a) for a in self.augmentation],
                "products": [
                    [[[k, format_scalar(c)] for k, c in cell] for cell in row] for row in self.products
                ],
            },
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    @property
    def nilpotency_index(self) -> int | None:
        """Least r with m^r = 0, or None when the augmentation ideal is not nilpotent."""
        if not self._nilpotency:
            self._nilpotency.append(_nilpotency_index(self))
        return self._nilpotency[0]

    @property
    def structure_constants(self) -> list:
        """Dense ``d x d x d`` table, ``[i][j][k]`` = coefficient of e_k in e_i e_j."""
        zero = self.scalar(0)
        dense = [[[zero] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for i, row in enumerate(self.products):
            for j, cell in enumerate(row):
                for k, c in cell:
                    dense[i][j][k] = c
        return dense

    @property
    def is_tensor(self) -> bool:
        return self.factors is not None

    def scalar(self, value):
        return to_scalar(value, self.mode)

    def element(self, coeffs: Sequence) -> "WeilElement":
        if len(coeffs) != self.dim:
            raise DimensionError(
                f"{len(coeffs)} coefficients given for a {self.dim}-dimensional algebra",
                expected=self.dim,
                got=len(coeffs),
            )
        return WeilElement(self, tuple(_coerce_coeff(c, self.mode) for c in coeffs))

    def zero(self) -> "WeilElement":
        z = self.scalar(0)
        return WeilElement(self, (z,) * self.dim)

    def unit(self) -> "WeilElement":
        return self.basis_element(self.unit_index)

    def basis_element(self, i: int) -> "WeilElement":
        z, o = self.scalar(0), self.scalar(1)
        return WeilElement(self, tuple(o if k == i else z for k in range(self.dim)))

    def constant(self, c) -> "WeilElement":
        """``c`` times the unit; ``c`` may itself be a coefficient-ring element."""
        z = _zero_like(c)
        return WeilElement(self, tuple(c if k == self.unit_index else z for k in range(self.dim)))

    def mul_coeffs(self, x: Sequence, y: Sequence) -> tuple:
        out: list = [None] * self.dim
        for i, xi in enumerate(x):
            if _is_zero(xi):
                continue
            row = self.products[i]
            for j, yj in enumerate(y):
                if _is_zero(yj):
                    continue
                cell = row[j]
                if not cell:
                    continue
                p = xi * yj
                for k, c in cell:
                    t = p if c == 1 else p * c
                    out[k] = t if out[k] is None else out[k] + t
        zero = _zero_like(x[0])
        return tuple(zero if v is None else v for v in out)

    def aug_coeffs(self, x: Sequence):
        terms = [a * xi if a != 1 else xi for a, xi in zip(self.augmentation, x) if a != 0]
        return _sum(terms[1:], terms[0]) if terms else _zero_like(x[0])


def _coerce_coeff(c, mode: str):
    if isinstance(c, WeilElement):
        if c.algebra.mode != mode:
            raise ModeError(f"coefficient in {c.algebra.mode} mode used in a {mode} algebra")
        return c
    return to_scalar(c, mode)


class WeilElement:
    """A point of R (x) W: a coefficient vector tagged with its algebra.

    Coefficients are scalars of the algebra's mode, or elements of another
    algebra when points are nested (a W1-point whose coordinates live in
    R (x) W2). Arithmetic with a non-element, or with an element of the
    coefficient algebra, is scalar arithmetic.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: WeilAlgebra, coeffs: tuple) -> None:
        self.algebra = algebra
        self.coeffs = coeffs

    def depth(self) -> int:
        """1 for scalar coefficients, 2 when coefficients are elements, and so on."""
        c0 = self.coeffs[0]
        return 1 + c0.depth() if isinstance(c0, WeilElement) else 1

    def _same(self, other) -> bool:
        if isinstance(other, WeilElement):
            d, od = self.depth(), other.depth()
            if od == d and (other.algebra is self.algebra or other.algebra == self.algebra):
                return True
            c0 = self.coeffs[0]
            if od == d - 1 and c0.algebra == other.algebra:
                return False
            if other.algebra.mode != self.algebra.mode:
                raise ModeError(f"cannot combine {self.algebra.mode} and {other.algebra.mode} elements")
            raise AlgebraMismatchError(
                f"elements of different algebras: {self.algebra!r} and {other.algebra!r}"
            )
        if isinstance(other, float) and self.algebra.mode == EXACT:
            raise ModeError("float scalar combined with an exact-mode element")
        return False

    def __add__(self, other):
        if self._same(other):
            return WeilElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        u = self.algebra.unit_index
        return WeilElement(
            self.algebra, tuple(a + other if k == u else a for k, a in enumerate(self.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return WeilElement(self.algebra, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._same(other):
            return WeilElement(self.algebra, self.algebra.mul_coeffs(self.coeffs, other.coeffs))
        return WeilElement(self.algebra, tuple(a * other for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if self._same(other):
            return self * other.inverse()
        return self * scalar_inverse(other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.algebra.constant(_one_like(self.coeffs[0]))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self) -> bool:
        return any(not _is_zero(c) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, WeilElement) and other.depth() == self.depth() \
                and (other.algebra is self.algebra or other.algebra == self.algebra):
            return self.coeffs == other.coeffs
        if isinstance(other, (WeilElement, int, Fraction, float)):
            try:
                return not bool(self - other)
            except (AlgebraMismatchError, ModeError):
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.algebra, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for label, c in zip(self.algebra.basis, self.coeffs):
            if _is_zero(c):
                continue
            label = _label_str(label)
            terms.append(f"{c}" if label == "1" else f"({c})*{label}")
        return " + ".join(terms) if terms else "0"

    @property
    def aug(self):
        """The augmentation part, a coefficient-ring scalar."""
        return self.algebra.aug_coeffs(self.coeffs)

    def nilpotent_part(self) -> "WeilElement":
        return self - self.aug

    def is_zero(self) -> bool:
        return not self

    def inverse(self) -> "WeilElement":
        return invert_element(self)


def _one_like(c):
    if isinstance(c, WeilElement):
        return c.algebra.constant(_one_like(c.coeffs[0]))
    return c ** 0 if not isinstance(c, float) else 1.0


def _label_str(label) -> str:
    if isinstance(label, tuple) and label and all(isinstance(e, int) for e in label):
        parts = [
            (_GENERATOR_NAMES[i] if len(label) <= 4 else f"x{i + 1}") + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(label) if e
        ]
        return "*".join(parts) or "1"
    if isinstance(label, tuple) and len(label) == 0:
        return "1"
    if isinstance(label, tuple):
        inner = [_label_str(p) for p in label]
        if all(s == "1" for s in inner):
            return "1"
        return "(" + "⊗".join(inner) + ")"
    return str(label)


def scalar_inverse(a):
    """Inverse in the coefficient ring: floats, rationals, or nested elements."""
    if isinstance(a, WeilElement):
        return a.inverse()
    if a == 0:
        raise NotInvertibleError("division by zero scalar")
    return 1 / a


def multiply_elements(x: WeilElement, y: WeilElement) -> WeilElement:
    if not (x.algebra is y.algebra or x.algebra == y.algebra):
        raise AlgebraMismatchError("cannot multiply elements of different algebras")
    return WeilElement(x.algebra, x.algebra.mul_coeffs(x.coeffs, y.coeffs))


def invert_element(x: WeilElement) -> WeilElement:
    """Inverse via a truncated geometric series in the nilpotent part.

    With x = a (1 + n/a) and n^r = 0, x^-1 = a^-1 * sum_{j<r} (-n/a)^j.
    """
    a = x.aug
    if isinstance(a, WeilElement):
        if _is_zero(a.aug):
            raise NotInvertibleError("element lies in the maximal ideal")
    elif _is_zero(a):
        raise NotInvertibleError(
            "element lies in the maximal ideal (zero augmentation part)",
            coeffs=[format_scalar(c) if not isinstance(c, WeilElement) else None for c in x.coeffs],
        )
    a_inv = scalar_inverse(a)
    q = -(x.nilpotent_part() * a_inv)
    r = x.algebra.nilpotency_index or x.algebra.dim + 1
    total = x.algebra.constant(_one_like(a_inv))
    power = total
    for _ in range(1, r):
        power = power * q
        if not power:
            break
        total = total + power
    return total * a_inv


def _nilpotency_index(alg: WeilAlgebra) -> int | None:
    """Iterate spans of m, m^2, ... exactly; at most ``dim`` steps."""
    aug = [Fraction(a) for a in alg.augmentation]
    table = _exact_products(alg)
    m = linalg.nullspace([aug], alg.dim)
    power = linalg.span_basis(m)
    r = 1
    while power:
        if r > alg.dim:
            return None
        nxt = linalg.span_basis([_mul_exact(table, alg.dim, a, b) for a in power for b in m])
        if len(nxt) >= len(power):
            return None
        power = nxt
        r += 1
    return r


def _exact_products(alg: WeilAlgebra):
    return [[[(k, Fraction(c)) for k, c in cell] for cell in row] for row in alg.products]


def _mul_exact(table, d, x, y) -> list:
    out = [Fraction(0)] * d
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            for k, c in table[i][j]:
                out[k] += xi * yj * c
    return out


def _sparse_table(dense, mode: str) -> tuple:
    rows = []
    for row in dense:
        cells = []
        for vec in row:
            cells.append(tuple((k, to_scalar(c, mode)) for k, c in enumerate(vec) if to_scalar(c, mode) != 0))
        rows.append(tuple(cells))
    return tuple(rows)


def build_from_presentation(p: WeilPresentation, mode: str = EXACT, name: str | None = None) -> WeilAlgebra:
    check_mode(mode)
    basis = p.standard_monomials()
    index = {m: i for i, m in enumerate(basis)}
    one = to_scalar(1, mode)
    products = tuple(
        tuple(
            ((index[s], one),) if (s := tuple(a + b for a, b in zip(mi, mj))) in index else ()
            for mj in basis
        )
        for mi in basis
    )
    aug = tuple(to_scalar(1 if sum(m) == 0 else 0, mode) for m in basis)
    alg = WeilAlgebra(
        dim=len(basis),
        unit_index=0,
        products=products,
        augmentation=aug,
        mode=mode,
        basis=tuple(basis),
        name=name or p.name(),
        presentation=p,
    )
    alg.nilpotency_index  # computed eagerly for presentations
    return alg


def build_from_structure_constants(table, unit_index: int, aug, mode: str = EXACT,
                                   basis: Sequence | None = None, name: str = "") -> WeilAlgebra:
    """Wrap a raw table without validating algebra laws; run ``check_weil`` before trusting it."""
    check_mode(mode)
    d = len(table)
    if d == 0:
        raise DimensionError("empty structure-constant table")
    for row in table:
        if len(row) != d or any(len(v) != d for v in row):
            raise DimensionError(f"structure constants must be {d}x{d}x{d}")
    if len(aug) != d:
        raise DimensionError(f"augmentation has length {len(aug)}, expected {d}")
    if not 0 <= unit_index < d:
        raise DimensionError(f"unit index {unit_index} out of range for dimension {d}")
    if basis is not None and len(basis) != d:
        raise DimensionError(f"{len(basis)} basis labels for dimension {d}")
    return WeilAlgebra(
        dim=d,
        unit_index=unit_index,
        products=_sparse_table(table, mode),
        augmentation=tuple(to_scalar(a, mode) for a in aug),
        mode=mode,
        basis=tuple(basis) if basis is not None else (),
        name=name,
    )


@lru_cache(maxsize=None)
def ground_field(mode: str = EXACT) -> WeilAlgebra:
    return build_from_presentation(WeilPresentation(0, ()), mode, name="k")


@dataclass
class WeilReport:
    laws: dict[str, bool]
    nilpotency_index: int | None
    failures: dict[str, str]

    @property
    def passed(self) -> bool:
        return all(self.laws.values())

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "laws": dict(self.laws),
            "nilpotency_index": self.nilpotency_index,
            "failures": dict(self.failures),
        }


def check_weil(a: WeilAlgebra) -> WeilReport:
    """Exact check of the five Weil-algebra laws on a (possibly invalid) table.

    Float tables are converted to rationals exactly, so the check judges the
    stored binary values rather than a rounded version of them.
    """
    d = a.dim
    t = _exact_products(a)
    aug = [Fraction(x) for x in a.augmentation]
    e = [[Fraction(int(i == k)) for k in range(d)] for i in range(d)]
    laws: dict[str, bool] = {}
    failures: dict[str, str] = {}

    def record(law, witness):
        laws[law] = witness is None
        if witness is not None:
            failures[law] = witness

    def first(gen):
        return next(gen, None)

    record("commutative", first(
        f"e{i}*e{j} != e{j}*e{i}"
        for i in range(d) for j in range(i + 1, d)
        if _mul_exact(t, d, e[i], e[j]) != _mul_exact(t, d, e[j], e[i])
    ))
    record("associative", first(
        f"(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})"
        for i in range(d) for j in range(d) for k in range(d)
        if _mul_exact(t, d, _mul_exact(t, d, e[i], e[j]), e[k])
        != _mul_exact(t, d, e[i], _mul_exact(t, d, e[j], e[k]))
    ))
    u = a.unit_index
    record("unital", first(
        f"unit*e{j} != e{j} or e{j}*unit != e{j}"
        for j in range(d)
        if _mul_exact(t, d, e[u], e[j]) != e[j] or _mul_exact(t, d, e[j], e[u]) != e[j]
    ))

    def aug_of(v):
        return sum(x * y for x, y in zip(aug, v))

    hom_witness = None if aug[u] == 1 else f"aug(unit) = {aug[u]}"
    if hom_witness is None:
        hom_witness = first(
            f"aug(e{i}*e{j}) != aug(e{i})*aug(e{j})"
            for i in range(d) for j in range(d)
            if aug_of(_mul_exact(t, d, e[i], e[j])) != aug[i] * aug[j]
        )
    record("augmentation_hom", hom_witness)
    r = a.nilpotency_index
    record("augmentation_ideal_nilpotent", None if r is not None else
           f"powers of the augmentation ideal stabilize at a nonzero span within {d} steps")
    return WeilReport(laws, r if r is not None else None, failures)


@dataclass(frozen=True, eq=False)
class AlgebraHom:
    """A linear map given by a ``target.dim x source.dim`` matrix."""

    source: WeilAlgebra
    target: WeilAlgebra
    matrix: tuple

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraHom):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix))

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.matrix)

    def apply_coeffs(self, x: Sequence) -> tuple:
        out = []
        zero = _zero_like(x[0])
        for row in self.matrix:
            terms = [xi if m == 1 else xi * m for m, xi in zip(row, x) if m != 0 and not _is_zero(xi)]
            out.append(_sum(terms[1:], terms[0]) if terms else zero)
        return tuple(out)

    def __call__(self, x: WeilElement) -> WeilElement:
        if not (x.algebra is self.source or x.algebra == self.source):
            raise AlgebraMismatchError("element is not in the source algebra of the hom")
        return WeilElement(self.target, self.apply_coeffs(x.coeffs))

    def violations(self) -> list[str]:
        """Failed hom laws, empty when the map is a unital algebra hom over k."""
        s, t = self.source, self.target
        out = []
        if self.apply_coeffs(s.unit().coeffs) != t.unit().coeffs:
            out.append("unit not preserved")
        for i in range(s.dim):
            for j in range(i, s.dim):
                ei, ej = s.basis_element(i), s.basis_element(j)
                if self(ei * ej) != self(ei) * self(ej):
                    out.append(f"not multiplicative on basis pair ({i}, {j})")
        ta = t.augmentation
        composed = tuple(sum((ta[r] * self.matrix[r][c] for r in range(t.dim)), s.scalar(0))
                         for c in range(s.dim))
        if composed != tuple(s.augmentation):
            out.append("augmentation not preserved")
        return out


def make_hom(source: WeilAlgebra, target: WeilAlgebra, matrix, check: bool = True) -> AlgebraHom:
    if source.mode != target.mode:
        raise ModeError("hom between algebras of different scalar modes")
    if len(matrix) != target.dim or any(len(r) != source.dim for r in matrix):
        raise DimensionError(f"hom matrix must be {target.dim}x{source.dim}")
    hom = AlgebraHom(source, target, tuple(tuple(to_scalar(v, source.mode) for v in r) for r in matrix))
    if check:
        bad = hom.violations()
        if bad:
            raise HomError("matrix is not an algebra hom: " + "; ".join(bad), violations=bad)
    return hom


def _from_columns(source: WeilAlgebra, target: WeilAlgebra, columns: Sequence[Sequence]) -> AlgebraHom:
    return AlgebraHom(source, target, tuple(zip(*columns)) if columns else ((),) * target.dim)


def identity_hom(w: WeilAlgebra) -> AlgebraHom:
    return _from_columns(w, w, [w.basis_element(i).coeffs for i in range(w.dim)])


def augmentation_hom(w: WeilAlgebra) -> AlgebraHom:
    """The unique map W -> k."""
    return AlgebraHom(w, ground_field(w.mode), (tuple(w.augmentation),))


def unit_hom(w: WeilAlgebra) -> AlgebraHom:
    """The unique map k -> W."""
    return _from_columns(ground_field(w.mode), w, [w.unit().coeffs])


def compose_homs(psi: AlgebraHom, phi: AlgebraHom) -> AlgebraHom:
    """``psi o phi``: apply phi first."""
    if not (phi.target is psi.source or phi.target == psi.source):
        raise AlgebraMismatchError("compose_homs: phi.target differs from psi.source")
    cols = [psi.apply_coeffs(phi.column(j)) for j in range(phi.source.dim)]
    return _from_columns(phi.source, psi.target, cols)


def _monomial_value(m: Monomial, images: Sequence[WeilElement], target: WeilAlgebra) -> WeilElement:
    v = target.unit()
    for img, e in zip(images, m):
        if e:
            v = v * img ** e
    return v


def hom_from_images(p: WeilPresentation | WeilAlgebra, target: WeilAlgebra,
                    images: Sequence[WeilElement], check: bool = True) -> AlgebraHom:
    """The algebra map sending generator i to ``images[i]``.

    Rejected unless every image has zero augmentation part and every relation
    monomial vanishes on the images.
    """
    if isinstance(p, WeilAlgebra):
        if p.presentation is None:
            raise HomError("source algebra has no presentation; use copair for tensor sources")
        source, p = p, p.presentation
    else:
        source = build_from_presentation(p, target.mode)
    if source.mode != target.mode:
        raise ModeError("hom between algebras of different scalar modes")
    if len(images) != p.generators:
        raise HomError(f"{len(images)} images given for {p.generators} generators")
    for i, img in enumerate(images):
        if not (img.algebra is target or img.algebra == target):
            raise AlgebraMismatchError(f"image of generator {i} is not in the target algebra")
        if not _is_zero(img.aug):
            raise HomError(
                f"image of generator {i} has nonzero augmentation part {format_scalar(img.aug)}",
                generator=i,
            )
    for r in p.relations:
        v = _monomial_value(r, images, target)
        if v:
            raise RelationViolation(
                f"relation {list(r)} evaluates to {v!r}, not 0",
                relation=list(r),
                value=[format_scalar(c) for c in v.coeffs],
            )
    cols = [_monomial_value(m, images, target).coeffs for m in source.basis]
    hom = _from_columns(source, target, cols)
    if check and hom.violations():
        raise HomError("constructed map violates the hom laws", violations=hom.violations())
    return hom


def _tensor_name(a: WeilAlgebra, b: WeilAlgebra) -> str:
    def wrap(w):
        n = w.name or w.id
        return f"({n})" if "⊗" in n else n
    return f"{wrap(a)}⊗{wrap(b)}"


def tensor_algebra(w1: WeilAlgebra, w2: WeilAlgebra) -> WeilAlgebra:
    # names are cosmetic and excluded from equality, so key the cache on them too
    return _tensor_cached(w1, w1.name, w2, w2.name)


@lru_cache(maxsize=256)
def _tensor_cached(w1: WeilAlgebra, _n1: str, w2: WeilAlgebra, _n2: str) -> WeilAlgebra:
    if w1.mode != w2.mode:
        raise ModeError("tensor of algebras in different scalar modes")
    d1, d2 = w1.dim, w2.dim
    rows = []
    for i1 in range(d1):
        for j1 in range(d2):
            cells = []
            for i2 in range(d1):
                for j2 in range(d2):
                    acc: dict[int, object] = {}
                    for k1, c1 in w1.products[i1][i2]:
                        for k2, c2 in w2.products[j1][j2]:
                            k = k1 * d2 + k2
                            acc[k] = acc.get(k, 0) + c1 * c2
                    cells.append(tuple((k, c) for k, c in sorted(acc.items()) if c != 0))
            rows.append(tuple(cells))
    alg = WeilAlgebra(
        dim=d1 * d2,
        unit_index=w1.unit_index * d2 + w2.unit_index,
        products=tuple(rows),
        augmentation=tuple(a * b for a in w1.augmentation for b in w2.augmentation),
        mode=w1.mode,
        basis=tuple((b1, b2) for b1 in w1.basis for b2 in w2.basis),
        name=_tensor_name(w1, w2),
        factors=(w1, w2),
    )
    return alg


def inclusions(w: WeilAlgebra) -> tuple[AlgebraHom, AlgebraHom]:
    """Canonical maps a -> a (x) 1 and b -> 1 (x) b into a tensor algebra."""
    if w.factors is None:
        raise AlgebraMismatchError("not a tensor algebra")
    w1, w2 = w.factors
    d2 = w2.dim
    left = [w.basis_element(i * d2 + w2.unit_index).coeffs for i in range(w1.dim)]
    right = [w.basis_element(w1.unit_index * d2 + j).coeffs for j in range(d2)]
    return _from_columns(w1, w, left), _from_columns(w2, w, right)


def tensor(w1: WeilAlgebra, w2: WeilAlgebra) -> tuple[WeilAlgebra, AlgebraHom, AlgebraHom]:
    """``W1 (x)_k W2`` with its two canonical inclusions."""
    w = tensor_algebra(w1, w2)
    return (w, *inclusions(w))


def copair(f: AlgebraHom, g: AlgebraHom) -> AlgebraHom:
    """The map ``a (x) b -> f(a) g(b)`` out of ``f.source (x) g.source``."""
    if not (f.target is g.target or f.target == g.target):
        raise AlgebraMismatchError("copair needs homs into the same algebra")
    source = tensor_algebra(f.source, g.source)
    t = f.target
    fc = [f.column(i) for i in range(f.source.dim)]
    gc = [g.column(j) for j in range(g.source.dim)]
    cols = [t.mul_coeffs(a, b) for a in fc for b in gc]
    return _from_columns(source, t, cols)


def float_version(w: WeilAlgebra) -> WeilAlgebra:
    """The same table with float scalars."""
    if w.mode == FLOAT:
        return w
    if w.factors is not None:
        return tensor_algebra(float_version(w.factors[0]), float_version(w.factors[1]))
    if w.presentation is not None:
        return build_from_presentation(w.presentation, FLOAT, name=w.name)
    return WeilAlgebra(
        dim=w.dim,
        unit_index=w.unit_index,
        products=tuple(tuple(tuple((k, float(c)) for k, c in cell) for cell in row) for row in w.products),
        augmentation=tuple(float(a) for a in w.augmentation),
        mode=FLOAT,
        basis=w.basis,
        name=w.name,
    )
