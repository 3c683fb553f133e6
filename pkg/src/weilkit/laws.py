"""Seeded randomized checks of the prolongation-functor axioms.

Seven law families run on random polynomial maps, random lifted points and
random algebra homs drawn from a pool of algebras:

    tk_identity       T^k = id
    monoidal          T^{W2} o T^{W1} = T^{W1 (x) W2}
    functoriality     T^W(g o f) = T^W g o T^W f,  T^W id = id
    products          T^W(A x B) = T^W A x T^W B
    alpha_functor     alpha_psi . alpha_phi = alpha_{psi o phi},  alpha_id = id
    alpha_naturality  alpha_phi o T^{W1} f = T^{W2} f o alpha_phi
    algebra_object    T^W R = R (x) W,  alpha_phi(R) = R (x) phi

Every trial draws from its own RNG keyed by (seed, law, trial), so a failure
can be replayed from the report alone. Failing cases are shrunk greedily.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable

from .algebra import (
    AlgebraHom,
    WeilAlgebra,
    WeilElement,
    augmentation_hom,
    ground_field,
    hom_from_images,
    identity_hom,
    multiply_elements,
)
from .codec import algebra_from_spec, hom_to_json
from .errors import ConfigError, RelationViolation, WeilError
from .expression import Expr, call, const, var
from .functor import (
    LiftedPoint,
    apply_alpha,
    prolong_iterated,
    prolong_map,
    reassociate,
)
from .mutants import MUTANTS, Ops, ops_for
from .scalars import EXACT, FLOAT, MODES, format_scalar

Poly = dict  # exponent tuple -> coefficient

DEFAULT_POOL = (
    "k",
    "D",
    {"name": "k[x]/(x^3)", "presentation": {"generators": 1, "relations": [[3]]}},
    {"name": "k[x,y]/(x^2,y^2)", "presentation": {"generators": 2, "relations": [[2, 0], [0, 2]]}},
    {"name": "D⊗D", "tensor": ["D", "D"]},
)

LAWS: dict[str, str] = {
    "tk_identity": "T^k = id; T^W f read through the augmentation is plain evaluation",
    "monoidal": "T^{W2} ∘ T^{W1} = T^{W1⊗W2}, and (W1⊗W2)⊗W3 ≅ W1⊗(W2⊗W3) under reassociation",
    "functoriality": "T^W(g∘f) = T^W g ∘ T^W f and T^W(id) = id",
    "products": "T^W(f×g) = T^W f × T^W g, T^W⟨f,g⟩ = ⟨T^W f, T^W g⟩, projections preserved",
    "alpha_functor": "α_ψ·α_φ = α_{ψ∘φ} and α_id = id",
    "alpha_naturality": "α_φ ∘ T^{W1} f = T^{W2} f ∘ α_φ",
    "algebra_object": "T^W R = R⊗W is a commutative k-algebra; α_φ(R) = R⊗φ",
}

WRAPPERS = ("sin", "cos", "exp_sin", "log1p_sq", "sqrt1p_sq")
TRIPLE_DIM_LIMIT = 32
MAX_COUNTEREXAMPLES = 3
SHRINK_BUDGET = 400


@dataclass
class LawConfig:
    seed: int = 42
    trials: int = 200
    algebra_pool: list = field(default_factory=lambda: list(DEFAULT_POOL))
    degree_bound: int = 4
    coeff_bound: int = 10
    denominator_bound: int = 10
    mode: str = EXACT
    tolerance: float = 1e-9
    mutant: str | None = None

    def validate(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit non-negative integer")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError("trials must be a positive integer")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.mode == FLOAT and not self.tolerance > 0:
            raise ConfigError("tolerance must be positive in float mode")
        if self.degree_bound < 0 or self.coeff_bound < 1 or self.denominator_bound < 1:
            raise ConfigError("corpus bounds must be positive")
        if self.mutant is not None and self.mutant not in MUTANTS:
            raise ConfigError(f"unknown mutant {self.mutant!r}; known: {sorted(MUTANTS)}")
        if not self.algebra_pool:
            raise ConfigError("algebra pool is empty")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "LawConfig":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config fields {sorted(unknown)}")
        return cls(**data)


@dataclass
class Case:
    polys: list = field(default_factory=list)
    points: list = field(default_factory=list)  # list of points; point = list of coefficient lists
    fixed: dict = field(default_factory=dict)

    def copy(self) -> "Case":
        return Case([dict(p) for p in self.polys], [[list(c) for c in p] for p in self.points], self.fixed)

    def size(self) -> float:
        s = 0.0
        for p in self.polys:
            for exps, c in p.items():
                s += 1 + sum(exps) + _scalar_size(c)
        for pt in self.points:
            for coord in pt:
                s += sum(_scalar_size(c) for c in coord)
        return s

    def to_json(self) -> dict:
        fixed = {}
        for k, v in self.fixed.items():
            if isinstance(v, WeilAlgebra):
                fixed[k] = v.name or v.id
            elif isinstance(v, AlgebraHom):
                fixed[k] = hom_to_json(v)
            else:
                fixed[k] = v
        return {
            "polys": [
                [[list(e), format_scalar(c)] for e, c in sorted(p.items())] for p in self.polys
            ],
            "points": [[[format_scalar(c) for c in coord] for coord in pt] for pt in self.points],
            "fixed": fixed,
        }


def _scalar_size(c) -> float:
    if isinstance(c, Fraction):
        return abs(c.numerator) + c.denominator - 1
    return abs(c) + (0 if float(c).is_integer() else 1)


class Context:
    """Pool, ops and comparison rules shared by all checks of one run."""

    def __init__(self, config: LawConfig) -> None:
        self.config = config
        self.mode = config.mode
        self.ops: Ops = ops_for(config.mutant)
        try:
            pool = [algebra_from_spec(s, self.mode, self.ops.tensor) for s in config.algebra_pool]
        except WeilError as exc:
            raise ConfigError(f"invalid algebra pool: {exc}") from exc
        self.pool = [self.ops.transform(w) for w in pool]
        self.k = ground_field(self.mode)

    def scalar(self, rng: random.Random):
        c = self.config
        den = rng.randint(1, c.denominator_bound)
        q = Fraction(rng.randint(-c.coeff_bound * den, c.coeff_bound * den), den)
        return q if self.mode == EXACT else float(q)

    def poly(self, rng: random.Random, nvars: int) -> Poly:
        p: Poly = {}
        for _ in range(rng.randint(1, 4)):
            deg = rng.randint(0, self.config.degree_bound)
            exps = [0] * nvars
            for _ in range(deg if nvars else 0):
                exps[rng.randrange(nvars)] += 1
            p[tuple(exps)] = p.get(tuple(exps), 0) + self.scalar(rng)
        return p

    def coords(self, rng: random.Random, w: WeilAlgebra, n: int) -> list:
        return [[self.scalar(rng) for _ in range(w.dim)] for _ in range(n)]

    def algebra(self, rng: random.Random) -> WeilAlgebra:
        return rng.choice(self.pool)

    def wrapper(self, rng: random.Random) -> str | None:
        if self.mode == EXACT or rng.random() < 0.5:
            return None
        return rng.choice(WRAPPERS)

    def close(self, a, b) -> bool:
        if self.mode == EXACT:
            return a == b
        scale = max([1.0] + [abs(x) for x in a] + [abs(x) for x in b])
        return all(abs(x - y) <= self.config.tolerance * scale for x, y in zip(a, b))

    def random_hom(self, rng: random.Random, source: WeilAlgebra, target: WeilAlgebra) -> AlgebraHom:
        """A random algebra hom; falls back to the map through k when sampling keeps failing."""
        if source.dim == 1:
            return AlgebraHom(source, target, tuple((c,) for c in target.unit().coeffs))
        if source == target and rng.random() < 0.15:
            return identity_hom(source)
        if source.factors is not None:
            a, b = source.factors
            f, g = self.random_hom(rng, a, target), self.random_hom(rng, b, target)
            cols = [target.mul_coeffs(f.column(i), g.column(j))
                    for i in range(a.dim) for j in range(b.dim)]
            return AlgebraHom(source, target, tuple(zip(*cols)))
        p = source.presentation
        nil = [i for i in range(target.dim) if target.augmentation[i] == 0]
        for _ in range(20):
            images = []
            for _ in range(p.generators):
                coeffs = [target.scalar(0)] * target.dim
                for i in rng.sample(nil, rng.randint(0, min(2, len(nil)))) if nil else []:
                    coeffs[i] = self.scalar(rng)
                images.append(target.element(coeffs))
            try:
                h = hom_from_images(source, target, images, check=False)
                return AlgebraHom(source, target, h.matrix)
            except RelationViolation:
                continue
        z = [target.zero()] * p.generators
        return AlgebraHom(source, target, hom_from_images(source, target, z, check=False).matrix)


# expressions ---------------------------------------------------------------

def poly_expr(p: Poly, names: list[str]) -> Expr:
    terms = []
    for exps, c in sorted(p.items()):
        factors = [var(n) ** e if e > 1 else var(n) for n, e in zip(names, exps) if e]
        coef = const(Fraction(c) if not isinstance(c, float) else c)
        terms.append(Expr("mul", (coef, *factors)) if factors else coef)
    return Expr("add", tuple(terms)) if terms else const(0)


def wrap(e: Expr, wrapper: str | None) -> Expr:
    if wrapper is None:
        return e
    if wrapper == "exp_sin":
        return call("exp", call("sin", e))
    if wrapper == "log1p_sq":
        return call("log", 1 + e * e)
    if wrapper == "sqrt1p_sq":
        return call("sqrt", 1 + e * e)
    return call(wrapper, e)


def _names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


def _point(w: WeilAlgebra, coords: list) -> LiftedPoint:
    return LiftedPoint(w, tuple(WeilElement(w, tuple(c)) for c in coords))


def _coeffs(p: LiftedPoint) -> list:
    return [list(x.coeffs) for x in p.coords]


def _mismatch(ctx: Context, check: str, lhs: list, rhs: list) -> dict | None:
    if len(lhs) == len(rhs) and all(ctx.close(a, b) for a, b in zip(lhs, rhs)):
        return None
    return {
        "check": check,
        "lhs": [[format_scalar(c) for c in v] for v in lhs],
        "rhs": [[format_scalar(c) for c in v] for v in rhs],
    }


def _first(*results):
    return next((r for r in results if r is not None), None)


# law families ----------------------------------------------------------------

def gen_tk_identity(ctx: Context, rng: random.Random) -> Case:
    n = rng.randint(1, 2)
    w = ctx.algebra(rng)
    return Case([ctx.poly(rng, n)], [ctx.coords(rng, ctx.k, n), ctx.coords(rng, w, n)],
                {"W": w, "wrapper": ctx.wrapper(rng)})


def check_tk_identity(ctx: Context, case: Case):
    w, n = case.fixed["W"], len(case.points[0])
    names = _names("x", n)
    f = wrap(poly_expr(case.polys[0], names), case.fixed["wrapper"])
    k_pt = _point(ctx.k, case.points[0])
    plain = f.evaluate(dict(zip(names, (c[0] for c in case.points[0]))))
    lifted = prolong_map([f], ctx.k, names)(k_pt)
    w_pt = _point(w, case.points[1])
    through_aug = apply_alpha(augmentation_hom(w), prolong_map([f], w, names)(w_pt))
    base = [x.aug for x in w_pt.coords]
    plain_base = f.evaluate(dict(zip(names, base)))
    return _first(
        _mismatch(ctx, "T^k f = f", _coeffs(lifted), [[plain]]),
        _mismatch(ctx, "aug(T^W f(p)) = f(aug p)", _coeffs(through_aug), [[plain_base]]),
    )


def gen_monoidal(ctx: Context, rng: random.Random) -> Case:
    n = rng.randint(1, 2)
    w1, w2, w3 = ctx.algebra(rng), ctx.algebra(rng), ctx.algebra(rng)
    t12 = ctx.ops.tensor(w1, w2)
    points = [ctx.coords(rng, t12, n)]
    if t12.dim * w3.dim <= TRIPLE_DIM_LIMIT:
        points.append(ctx.coords(rng, ctx.ops.tensor(t12, w3), n))
    return Case([ctx.poly(rng, n)], points,
                {"W1": w1, "W2": w2, "W3": w3, "wrapper": ctx.wrapper(rng)})


def check_monoidal(ctx: Context, case: Case):
    w1, w2, w3 = case.fixed["W1"], case.fixed["W2"], case.fixed["W3"]
    n = len(case.points[0])
    names = _names("x", n)
    f = wrap(poly_expr(case.polys[0], names), case.fixed["wrapper"])
    t12 = ctx.ops.tensor(w1, w2)
    p = _point(t12, case.points[0])
    iterated = prolong_iterated([f], p, names)
    direct = prolong_map([f], t12, names)(p)
    result = _mismatch(ctx, "T^W2(T^W1 f) = T^(W1⊗W2) f", _coeffs(iterated), _coeffs(direct))
    if result is not None or len(case.points) < 2:
        return result
    left = ctx.ops.tensor(t12, w3)
    right = ctx.ops.tensor(w1, ctx.ops.tensor(w2, w3))
    q = _point(left, case.points[1])
    via_left = reassociate(prolong_map([f], left, names)(q), right)
    via_right = prolong_map([f], right, names)(reassociate(q, right))
    return _mismatch(ctx, "reassociate((W1⊗W2)⊗W3) commutes with T f", _coeffs(via_left), _coeffs(via_right))


def gen_functoriality(ctx: Context, rng: random.Random) -> Case:
    m, p, q = rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 2)
    w = ctx.algebra(rng)
    polys = [ctx.poly(rng, m) for _ in range(p)] + [ctx.poly(rng, p) for _ in range(q)]
    return Case(polys, [ctx.coords(rng, w, m)],
                {"W": w, "m": m, "p": p, "q": q, "wrapper": ctx.wrapper(rng)})


def check_functoriality(ctx: Context, case: Case):
    w, m, p = case.fixed["W"], case.fixed["m"], case.fixed["p"]
    xs, ys = _names("x", m), _names("y", p)
    fs = [poly_expr(h, xs) for h in case.polys[:p]]
    gs = [wrap(poly_expr(h, ys), case.fixed["wrapper"]) for h in case.polys[p:]]
    composite = [g.substitute(dict(zip(ys, fs))) for g in gs]
    pt = _point(w, case.points[0])
    lhs = prolong_map(composite, w, xs)(pt)
    rhs = prolong_map(gs, w, ys)(prolong_map(fs, w, xs)(pt))
    ident = prolong_map([var(x) for x in xs], w, xs)(pt)
    return _first(
        _mismatch(ctx, "T(g∘f) = Tg∘Tf", _coeffs(lhs), _coeffs(rhs)),
        _mismatch(ctx, "T(id) = id", _coeffs(ident), _coeffs(pt)),
    )


def gen_products(ctx: Context, rng: random.Random) -> Case:
    m, n = rng.randint(1, 2), rng.randint(1, 2)
    w = ctx.algebra(rng)
    polys = [ctx.poly(rng, m), ctx.poly(rng, n), ctx.poly(rng, m)]
    return Case(polys, [ctx.coords(rng, w, m), ctx.coords(rng, w, n)],
                {"W": w, "wrapper": ctx.wrapper(rng)})


def check_products(ctx: Context, case: Case):
    w = case.fixed["W"]
    m, n = len(case.points[0]), len(case.points[1])
    xs, zs = _names("x", m), _names("z", n)
    f = wrap(poly_expr(case.polys[0], xs), case.fixed["wrapper"])
    g = poly_expr(case.polys[1], zs)
    h = poly_expr(case.polys[2], xs)
    p1, p2 = _point(w, case.points[0]), _point(w, case.points[1])
    both = prolong_map([f, g], w, xs + zs)(p1 + p2)
    separate = prolong_map([f], w, xs)(p1) + prolong_map([g], w, zs)(p2)
    paired = prolong_map([f, h], w, xs)(p1)
    pair_of = prolong_map([f], w, xs)(p1) + prolong_map([h], w, xs)(p1)
    proj = prolong_map([var(v) for v in xs + zs], w, xs + zs)(p1 + p2)
    return _first(
        _mismatch(ctx, "T(f×g) = Tf×Tg", _coeffs(both), _coeffs(separate)),
        _mismatch(ctx, "T⟨f,h⟩ = ⟨Tf,Th⟩", _coeffs(paired), _coeffs(pair_of)),
        _mismatch(ctx, "T(projections) = projections", _coeffs(proj), _coeffs(p1 + p2)),
    )


def gen_alpha_functor(ctx: Context, rng: random.Random) -> Case:
    w1, w2, w3 = ctx.algebra(rng), ctx.algebra(rng), ctx.algebra(rng)
    phi, psi = ctx.random_hom(rng, w1, w2), ctx.random_hom(rng, w2, w3)
    return Case([], [ctx.coords(rng, w1, rng.randint(1, 2))], {"phi": phi, "psi": psi})


def check_alpha_functor(ctx: Context, case: Case):
    phi, psi = case.fixed["phi"], case.fixed["psi"]
    p = _point(phi.source, case.points[0])
    stepwise = apply_alpha(psi, apply_alpha(phi, p))
    composed = apply_alpha(ctx.ops.compose(psi, phi), p)
    ident = apply_alpha(identity_hom(phi.source), p)
    return _first(
        _mismatch(ctx, "α_ψ(α_φ(p)) = α_{ψ∘φ}(p)", _coeffs(stepwise), _coeffs(composed)),
        _mismatch(ctx, "α_id(p) = p", _coeffs(ident), _coeffs(p)),
    )


def gen_alpha_naturality(ctx: Context, rng: random.Random) -> Case:
    n = rng.randint(1, 2)
    w1, w2 = ctx.algebra(rng), ctx.algebra(rng)
    return Case([ctx.poly(rng, n), ctx.poly(rng, n)], [ctx.coords(rng, w1, n)],
                {"phi": ctx.random_hom(rng, w1, w2), "wrapper": ctx.wrapper(rng)})


def check_alpha_naturality(ctx: Context, case: Case):
    phi = case.fixed["phi"]
    names = _names("x", len(case.points[0]))
    fs = [wrap(poly_expr(case.polys[0], names), case.fixed["wrapper"]), poly_expr(case.polys[1], names)]
    p = _point(phi.source, case.points[0])
    lhs = apply_alpha(phi, prolong_map(fs, phi.source, names)(p))
    rhs = prolong_map(fs, phi.target, names)(apply_alpha(phi, p))
    return _mismatch(ctx, "α_φ ∘ T^W1 f = T^W2 f ∘ α_φ", _coeffs(lhs), _coeffs(rhs))


def gen_algebra_object(ctx: Context, rng: random.Random) -> Case:
    n = rng.randint(1, 2)
    w = ctx.algebra(rng)
    w1, w2 = ctx.algebra(rng), ctx.algebra(rng)
    return Case([ctx.poly(rng, n)],
                [ctx.coords(rng, w, 3), ctx.coords(rng, w, n), ctx.coords(rng, w1, 2)],
                {"W": w, "phi": ctx.random_hom(rng, w1, w2)})


def taylor_value(p: Poly, coords: list[WeilElement]) -> WeilElement:
    """Independent evaluation: expand p(a + h) in rationals, then substitute h = nilpotent parts."""
    w = coords[0].algebra
    bases = [c.aug for c in coords]
    nils = [c.nilpotent_part() for c in coords]
    shifted: dict[tuple, Any] = {}
    for exps, c in p.items():
        per_var = [
            [(k, comb(e, k) * a ** (e - k)) for k in range(e + 1)] for e, a in zip(exps, bases)
        ]
        combos = [((), c)]
        for choices in per_var:
            combos = [(ks + (k,), v * b) for ks, v in combos for k, b in choices]
        for ks, v in combos:
            shifted[ks] = shifted.get(ks, 0) + v
    total = w.zero()
    for ks, v in shifted.items():
        term = w.constant(w.scalar(1))
        for n_i, k in zip(nils, ks):
            for _ in range(k):
                term = multiply_elements(term, n_i)
        total = total + term * v
    return total


def check_algebra_object(ctx: Context, case: Case):
    w, phi = case.fixed["W"], case.fixed["phi"]
    x, y, z = (WeilElement(w, tuple(c)) for c in case.points[0])
    one = w.unit()
    mul = multiply_elements
    ring = _first(
        _mismatch(ctx, "xy = yx", [mul(x, y).coeffs], [mul(y, x).coeffs]),
        _mismatch(ctx, "(xy)z = x(yz)", [mul(mul(x, y), z).coeffs], [mul(x, mul(y, z)).coeffs]),
        _mismatch(ctx, "x(y+z) = xy+xz", [mul(x, y + z).coeffs], [(mul(x, y) + mul(x, z)).coeffs]),
        _mismatch(ctx, "1x = x", [mul(one, x).coeffs], [x.coeffs]),
    )
    if ring is not None:
        return ring
    names = _names("x", len(case.points[1]))
    pt = _point(w, case.points[1])
    lifted = prolong_map([poly_expr(case.polys[0], names)], w, names)(pt)
    oracle = taylor_value(case.polys[0], list(pt.coords))
    lift_check = _mismatch(ctx, "lifted f(a+n) = Σ ∂f(a) n^β/β!", _coeffs(lifted), [list(oracle.coeffs)])
    if lift_check is not None:
        return lift_check
    u, v = (WeilElement(phi.source, tuple(c)) for c in case.points[2])
    by_matrix = [
        sum((phi.matrix[r][c] * u.coeffs[c] for c in range(phi.source.dim)), phi.target.scalar(0))
        for r in range(phi.target.dim)
    ]
    mapped = apply_alpha(phi, LiftedPoint(phi.source, (u,)))
    return _first(
        _mismatch(ctx, "α_φ(R) = matrix of φ", _coeffs(mapped), [by_matrix]),
        _mismatch(ctx, "φ(uv) = φ(u)φ(v)", [phi(mul(u, v)).coeffs], [mul(phi(u), phi(v)).coeffs]),
        _mismatch(ctx, "φ(1) = 1", [phi(phi.source.unit()).coeffs], [phi.target.unit().coeffs]),
    )


FAMILIES: dict[str, tuple[Callable, Callable]] = {
    "tk_identity": (gen_tk_identity, check_tk_identity),
    "monoidal": (gen_monoidal, check_monoidal),
    "functoriality": (gen_functoriality, check_functoriality),
    "products": (gen_products, check_products),
    "alpha_functor": (gen_alpha_functor, check_alpha_functor),
    "alpha_naturality": (gen_alpha_naturality, check_alpha_naturality),
    "algebra_object": (gen_algebra_object, check_algebra_object),
}


# running, shrinking, reporting ---------------------------------------------------

def trial_rng(seed: int, law: str, trial: int) -> random.Random:
    return random.Random(f"{seed}:{law}:{trial}")


def _run_check(check: Callable, ctx: Context, case: Case):
    try:
        return check(ctx, case)
    except (WeilError, ArithmeticError) as exc:
        return {"check": "raised", "error": f"{type(exc).__name__}: {exc}"}


def _smaller_scalars(c) -> list:
    out = [c * 0, c * 0 + 1, c * 0 - 1]
    if isinstance(c, Fraction):
        out.append(Fraction(int(c)))
        out.append(Fraction(c.numerator // 2, c.denominator))
    else:
        out.append(float(int(c)))
        out.append(c / 2)
    return [v for v in out if v != c]


def _candidates(case: Case):
    for i, p in enumerate(case.polys):
        for exps in sorted(p):
            smaller = case.copy()
            del smaller.polys[i][exps]
            yield smaller
            for j, e in enumerate(exps):
                if e:
                    lowered = case.copy()
                    c = lowered.polys[i].pop(exps)
                    new = exps[:j] + (e - 1,) + exps[j + 1:]
                    lowered.polys[i][new] = lowered.polys[i].get(new, 0) + c
                    yield lowered
            for v in _smaller_scalars(p[exps]):
                changed = case.copy()
                changed.polys[i][exps] = v
                yield changed
    for i, pt in enumerate(case.points):
        for j, coord in enumerate(pt):
            for k, c in enumerate(coord):
                for v in _smaller_scalars(c):
                    changed = case.copy()
                    changed.points[i][j][k] = v
                    yield changed


def shrink(check: Callable, ctx: Context, case: Case, budget: int = SHRINK_BUDGET) -> tuple[Case, dict, int]:
    """Greedy shrink: accept any strictly smaller case that still fails, until none does."""
    current, result = case, _run_check(check, ctx, case)
    steps = 0
    improved = True
    while improved and steps < budget:
        improved = False
        size = current.size()
        for cand in _candidates(current):
            if cand.size() >= size:
                continue
            steps += 1
            r = _run_check(check, ctx, cand)
            if r is not None:
                current, result, improved = cand, r, True
                break
            if steps >= budget:
                break
    return current, result, steps


def run_law(ctx: Context, law: str) -> dict:
    gen, check = FAMILIES[law]
    config = ctx.config
    failures = 0
    examples = []
    for t in range(config.trials):
        case = gen(ctx, trial_rng(config.seed, law, t))
        result = _run_check(check, ctx, case)
        if result is None:
            continue
        failures += 1
        if len(examples) < MAX_COUNTEREXAMPLES:
            shrunk, shrunk_result, steps = shrink(check, ctx, case)
            examples.append({
                "trial": t,
                "case": case.to_json(),
                "mismatch": result,
                "shrunk_case": shrunk.to_json(),
                "shrunk_mismatch": shrunk_result,
                "shrink_steps": steps,
            })
    return {
        "id": law,
        "axiom": LAWS[law],
        "trials": config.trials,
        "failures": failures,
        "counterexamples": examples,
        "status": "pass" if failures == 0 else "fail",
    }


def run_laws(config: LawConfig) -> dict:
    """Run every law family; the result is a JSON-ready report, deterministic in the config."""
    config.validate()
    ctx = Context(config)
    laws = [run_law(ctx, law) for law in LAWS]
    return {
        "config": config.to_json(),
        "pool": [w.name or w.id for w in ctx.pool],
        "laws": laws,
        "status": "pass" if all(entry["status"] == "pass" for entry in laws) else "fail",
    }


def replay(config: LawConfig, law: str, trial: int):
    """Regenerate one trial and re-run its check; returns the mismatch or None."""
    config.validate()
    ctx = Context(config)
    gen, check = FAMILIES[law]
    return _run_check(check, ctx, gen(ctx, trial_rng(config.seed, law, trial)))
