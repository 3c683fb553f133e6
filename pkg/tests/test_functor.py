import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from weilkit import (
    WeilPresentation,
    apply_alpha,
    build_from_presentation,
    compose_homs,
    eval_expression,
    hom_from_images,
    parse,
    point,
    prolong_map,
    reassociate,
    tensor_algebra,
)
from weilkit.algebra import float_version, ground_field, identity_hom
from weilkit.errors import AlgebraMismatchError, DomainError, ExpressionError, ModeError
from weilkit.functor import nest, prolong_iterated, unnest

F = Fraction
D = build_from_presentation(WeilPresentation(1, [[2]]), name="D")
K3 = build_from_presentation(WeilPresentation(1, [[3]]))
DD = tensor_algebra(D, D)
Df = float_version(D)
DDf = tensor_algebra(Df, Df)


def ev(text, w, **env):
    return eval_expression(parse(text), {k: w.element(v) for k, v in env.items()}, w)


# -- worked examples -----------------------------------------------------------

def test_square_of_delta():
    assert ev("x*x", K3, x=[0, 1, 0]).coeffs == (0, 0, 1)


def test_exp_at_eps():
    assert ev("exp(x)", Df, x=[0.0, 1.0]).coeffs == (1.0, 1.0)


def test_reciprocal_at_eps():
    assert ev("1/(1+x)", D, x=[0, 1]).coeffs == (1, -1)


def test_sin_against_finite_difference():
    a = math.pi / 3
    v = ev("sin(x)", Df, x=[a, 2.0]).coeffs
    assert v[0] == pytest.approx(math.sqrt(3) / 2)
    h = 1e-6
    fd = (math.sin(a + h) - math.sin(a - h)) / (2 * h)
    assert v[1] == pytest.approx(2 * fd, rel=1e-6)


def test_prolong_two_components():
    f = prolong_map([parse("x^2"), parse("x*y")], D, ["x", "y"])
    out = f(point(D, [[1, 1], 2]))
    assert [c.coeffs for c in out.coords] == [(1, 2), (2, 2)]


def test_over_k_is_evaluation():
    k = ground_field()
    f = prolong_map([parse("x^2"), parse("x*y")], k, ["x", "y"])
    assert [c.coeffs for c in f(point(k, [3, 2])).coords] == [(9,), (6,)]


def test_x_cubed_over_dd():
    assert ev("x^3", DD, x=[1, 1, 1, 0]).coeffs == (1, 3, 3, 6)


def test_constant_expression_is_wrapped():
    assert ev("2+3", D).coeffs == (5, 0)


# -- errors --------------------------------------------------------------------

def test_function_in_exact_mode():
    with pytest.raises(ModeError):
        ev("exp(x)", D, x=[0, 1])


def test_log_domain():
    with pytest.raises(DomainError):
        ev("log(x)", Df, x=[0.0, 1.0])
    with pytest.raises(DomainError):
        ev("sqrt(x)", Df, x=[-1.0, 1.0])


def test_missing_variable():
    with pytest.raises(ExpressionError):
        eval_expression(parse("x+y"), {"x": D.unit()}, D)


def test_wrong_algebra():
    with pytest.raises(AlgebraMismatchError):
        eval_expression(parse("x"), {"x": K3.unit()}, D)


def test_prolong_rejects_stray_variable():
    with pytest.raises(ExpressionError):
        prolong_map([parse("x+z")], D, ["x", "y"])


# -- alpha ---------------------------------------------------------------------

def test_alpha_is_coordinatewise():
    phi = hom_from_images(D, DD, [DD.element([0, 0, 0, 1])])
    p = point(D, [[2, 7], [1, -1]])
    q = apply_alpha(phi, p)
    assert [c.coeffs for c in q.coords] == [(2, 0, 0, 7), (1, 0, 0, -1)]


def test_alpha_identity_and_composition():
    phi = hom_from_images(D, K3, [K3.element([0, 0, 1])])
    psi = hom_from_images(K3, DD, [DD.element([0, 0, 0, 3])])
    p = point(D, [[2, 7], [F(1, 3), 4]])
    assert apply_alpha(identity_hom(D), p) == p
    assert apply_alpha(psi, apply_alpha(phi, p)) == apply_alpha(compose_homs(psi, phi), p)


def test_alpha_naturality_example():
    phi = hom_from_images(D, K3, [K3.element([0, 0, 1])])
    fs = [parse("x^3 - 2*x*y"), parse("y^2 + 1")]
    p = point(D, [[2, 1], [3, -1]])
    lhs = apply_alpha(phi, prolong_map(fs, D, ["x", "y"])(p))
    rhs = prolong_map(fs, K3, ["x", "y"])(apply_alpha(phi, p))
    assert lhs == rhs


# -- iterated prolongation and reassociation -----------------------------------

def test_nest_unnest_roundtrip():
    w = tensor_algebra(K3, D)
    p = point(w, [[F(i, 3) for i in range(6)]])
    assert unnest(nest(p)) == p


def test_iterated_equals_tensor():
    rng = random.Random(3)
    w = tensor_algebra(K3, D)
    fs = [parse("x^3*y - 2*y + 1"), parse("x*y^2")]
    for _ in range(10):
        p = point(w, [[F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(6)] for _ in range(2)])
        assert prolong_iterated(fs, p, ["x", "y"]) == prolong_map(fs, w, ["x", "y"])(p)


def test_reassociate_involution():
    left = tensor_algebra(DD, D)
    right = tensor_algebra(D, DD)
    p = point(left, [[F(i) for i in range(8)], [F(-i, 2) for i in range(8)]])
    q = reassociate(p, right)
    assert q.algebra == right
    assert reassociate(q, left) == p
    # eps (x) 1 (x) 1 sits at index 4 in both bracketings
    assert q.coords[0].coeffs[4] == 4


def test_reassociate_rejects_different_factors():
    with pytest.raises(AlgebraMismatchError):
        reassociate(point(tensor_algebra(D, K3), [[0] * 6]), tensor_algebra(K3, D))


# -- jets and AD oracles -------------------------------------------------------

def test_taylor_completeness_k6():
    k6 = build_from_presentation(WeilPresentation(1, [[6]]))
    x = sympy.Symbol("x")
    poly = 3 * x**5 - x**4 + sympy.Rational(2, 7) * x**2 - 5
    e = parse(str(poly).replace("**", "^"))
    for a in [F(0), F(1), F(-2, 3), F(5, 2)]:
        out = eval_expression(e, {"x": k6.element([a, 1, 0, 0, 0, 0])}, k6).coeffs
        expect = [sympy.diff(poly, x, j).subs(x, sympy.Rational(a.numerator, a.denominator))
                  / sympy.factorial(j) for j in range(6)]
        assert [sympy.Rational(c.numerator, c.denominator) for c in out] == expect


@pytest.mark.parametrize("text", [
    "exp(x)", "log(x)", "sin(x)", "cos(x)", "sqrt(x)", "(x^2+1)/(x+3)",
    "exp(sin(x))", "log(1+x^2)", "sqrt(x)*cos(x)",
])
def test_second_derivative_matches_sympy(text):
    x = sympy.Symbol("x")
    sym = sympy.sympify(text.replace("^", "**"))
    for a in [0.5, 1.3, 2.7]:
        out = ev(text, DDf, x=[a, 1.0, 1.0, 0.0]).coeffs
        assert out[1] == pytest.approx(float(sympy.diff(sym, x).subs(x, a)), rel=1e-9)
        assert out[3] == pytest.approx(float(sympy.diff(sym, x, 2).subs(x, a)), rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(-4, 4, max_denominator=5), min_size=4, max_size=4),
       st.fractions(-3, 3, max_denominator=5))
def test_polynomial_derivative_exact(cs, a):
    # f(a + eps) = f(a) + f'(a) eps for polynomials, exactly
    text = " + ".join(f"({c})*x^{i}" for i, c in enumerate(cs))
    out = ev(text, D, x=[a, 1]).coeffs
    assert out[0] == sum(c * a ** i for i, c in enumerate(cs))
    assert out[1] == sum(i * c * a ** (i - 1) for i, c in enumerate(cs) if i)
