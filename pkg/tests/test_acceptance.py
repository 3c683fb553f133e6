"""Acceptance criteria, one test each. Run with ``-s`` to see the PASS/FAIL lines."""

import random
import subprocess
import sys
import time
from fractions import Fraction

import sympy

from weilkit import (
    ImplicitFigure,
    LawConfig,
    WeilPresentation,
    build_from_presentation,
    eval_expression,
    first_order_fiber,
    intersect_first_order,
    is_w_point,
    parse,
    point,
    prolong_map,
    reassociate,
    run_laws,
    tensor_algebra,
)
from weilkit.algebra import float_version, ground_field
from weilkit.functor import prolong_iterated
from weilkit.mutants import MUTANTS

D = build_from_presentation(WeilPresentation(1, [[2]]), name="D")
Df = float_version(D)
DDf = tensor_algebra(Df, Df)


def report(n: int, title: str, ok: bool, detail: str = "") -> None:
    print(f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else ""))
    assert ok, detail


def test_1_axiom_suite():
    start = time.perf_counter()
    result = run_laws(LawConfig(seed=42, trials=200, mode="exact"))
    elapsed = time.perf_counter() - start
    failures = {e["id"]: e["failures"] for e in result["laws"]}
    ok = result["status"] == "pass" and len(failures) == 7 and elapsed < 60
    report(1, "axiom suite, exact, seed 42, 200 trials", ok,
           f"{sum(failures.values())} failures over {len(failures)} families in {elapsed:.1f}s")


def test_2_mutation_detection():
    lines = []
    ok = len(MUTANTS) == 3
    for mutant in sorted(MUTANTS):
        result = run_laws(LawConfig(seed=42, trials=50, mutant=mutant))
        failing = [e for e in result["laws"] if e["status"] == "fail"]
        shrunk = [ce for e in failing for ce in e["counterexamples"] if ce["shrunk_mismatch"] is not None]
        ok = ok and result["status"] == "fail" and bool(shrunk)
        lines.append(f"{mutant} -> {','.join(e['id'] for e in failing)}")
    report(2, "three mutants caught with shrunk counterexamples", ok, "; ".join(lines))


CORPUS = {
    "exp(x)": "exp(x)",
    "log(x)": "log(x)",
    "sin(x)": "sin(x)",
    "cos(x)": "cos(x)",
    "sqrt(x)": "sqrt(x)",
    "(x^2 - 3*x + 1)/(x^2 + 1)": "(x**2 - 3*x + 1)/(x**2 + 1)",
    "1/(x + 2) - x^3/(4 + x)": "1/(x + 2) - x**3/(4 + x)",
}


def test_3_ad_oracle():
    rng = random.Random(2024)
    x = sympy.Symbol("x")
    worst_fd = worst_sym = 0.0
    h = 1e-5
    for text, sym_text in CORPUS.items():
        e = parse(text)
        sym = sympy.sympify(sym_text)
        f = sympy.lambdify(x, sym, "math")
        d2 = sympy.lambdify(x, sympy.diff(sym, x, 2), "math")
        for _ in range(50):
            a = rng.uniform(0.2, 3.0)
            first = eval_expression(e, {"x": Df.element([a, 1.0])}, Df).coeffs[1]
            fd = (f(a + h) - f(a - h)) / (2 * h)
            worst_fd = max(worst_fd, abs(first - fd) / max(abs(fd), 1.0))
            second = eval_expression(e, {"x": DDf.element([a, 1.0, 1.0, 0.0])}, DDf).coeffs[3]
            exact = d2(a)
            worst_sym = max(worst_sym, abs(second - exact) / max(abs(exact), 1e-300))
    ok = worst_fd <= 1e-6 and worst_sym <= 1e-5
    report(3, "AD vs finite differences and symbolic second derivatives", ok,
           f"max rel err first {worst_fd:.2e}, second {worst_sym:.2e}")


def test_4_jet_completeness():
    k6 = build_from_presentation(WeilPresentation(1, [[6]]))
    rng = random.Random(6)
    x = sympy.Symbol("x")
    checked = 0
    ok = True
    for degree in range(6):
        for _ in range(5):
            cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(degree + 1)]
            a = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            text = " + ".join(f"({c})*x^{i}" for i, c in enumerate(cs))
            got = eval_expression(parse(text), {"x": k6.element([a, 1, 0, 0, 0, 0])}, k6).coeffs
            poly = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(cs))
            at = sympy.Rational(a.numerator, a.denominator)
            want = [sympy.diff(poly, x, j).subs(x, at) / sympy.factorial(j) for j in range(6)]
            ok = ok and [sympy.Rational(c.numerator, c.denominator) for c in got] == want
            checked += 1
    report(4, "degree <= 5 jets over k[x]/(x^6) are exact", ok, f"{checked} polynomials")


def _fig(eq):
    return ImplicitFigure.from_json({"ambient_dim": 2, "variables": ["x", "y"], "equations": [eq]})


def test_5_first_order_intersections():
    line, parabola, diagonal, double = _fig("y"), _fig("y - x^2"), _fig("y - x"), _fig("y^2")
    tangential = intersect_first_order(line, parabola, [0, 0]).dimension
    transversal = intersect_first_order(line, diagonal, [0, 0]).dimension
    rng = random.Random(5)
    k = ground_field("float")
    same = 0
    for _ in range(100):
        yv = 0.0 if rng.random() < 0.5 else rng.uniform(-2, 2)
        p = point(k, [rng.uniform(-2, 2), yv])
        same += is_w_point(line, p) == is_w_point(double, p)
    dims = (first_order_fiber(line, [0, 0]).dimension, first_order_fiber(double, [0, 0]).dimension)
    ok = tangential == 1 and transversal == 0 and same == 100 and dims == (1, 2)
    report(5, "tangential vs transversal, y=0 vs y^2=0", ok,
           f"tangential {tangential}, transversal {transversal}, membership agrees {same}/100, fibers {dims}")


def test_6_monoidal_second_order():
    DD = tensor_algebra(D, D)
    cube = [parse("x^3")]
    rng = random.Random(66)
    agree = 0
    for _ in range(100):
        coeffs = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(4)]
        p = point(DD, [coeffs])
        iterated = prolong_iterated(cube, p, ["x"])
        direct = prolong_map(cube, DD, ["x"])(p)
        agree += reassociate(iterated, DD) == direct
    top = prolong_map(cube, DD, ["x"])(point(DD, [[1, 1, 1, 0]])).coords[0].coeffs[3]
    # the same law one level up, where reassociation actually permutes coordinates
    DDD_l, DDD_r = tensor_algebra(DD, D), tensor_algebra(D, DD)
    q = point(DDD_l, [[Fraction(i + 1, 3) for i in range(8)]])
    triple = reassociate(prolong_map(cube, DDD_l, ["x"])(q), DDD_r) == \
        prolong_map(cube, DDD_r, ["x"])(reassociate(q, DDD_r))
    ok = agree == 100 and top == 6 and triple
    report(6, "x^3 through D then D equals D⊗D", ok, f"{agree}/100 points agree, eps⊗eps coefficient {top}")


def test_7_demo_determinism():
    runs = [subprocess.run([sys.executable, "-m", "weilkit.demo"], capture_output=True, check=False)
            for _ in range(2)]
    ok = all(r.returncode == 0 for r in runs) and runs[0].stdout and runs[0].stdout == runs[1].stdout
    report(7, "demo output is byte-identical across runs", bool(ok), f"{len(runs[0].stdout)} bytes")
