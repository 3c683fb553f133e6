"""Replay the worked examples as CLI invocations and print a transcript.

    python -m weilkit.demo > transcript.txt

The transcript is deterministic: running it twice gives identical bytes.
"""

from __future__ import annotations

import io
import json
import sys

from .cli import main

D = "D"
K3 = {"name": "k[x]/(x^3)", "presentation": {"generators": 1, "relations": [[3]]}}
DD = {"name": "D⊗D", "tensor": ["D", "D"]}


def _fig(*equations):
    return {"ambient_dim": 2, "variables": ["x", "y"], "equations": list(equations)}


INVOCATIONS: list[tuple[str, list[str], object]] = [
    # algebras
    ("dual numbers", ["algebra", "build"], {"generators": 1, "relations": [[2]]}),
    ("empty presentation is k", ["algebra", "build"], {"generators": 0, "relations": []}),
    ("k[x,y]/(x^2,y^2)", ["algebra", "build"], {"generators": 2, "relations": [[2, 0], [0, 2]]}),
    ("missing pure power is rejected", ["algebra", "build"], {"generators": 2, "relations": [[2, 0]]}),
    ("hand-entered dual-number table", ["algebra", "check"],
     {"structure_constants": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "unit_index": 0, "augmentation": [1, 0]}),
    ("k x k is not a Weil algebra", ["algebra", "check"],
     {"structure_constants": [[[1, 0], [0, 1]], [[0, 1], [0, 1]]], "unit_index": 0, "augmentation": [1, 0]}),
    ("one-dimensional table", ["algebra", "check"],
     {"structure_constants": [[[1]]], "unit_index": 0, "augmentation": [1]}),
    ("k tensor D", ["algebra", "tensor"], {"factors": ["k", D]}),
    ("D tensor D", ["algebra", "tensor"], {"factors": [D, D]}),
    ("k[x]/(x^3) tensor D", ["algebra", "tensor"], {"factors": [K3, D]}),
    # homs
    ("D -> D, eps -> 0", ["algebra", "hom"], {"source": D, "target": D, "images": [[0, 0]], "apply": [[3, 5]]}),
    ("D -> D⊗D, eps -> eps⊗eps", ["algebra", "hom"],
     {"source": D, "target": DD, "images": [[0, 0, 0, 1]], "apply": [["2", "7"]]}),
    ("D -> D⊗D, eps -> eps⊗1 + 1⊗eps is rejected", ["algebra", "hom"],
     {"source": D, "target": DD, "images": [[0, 1, 1, 0]]}),
    # element arithmetic
    ("(1+eps)(1-eps) in D", ["lift"], {"algebra": D, "expression": "a*b", "env": {"a": [1, 1], "b": [1, -1]}}),
    ("(eps⊗1)(1⊗eps) in D⊗D", ["lift"],
     {"algebra": DD, "expression": "a*b", "env": {"a": [0, 0, 1, 0], "b": [0, 1, 0, 0]}}),
    ("invert 1+eps", ["lift"], {"algebra": D, "expression": "1/a", "env": {"a": [1, 1]}}),
    ("invert 2", ["lift"], {"algebra": D, "expression": "1/a", "env": {"a": [2, 0]}}),
    ("invert eps fails", ["lift"], {"algebra": D, "expression": "1/a", "env": {"a": [0, 1]}}),
    # lifting
    ("x*x at delta in k[x]/(x^3)", ["lift"], {"algebra": K3, "expression": "x*x", "env": {"x": [0, 1, 0]}}),
    ("exp at eps", ["lift", "--mode", "float"], {"algebra": D, "expression": "exp(x)", "env": {"x": [0, 1]}}),
    ("1/(1+x) at eps", ["lift"], {"algebra": D, "expression": "1/(1+x)", "env": {"x": [0, 1]}}),
    ("sin at pi/3 + 2 eps", ["lift", "--mode", "float"],
     {"algebra": D, "expression": "sin(x)", "env": {"x": [1.0471975511965976, 2.0]}}),
    ("(x^2, xy) at (1+eps, 2)", ["lift"],
     {"algebra": D, "expressions": ["x^2", "x*y"], "env": {"x": [1, 1], "y": 2}}),
    ("over k this is plain evaluation", ["lift"],
     {"algebra": "k", "expressions": ["x^2", "x*y"], "env": {"x": [3], "y": [2]}}),
    ("x^3 over D⊗D at 1 + eps⊗1 + 1⊗eps", ["lift"],
     {"algebra": DD, "expression": "x^3", "env": {"x": [1, 1, 1, 0]}}),
    # laws
    ("axiom suite", ["laws", "--mode", "exact", "--seed", "42", "--trials", "200"], None),
    ("axiom suite over D only", ["laws"], {"algebra_pool": ["D"], "trials": 100}),
    ("axiom suite over k only", ["laws"], {"algebra_pool": ["k"], "trials": 50}),
    ("broken commutativity is caught", ["laws", "--trials", "20", "--mutant", "noncommutative"], None),
    ("broken alpha composition is caught", ["laws", "--trials", "20", "--mutant", "alpha-composition"], None),
    ("broken tensor table is caught", ["laws", "--trials", "20", "--mutant", "tensor-constants"], None),
    # figures
    ("fiber of y = 0", ["figure", "fiber"], {"figure": _fig("y"), "base": [0, 0]}),
    ("fiber of y = x^2", ["figure", "fiber"], {"figure": _fig("y - x^2"), "base": [0, 0]}),
    ("fiber of y^2 = 0", ["figure", "fiber"], {"figure": _fig("y^2"), "base": [0, 0]}),
    ("tangential intersection", ["figure", "intersect"],
     {"figures": [_fig("y"), _fig("y - x^2")], "base": [0, 0]}),
    ("transversal intersection", ["figure", "intersect"],
     {"figures": [_fig("y"), _fig("y - x")], "base": [0, 0]}),
    ("self intersection", ["figure", "intersect"],
     {"figures": [_fig("y - x^2"), _fig("y - x^2")], "base": [0, 0]}),
]


def run_invocation(argv: list[str], payload) -> tuple[int, str, str]:
    args = list(argv)
    if payload is not None:
        args += ["--json", json.dumps(payload, ensure_ascii=False)]
    out, err = io.StringIO(), io.StringIO()
    status = main(args, stdin=io.StringIO(""), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def transcript() -> str:
    lines = []
    for title, argv, payload in INVOCATIONS:
        status, out, err = run_invocation(argv, payload)
        shown = " ".join(argv)
        if payload is not None:
            shown += " --json '" + json.dumps(payload, ensure_ascii=False) + "'"
        lines.append(f"# {title}")
        lines.append(f"$ weilkit {shown}")
        if out:
            lines.append(out.rstrip("\n"))
        if err:
            lines.append("stderr: " + err.rstrip("\n"))
        lines.append(f"[exit {status}]")
        lines.append("")
    return "\n".join(lines)


if __name__ == "__main__":
    sys.stdout.write(transcript())
