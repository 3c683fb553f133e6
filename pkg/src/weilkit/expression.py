"""Closed term trees over named variables.

An ``Expr`` evaluates over any scalar-like values that support ``+ - * /``:
Fractions, floats, or Weil elements. That single evaluator is what makes the
prolongation of a map "the same formula, read in a bigger ring".

JSON form::

    {"var": "x"}
    {"const": "3/2"}
    {"op": "add" | "sub" | "mul" | "div", "args": [...]}
    {"op": "neg", "args": [e]}
    {"op": "pow", "args": [e], "exponent": 3}
    {"op": "exp" | "log" | "sin" | "cos" | "sqrt", "args": [e]}
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Mapping

from . import elementary
from .errors import ExpressionError

FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt")
_NARY = ("add", "mul")
_BINARY = ("sub", "div")


@dataclass(frozen=True)
class Expr:
    op: str
    args: tuple["Expr", ...] = ()
    name: str | None = None
    value: Fraction | None = None
    exponent: int | None = None

    def __post_init__(self) -> None:
        op, n = self.op, len(self.args)
        ok = (
            (op == "var" and self.name is not None and n == 0)
            or (op == "const" and self.value is not None and n == 0)
            or (op in _NARY and n >= 1)
            or (op in _BINARY and n == 2)
            or (op in ("neg", *FUNCTIONS) and n == 1)
            or (op == "pow" and n == 1 and isinstance(self.exponent, int))
        )
        if not ok:
            raise ExpressionError(f"malformed {op!r} node with {n} arguments", op=op)

    # construction sugar
    def __add__(self, other):
        return Expr("add", (self, as_expr(other)))

    def __radd__(self, other):
        return Expr("add", (as_expr(other), self))

    def __sub__(self, other):
        return Expr("sub", (self, as_expr(other)))

    def __rsub__(self, other):
        return Expr("sub", (as_expr(other), self))

    def __mul__(self, other):
        return Expr("mul", (self, as_expr(other)))

    def __rmul__(self, other):
        return Expr("mul", (as_expr(other), self))

    def __truediv__(self, other):
        return Expr("div", (self, as_expr(other)))

    def __rtruediv__(self, other):
        return Expr("div", (as_expr(other), self))

    def __neg__(self):
        return Expr("neg", (self,))

    def __pow__(self, n: int):
        return Expr("pow", (self,), exponent=int(n))

    def free_vars(self) -> frozenset[str]:
        if self.op == "var":
            return frozenset((self.name,))
        return frozenset().union(*(a.free_vars() for a in self.args))

    def is_constant(self) -> bool:
        return not self.free_vars()

    def is_polynomial(self) -> bool:
        """No elementary functions, no negative powers, division only by constants."""
        if self.op in FUNCTIONS:
            return False
        if self.op == "pow" and self.exponent < 0:
            return False
        if self.op == "div" and not self.args[1].is_constant():
            return False
        return all(a.is_polynomial() for a in self.args)

    def has_functions(self) -> bool:
        return self.op in FUNCTIONS or any(a.has_functions() for a in self.args)

    def evaluate(self, env: Mapping[str, Any]):
        op = self.op
        if op == "var":
            try:
                return env[self.name]
            except KeyError:
                raise ExpressionError(f"unbound variable {self.name!r}", variable=self.name) from None
        if op == "const":
            return self.value
        vals = [a.evaluate(env) for a in self.args]
        if op == "add":
            return reduce(lambda a, b: a + b, vals)
        if op == "mul":
            return reduce(lambda a, b: a * b, vals)
        if op == "sub":
            return vals[0] - vals[1]
        if op == "div":
            return elementary.divide(vals[0], vals[1])
        if op == "neg":
            return -vals[0]
        if op == "pow":
            return elementary.power(vals[0], self.exponent)
        return elementary.apply(op, vals[0])

    def substitute(self, mapping: Mapping[str, "Expr"]) -> "Expr":
        if self.op == "var":
            return mapping.get(self.name, self)
        if not self.args:
            return self
        return Expr(self.op, tuple(a.substitute(mapping) for a in self.args),
                    exponent=self.exponent)

    def to_json(self) -> dict:
        if self.op == "var":
            return {"var": self.name}
        if self.op == "const":
            v = self.value
            return {"const": str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"}
        out: dict = {"op": self.op, "args": [a.to_json() for a in self.args]}
        if self.op == "pow":
            out["exponent"] = self.exponent
        return out

    def __str__(self) -> str:
        op = self.op
        if op == "var":
            return self.name
        if op == "const":
            return str(self.value) if self.value >= 0 else f"({self.value})"
        if op in _NARY:
            sym = " + " if op == "add" else "*"
            return "(" + sym.join(str(a) for a in self.args) + ")"
        if op in _BINARY:
            sym = " - " if op == "sub" else "/"
            return f"({self.args[0]}{sym}{self.args[1]})"
        if op == "neg":
            return f"(-{self.args[0]})"
        if op == "pow":
            return f"{self.args[0]}**{self.exponent}"
        return f"{op}({self.args[0]})"


def var(name: str) -> Expr:
    return Expr("var", name=name)


def const(value) -> Expr:
    if isinstance(value, float):
        value = Fraction(repr(value))
    try:
        return Expr("const", value=Fraction(value))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ExpressionError(f"bad constant {value!r}") from exc


def as_expr(x) -> Expr:
    return x if isinstance(x, Expr) else const(x)


def call(fn: str, arg) -> Expr:
    if fn not in FUNCTIONS:
        raise ExpressionError(f"unknown function {fn!r}", function=fn)
    return Expr(fn, (as_expr(arg),))


def from_json(data) -> Expr:
    if isinstance(data, str):
        return parse(data)
    if isinstance(data, (int, float)) and not isinstance(data, bool):
        return const(data)
    if not isinstance(data, dict):
        raise ExpressionError(f"expression must be an object or string, got {type(data).__name__}")
    if "var" in data:
        return var(str(data["var"]))
    if "const" in data:
        return const(data["const"])
    op = data.get("op")
    args = tuple(from_json(a) for a in data.get("args", []))
    if op == "pow":
        exp = data.get("exponent")
        if not isinstance(exp, int) or isinstance(exp, bool):
            raise ExpressionError("pow needs an integer 'exponent'")
        return Expr("pow", args, exponent=exp)
    if op not in (*_NARY, *_BINARY, "neg", *FUNCTIONS):
        raise ExpressionError(f"unknown operator {op!r}", op=op)
    return Expr(op, args)


_BINOPS = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Div: "div"}


def parse(text: str) -> Expr:
    """Parse infix syntax such as ``"y - x**2"`` or ``"exp(sin(x))/2"``; ``^`` means power."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from exc
    return _convert(tree.body, text)


def _convert(node, text: str) -> Expr:
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = _int_literal(node.right)
            if exp is None:
                raise ExpressionError(f"non-integer exponent in {text!r}")
            return Expr("pow", (_convert(node.left, text),), exponent=exp)
        kind = _BINOPS.get(type(node.op))
        if kind is None:
            raise ExpressionError(f"unsupported operator in {text!r}")
        return Expr(kind, (_convert(node.left, text), _convert(node.right, text)))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _convert(node.operand, text)
        if isinstance(node.op, ast.UAdd):
            return inner
        if inner.op == "const":
            return const(-inner.value)
        return -inner
    if isinstance(node, ast.Name):
        return var(node.id)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        return const(node.value)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1 \
            and not node.keywords:
        return call(node.func.id, _convert(node.args[0], text))
    raise ExpressionError(f"unsupported syntax in {text!r}")


def _int_literal(node) -> int | None:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        inner = _int_literal(node.operand)
        return None if inner is None else -inner
    return None
