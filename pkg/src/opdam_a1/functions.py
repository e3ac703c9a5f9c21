"""A small expression language for test functions on the circle.

Accepted: linear combinations and products of cos(.), sin(.), exp(.), E(n),
bump(a, b), the variable x, pi, the imaginary unit i (or j), and numbers.
Juxtaposition of a number with a name is multiplication, so "3x", "2ix" and
"0.5cos(2x)" all parse. Examples::

    "cos(3x) - 0.5 sin(x)"
    "exp(2ix) + (1+2i) E(-1)"
    "bump(pi/3, 2pi/3)"

Expressions are walked over the AST; nothing is passed to eval.
"""

from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass

import numpy as np

from .special_fn import check_multiplicity, e_eval

__all__ = ["bump", "parse_function", "parse_scalar", "ParsedFunction", "FunctionSyntaxError"]


class FunctionSyntaxError(ValueError):
    pass


def bump(x, a: float, b: float):
    """exp(-1 / (1 - t^2)) with t the affine image of x in (a, b); zero outside."""
    if not a < b:
        raise ValueError("bump needs a < b")
    x = np.asarray(x, dtype=float)
    t = (2 * x - a - b) / (b - a)
    inside = np.abs(t) < 1
    out = np.zeros(x.shape)
    out[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
    return out if out.ndim else float(out)


_NUMBER_THEN_NAME = re.compile(r"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(?=[A-Za-z_(])")
_CLOSE_THEN_OPEN = re.compile(r"\)\s*(?=[A-Za-z_(\d])")


def _preprocess(text: str) -> str:
    s = text.strip().replace("^", "**")
    s = _NUMBER_THEN_NAME.sub(r"\1*", s)
    s = _CLOSE_THEN_OPEN.sub(")*", s)
    # a lone imaginary unit glued to x: "ix" -> "i*x"
    s = re.sub(r"\b([ij])x\b", r"\1*x", s)
    s = re.sub(r"\bx([ij])\b", r"x*\1", s)
    return s


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_CONSTANTS = {"pi": np.pi, "i": 1j, "j": 1j}


def _const_value(node) -> complex:
    """Evaluate a node that must not depend on x (bump limits, E degrees)."""
    return _Evaluator(None, None).visit(node)


class _Evaluator(ast.NodeVisitor):
    def __init__(self, x, k):
        self.x = x
        self.k = k
        self.bumps: list[tuple[float, float]] = []

    def generic_visit(self, node):
        raise FunctionSyntaxError(f"unsupported syntax: {type(node).__name__}")

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, (int, float, complex)) and not isinstance(node.value, bool):
            return node.value
        raise FunctionSyntaxError(f"unsupported literal {node.value!r}")

    def visit_Name(self, node):
        if node.id == "x":
            if self.x is None:
                raise FunctionSyntaxError("x is not allowed here")
            return self.x
        if node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        raise FunctionSyntaxError(f"unknown name {node.id!r}")

    def visit_BinOp(self, node):
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise FunctionSyntaxError(f"unsupported operator {type(node.op).__name__}")
        return op(self.visit(node.left), self.visit(node.right))

    def visit_UnaryOp(self, node):
        op = _UNARY.get(type(node.op))
        if op is None:
            raise FunctionSyntaxError(f"unsupported operator {type(node.op).__name__}")
        return op(self.visit(node.operand))

    def visit_Call(self, node):
        if not isinstance(node.func, ast.Name) or node.keywords:
            raise FunctionSyntaxError("only plain calls like cos(2x) are allowed")
        name, args = node.func.id, node.args
        if name in ("cos", "sin", "exp"):
            if len(args) != 1:
                raise FunctionSyntaxError(f"{name} takes one argument")
            return getattr(np, name)(self.visit(args[0]))
        if name == "E":
            if len(args) != 1:
                raise FunctionSyntaxError("E takes one integer argument")
            n = _const_value(args[0])
            if np.imag(n) != 0 or np.real(n) != int(np.real(n)):
                raise FunctionSyntaxError("E(n) needs an integer n")
            if self.x is None:
                raise FunctionSyntaxError("E(n) is not allowed here")
            return e_eval(int(np.real(n)), self.k, self.x)
        if name == "bump":
            if len(args) != 2:
                raise FunctionSyntaxError("bump takes two arguments")
            a, b = (float(np.real(_const_value(v))) for v in args)
            self.bumps.append((a, b))
            if self.x is None:
                raise FunctionSyntaxError("bump is not allowed here")
            return bump(self.x, a, b)
        raise FunctionSyntaxError(f"unknown function {name!r}")


@dataclass(frozen=True)
class ParsedFunction:
    """Callable view of an expression at a fixed multiplicity."""

    text: str
    k: float
    tree: ast.Expression

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        vals = np.asarray(_Evaluator(x, self.k).visit(self.tree), dtype=complex)
        vals = vals * np.ones_like(x)
        return vals if vals.ndim else complex(vals)

    @property
    def support(self) -> tuple[float, float] | None:
        """Hull of the bump supports when the expression is built from bumps only."""
        ev = _Evaluator(np.zeros(1), self.k)
        ev.visit(self.tree)
        if not ev.bumps or _has_global_term(self.tree):
            return None
        return min(a for a, _ in ev.bumps), max(b for _, b in ev.bumps)


def _has_global_term(tree) -> bool:
    for node in ast.walk(tree):
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            if node.func.id in ("cos", "sin", "exp", "E"):
                return True
    return False


def parse_function(text: str, k: float = 0.0) -> ParsedFunction:
    k = check_multiplicity(k)
    try:
        tree = ast.parse(_preprocess(text), mode="eval")
    except SyntaxError as exc:
        raise FunctionSyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    parsed = ParsedFunction(text, k, tree)
    parsed(np.zeros(1))  # surface name and arity errors at parse time
    return parsed


def parse_scalar(text: str) -> float:
    """A real constant such as "0.4", "-pi/3" or "2pi/3"."""
    try:
        tree = ast.parse(_preprocess(str(text)), mode="eval")
    except SyntaxError as exc:
        raise FunctionSyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    value = complex(_const_value(tree))
    if value.imag != 0:
        raise FunctionSyntaxError(f"{text!r} is not real")
    return value.real
