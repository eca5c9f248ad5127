"""Syntax tree of the claim language and evaluation of its integer part."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import UnresolvedSymbol, ValidationError
from ..ntheory import is_prime


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Num(Node):
    value: Fraction


@dataclass(frozen=True)
class Sym(Node):
    name: str


@dataclass(frozen=True)
class Inf(Node):
    pass


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # one of + - * / ^
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True)
class Cond(Node):
    then: Node
    test: "Condition"
    other: Node


@dataclass(frozen=True)
class Bracket(Node):
    """q-integer ``[arg]``, optionally in base ``q^base``."""

    arg: Node
    base: Node | None = None


@dataclass(frozen=True)
class Poch(Node):
    """``poch(b1, b2, ...; step)_length``; ``step`` is None for the rational
    rising factorial ``(x)_k``."""

    bases: tuple
    step: Node | None
    length: Node


@dataclass(frozen=True)
class Fact(Node):
    arg: Node


@dataclass(frozen=True)
class GammaP(Node):
    arg: Node


@dataclass(frozen=True)
class Phi(Node):
    arg: Node


@dataclass(frozen=True)
class SumNode(Node):
    var: str
    lo: Node
    hi: Node
    body: Node


@dataclass(frozen=True)
class ProdNode(Node):
    var: str
    lo: Node
    hi: Node
    body: Node


# conditions ------------------------------------------------------------


class Condition:
    __slots__ = ()


@dataclass(frozen=True)
class Cmp(Condition):
    op: str  # = != < <= > >=
    left: Node
    right: Node


@dataclass(frozen=True)
class Congruent(Condition):
    left: Node
    right: Node
    modulus: Node


@dataclass(frozen=True)
class Predicate(Condition):
    arg: Node
    name: str  # even | odd | prime


# evaluation of the integer sublanguage -----------------------------------


def eval_scalar(node: Node, env: dict) -> Fraction:
    """Exact value of an expression built from numbers and integer symbols."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Sym):
        try:
            v = env[node.name]
        except KeyError:
            raise UnresolvedSymbol(node.name) from None
        if not isinstance(v, (int, Fraction)):
            raise ValidationError(f"symbol {node.name} is not a number here")
        return Fraction(v)
    if isinstance(node, Neg):
        return -eval_scalar(node.arg, env)
    if isinstance(node, BinOp):
        x = eval_scalar(node.left, env)
        y = eval_scalar(node.right, env)
        if node.op == "+":
            return x + y
        if node.op == "-":
            return x - y
        if node.op == "*":
            return x * y
        if node.op == "/":
            if y == 0:
                raise ValidationError("division by zero in an integer expression")
            return x / y
        if node.op == "^":
            if y.denominator != 1:
                raise ValidationError(f"non-integral exponent {y}")
            if x == 0 and y < 0:
                raise ValidationError("zero raised to a negative power")
            return x ** int(y)
    if isinstance(node, Cond):
        return eval_scalar(node.then if eval_condition(node.test, env) else node.other, env)
    if isinstance(node, Fact):
        m = eval_int(node.arg, env, "factorial argument")
        if m < 0:
            raise ValidationError("factorial of a negative integer")
        out = 1
        for i in range(2, m + 1):
            out *= i
        return Fraction(out)
    if isinstance(node, Poch) and node.step is None and len(node.bases) == 1:
        x = eval_scalar(node.bases[0], env)
        m = eval_int(node.length, env, "Pochhammer length")
        out = Fraction(1)
        for i in range(m):
            out *= x + i
        return out
    raise ValidationError(f"{type(node).__name__} is not an integer expression")


def eval_int(node: Node, env: dict, what: str = "expression") -> int:
    v = eval_scalar(node, env)
    if v.denominator != 1:
        from ..errors import NonIntegralBound

        raise NonIntegralBound(f"{what} evaluates to the non-integer {v}")
    return int(v)


def eval_condition(c: Condition, env: dict) -> bool:
    if isinstance(c, Cmp):
        x, y = eval_scalar(c.left, env), eval_scalar(c.right, env)
        return {
            "=": x == y,
            "!=": x != y,
            "<": x < y,
            "<=": x <= y,
            ">": x > y,
            ">=": x >= y,
        }[c.op]
    if isinstance(c, Congruent):
        m = eval_scalar(c.modulus, env)
        diff = eval_scalar(c.left, env) - eval_scalar(c.right, env)
        if m == 0:
            return diff == 0
        return (diff / m).denominator == 1
    if isinstance(c, Predicate):
        x = eval_scalar(c.arg, env)
        if x.denominator != 1:
            return False
        x = int(x)
        if c.name == "even":
            return x % 2 == 0
        if c.name == "odd":
            return x % 2 == 1
        if c.name == "prime":
            return is_prime(x)
    raise ValidationError(f"unknown condition {c!r}")


def symbols(node) -> set:
    """Names of all symbols referenced by a node (bound variables included)."""
    out: set = set()

    def walk(x):
        if isinstance(x, Sym):
            out.add(x.name)
        elif isinstance(x, (Num, Inf)) or x is None:
            return
        elif isinstance(x, (Node, Condition)):
            for v in _fields(x):
                if isinstance(v, tuple):
                    for y in v:
                        walk(y)
                elif isinstance(v, (Node, Condition)):
                    walk(v)

    walk(node)
    return out


def _fields(x):
    return [getattr(x, f) for f in x.__dataclass_fields__]


INFINITE = 10**9


def k_degree(node: Node, var: str) -> int:
    """Polynomial degree of a scalar expression in ``var``.

    Returns ``INFINITE`` for anything that is not polynomial in ``var``
    (``var`` in an exponent or a denominator).
    """
    if isinstance(node, Num):
        return 0
    if isinstance(node, Sym):
        return 1 if node.name == var else 0
    if isinstance(node, Neg):
        return k_degree(node.arg, var)
    if isinstance(node, Cond):
        return max(k_degree(node.then, var), k_degree(node.other, var))
    if isinstance(node, BinOp):
        dl, dr = k_degree(node.left, var), k_degree(node.right, var)
        if node.op in "+-":
            return max(dl, dr)
        if node.op == "*":
            return min(INFINITE, dl + dr)
        if node.op == "/":
            return dl if dr == 0 else INFINITE
        if node.op == "^":
            if dr:
                return INFINITE
            if dl == 0:
                return 0
            if isinstance(node.right, Num) and node.right.value.denominator == 1 and node.right.value >= 0:
                return min(INFINITE, dl * int(node.right.value))
            return INFINITE
    if var not in symbols(node):
        return 0
    return INFINITE
