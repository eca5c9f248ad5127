"""Pretty-printer producing text that parses back to the same tree."""
from __future__ import annotations

from .ast import (
    BinOp,
    Bracket,
    Cmp,
    Cond,
    Congruent,
    Fact,
    GammaP,
    Inf,
    Neg,
    Num,
    Phi,
    Poch,
    Predicate,
    ProdNode,
    SumNode,
    Sym,
)

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _wrap(s: str, inner: int, outer: int) -> str:
    return f"({s})" if inner < outer else s


def show(node, ctx: int = 0) -> str:
    if isinstance(node, Num):
        v = node.value
        if v.denominator == 1:
            s = str(v.numerator)
            return _wrap(s, 3, ctx) if v < 0 else s
        return f"({v.numerator}/{v.denominator})"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Inf):
        return "inf"
    if isinstance(node, Neg):
        return _wrap("-" + show(node.arg, 3), 3, ctx)
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        if node.op == "^":
            return _wrap(f"{show(node.left, 5)}^{show(node.right, 3)}", p, ctx)
        sep = f" {node.op} " if p == 1 else node.op
        if node.op == "*":
            sep = " * "
        elif node.op == "/":
            sep = " / "
        return _wrap(show(node.left, p) + sep + show(node.right, p + 1), p, ctx)
    if isinstance(node, Cond):
        s = f"{show(node.then, 1)} if {show_condition(node.test)} else {show(node.other, 0)}"
        return _wrap(s, 0, ctx)
    if isinstance(node, Bracket):
        s = f"[{show(node.arg)}]"
        if node.base is not None:
            s += f"_({show(node.base)})"
        return s
    if isinstance(node, Poch):
        inner = ", ".join(show(b) for b in node.bases)
        if node.step is not None:
            inner += f"; {show(node.step)}"
        return f"poch({inner})_{_length(node.length)}"
    if isinstance(node, Fact):
        return f"fact({show(node.arg)})"
    if isinstance(node, GammaP):
        return f"Gamma_p({show(node.arg)})"
    if isinstance(node, Phi):
        return f"Phi({show(node.arg)})"
    if isinstance(node, (SumNode, ProdNode)):
        word = "sum" if isinstance(node, SumNode) else "prod"
        s = f"{word} {node.var}={show(node.lo, 1)}..{show(node.hi, 1)} of {show(node.body, 1)}"
        return _wrap(s, 0, ctx)
    raise TypeError(f"cannot print {node!r}")


def _length(node) -> str:
    if isinstance(node, (Sym, Inf)) or (isinstance(node, Num) and node.value.denominator == 1 and node.value >= 0):
        return show(node)
    return f"({show(node)})"


def show_condition(c) -> str:
    if isinstance(c, Predicate):
        return f"{show(c.arg, 1)} {c.name}"
    if isinstance(c, Congruent):
        return f"{show(c.left, 1)} = {show(c.right, 1)} (mod {show(c.modulus, 1)})"
    if isinstance(c, Cmp):
        return f"{show(c.left, 1)} {c.op} {show(c.right, 1)}"
    raise TypeError(f"cannot print condition {c!r}")


def print_claim(claim) -> str:
    lines = [f"claim {claim.name}"]
    if claim.title:
        lines.append(f"title: {claim.title}")
    lines.append(f"kind: {claim.kind}")
    lines.append(f"status: {claim.status}")
    if claim.params:
        lines.append(f"params: {', '.join(claim.params)}")
    extra = [m for m in claim.monos if m not in ("a", "e")]
    if extra:
        lines.append(f"monos: {', '.join(extra)}")
    if claim.conditions:
        lines.append(f"where: {'; '.join(show_condition(c) for c in claim.conditions)}")
    lines.append(f"lhs: {show(claim.lhs)}")
    if claim.rhs is not None:
        lines.append(f"rhs: {show(claim.rhs)}")
    if claim.modulus is not None:
        lines.append(f"mod: {show(claim.modulus)}")
    return "\n".join(lines) + "\n"
