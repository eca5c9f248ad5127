"""Claims, their concrete instances, and the bundled registry."""
from __future__ import annotations

import os
from fractions import Fraction
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import (
    ClaimSyntaxError,
    DuplicateClaim,
    NonIntegralBound,
    PrimeConditionViolated,
    SideConditionViolated,
    UnresolvedSymbol,
    ValidationError,
)
from ..monomial import Monomial
from .ast import (
    BinOp,
    Bracket,
    Inf,
    Node,
    Phi,
    Poch,
    ProdNode,
    SumNode,
    Sym,
    eval_condition,
    eval_int,
    eval_scalar,
    k_degree,
    symbols,
    _fields,
)
from .parser import parse_conditions, parse_expr, parse_names, split_sections
from .printer import show, show_condition

KINDS = ("congruence", "series", "padic")
STATUSES = ("theorem", "conjecture", "refuted")
DEFAULT_MONOS = ("a", "e")

DATA_DIR = Path(__file__).resolve().parent / "data"


def default_claims_dir() -> Path:
    env = os.environ.get("QCONG_CLAIMS")
    return Path(env) if env else DATA_DIR


@dataclass(frozen=True)
class Claim:
    name: str
    kind: str
    status: str
    params: tuple
    monos: tuple
    conditions: tuple
    lhs: Node
    rhs: Node | None
    modulus: Node | None
    title: str = ""
    source: str | None = field(default=None, compare=False)

    @property
    def bound_var(self) -> str | None:
        return self.lhs.var if isinstance(self.lhs, SumNode) else None

    @property
    def upper_bound(self):
        return self.lhs.hi if isinstance(self.lhs, SumNode) else None

    @property
    def summand(self):
        return self.lhs.body if isinstance(self.lhs, SumNode) else self.lhs

    def condition_text(self) -> list:
        return [show_condition(c) for c in self.conditions]

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ConcreteClaim:
    claim: Claim
    assignments: tuple  # sorted (name, value) pairs as given
    env: dict = field(compare=False, hash=False)
    monos: dict = field(compare=False, hash=False)
    upper: int | None = None
    modulus: object = None

    @property
    def name(self) -> str:
        return self.claim.name

    def label(self) -> str:
        return ", ".join(f"{k}={v}" for k, v in self.assignments)


# parsing -----------------------------------------------------------------


def parse_claim(text: str, source: str | None = None) -> Claim:
    sections = split_sections(text, source)
    if not sections:
        raise ClaimSyntaxError("empty claim file", 1, 1, source)
    seen: dict = {}
    for key, value, line, col in sections:
        if key in seen:
            raise ClaimSyntaxError(f"duplicate section {key!r}", line, 1, source)
        seen[key] = (value, line, col)
    first = sections[0]
    if first[0] != "claim":
        raise ClaimSyntaxError("a claim file must start with 'claim NAME'", first[2], 1, source)
    allowed = {"claim", "title", "kind", "status", "params", "monos", "where", "lhs", "rhs", "mod"}
    for key, _, line, _ in sections:
        if key not in allowed:
            raise ClaimSyntaxError(f"unknown section {key!r}", line, 1, source)

    def get(key, required=True):
        if key not in seen:
            if required:
                raise ClaimSyntaxError(f"missing section {key!r}", sections[-1][2], 1, source)
            return None
        return seen[key]

    name_v, nl, nc = get("claim")
    m = re.fullmatch(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*", name_v)
    if not m:
        raise ClaimSyntaxError("expected a single claim name", nl, nc, source)
    name = m.group(1)
    kind = get("kind")[0].strip()
    if kind not in KINDS:
        raise ValidationError(f"{name}: kind must be one of {', '.join(KINDS)}")
    status_v = get("status", False)
    status = status_v[0].strip() if status_v else "theorem"
    if status not in STATUSES:
        raise ValidationError(f"{name}: status must be one of {', '.join(STATUSES)}")
    title_v = get("title", False)
    title = " ".join(title_v[0].split()) if title_v else ""
    params = parse_names(*get("params", False) or ("", 1, 1), source=source) if "params" in seen else ()
    extra = parse_names(*seen["monos"], source=source) if "monos" in seen else ()
    monos = tuple(dict.fromkeys(DEFAULT_MONOS + extra))
    conditions = parse_conditions(*seen["where"], source=source) if "where" in seen else ()
    lhs = parse_expr(*get("lhs"), source=source)
    rhs = parse_expr(*seen["rhs"], source=source) if "rhs" in seen else None
    modulus = parse_expr(*seen["mod"], source=source) if "mod" in seen else None
    claim = Claim(name, kind, status, params, monos, conditions, lhs, rhs, modulus, title, source)
    validate(claim)
    return claim


def _walk(node, bound=()):
    """Yield ``(node, bound_vars)`` for every node below ``node``."""
    yield node, bound
    if isinstance(node, (SumNode, ProdNode)):
        yield from _walk(node.lo, bound)
        yield from _walk(node.hi, bound)
        yield from _walk(node.body, bound + (node.var,))
        return
    if node is None or not hasattr(node, "__dataclass_fields__"):
        return
    for v in _fields(node):
        if isinstance(v, tuple):
            for y in v:
                yield from _walk(y, bound)
        elif hasattr(v, "__dataclass_fields__"):
            yield from _walk(v, bound)


def validate(claim: Claim):
    """Structural checks that do not need concrete parameter values."""
    if "q" in claim.params or "q" in claim.monos:
        raise ValidationError(f"{claim.name}: q is reserved")
    overlap = set(claim.params) & set(claim.monos)
    if overlap:
        raise ValidationError(f"{claim.name}: {sorted(overlap)} declared both as params and monos")
    if claim.kind == "congruence" and claim.modulus is None:
        raise ValidationError(f"{claim.name}: a congruence claim needs 'mod:'")
    if claim.kind == "padic" and claim.modulus is None:
        raise ValidationError(f"{claim.name}: a p-adic claim needs 'mod: p^r'")
    if claim.kind == "series" and claim.modulus is not None:
        raise ValidationError(f"{claim.name}: a series identity takes no modulus")
    if claim.kind == "series" and claim.rhs is None:
        raise ValidationError(f"{claim.name}: a series identity needs 'rhs:'")
    known = set(claim.params) | set(claim.monos) | {"q"}
    mono_names = set(claim.monos) | {"q"}
    for part in (claim.lhs, claim.rhs, claim.modulus):
        if part is None:
            continue
        for node, bound in _walk(part):
            if isinstance(node, Sym) and node.name not in known and node.name not in bound:
                raise ValidationError(f"{claim.name}: undeclared symbol {node.name!r}")
            if isinstance(node, BinOp) and node.op == "^" and symbols(node.left) & mono_names:
                for var in bound:
                    if k_degree(node.right, var) > 2:
                        raise ValidationError(
                            f"{claim.name}: exponent {show(node.right)} has degree > 2 in {var}"
                        )
            if isinstance(node, Poch) and node.step is not None:
                for var in bound:
                    if k_degree(node.length, var) > 1:
                        raise ValidationError(f"{claim.name}: Pochhammer length must be linear in {var}")
    for c in claim.conditions:
        for name in symbols(c):
            if name not in claim.params:
                raise ValidationError(f"{claim.name}: condition uses unknown symbol {name!r}")
    return claim


# instantiation -----------------------------------------------------------


def _coerce_mono(name, value) -> Monomial:
    if isinstance(value, Monomial):
        return value
    if isinstance(value, str):
        from .parser import parse_expr as _pe
        from ..qseries import Context, default_monos, qeval, _as_mono

        node = _pe(value)
        v = qeval(node, Context({}, default_monos(("a", "e"))))
        if isinstance(v, (Monomial, Fraction, int)):
            return _as_mono(v)
        raise ValidationError(f"value for {name} must be a monomial, got {value!r}")
    raise ValidationError(f"value for {name} must be a monomial, got {value!r}")


def instantiate(claim: Claim, assignments: dict, check_conditions: bool = True) -> ConcreteClaim:
    """Bind parameters and monomials; ``check_conditions=False`` evaluates outside the stated range."""
    from ..qseries import default_monos

    env = {}
    mono_vals = {}
    for key, value in assignments.items():
        if key in claim.params:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValidationError(f"{claim.name}: {key} must be an integer")
            env[key] = value
        elif key in claim.monos:
            mono_vals[key] = _coerce_mono(key, value)
        else:
            raise ValidationError(f"{claim.name}: unknown parameter {key!r}")
    for p in claim.params:
        if p not in env:
            raise UnresolvedSymbol(p)
    for c in claim.conditions if check_conditions else ():
        if not eval_condition(c, env):
            exc = PrimeConditionViolated if claim.kind == "padic" and "p" in symbols(c) else SideConditionViolated
            raise exc(
                f"{claim.name}: condition '{show_condition(c)}' fails for "
                + ", ".join(f"{k}={v}" for k, v in sorted(env.items()))
            )
    monos = default_monos(claim.monos, mono_vals) if claim.kind != "padic" else {}
    upper = None
    if isinstance(claim.lhs, SumNode) and not isinstance(claim.lhs.hi, Inf):
        upper = eval_int(claim.lhs.hi, env, f"{claim.name}: upper bound")
        lower = eval_int(claim.lhs.lo, env, f"{claim.name}: lower bound")
        if upper < lower - 1:
            raise ValidationError(f"{claim.name}: upper bound {upper} below lower bound {lower}")
    _check_exponents(claim, env)
    modulus = None
    if claim.modulus is not None:
        if claim.kind == "padic":
            modulus = resolve_padic_modulus(claim, env)
        else:
            modulus = resolve_modulus(claim.modulus, env, monos)
    shown = tuple(sorted((k, v if isinstance(v, int) else str(v)) for k, v in assignments.items()))
    return ConcreteClaim(claim, shown, env, monos, upper, modulus)


def _check_exponents(claim: Claim, env: dict):
    """Every q-exponent must be an integer; quadratics in k are checked at k=0,1,2."""
    mono_names = set(claim.monos) | {"q"}
    for part in (claim.lhs, claim.rhs):
        if part is None:
            continue
        for node, bound in _walk(part):
            if isinstance(node, BinOp) and node.op == "^" and symbols(node.left) & mono_names:
                free = [v for v in bound if v in symbols(node.right)]
                for values in _grid(free):
                    local = dict(env)
                    local.update(values)
                    try:
                        v = eval_scalar(node.right, local)
                    except UnresolvedSymbol:
                        continue
                    if v.denominator != 1:
                        raise NonIntegralBound(
                            f"{claim.name}: exponent {show(node.right)} is {v} at "
                            + ", ".join(f"{k}={x}" for k, x in sorted(local.items()))
                        )


def _grid(names):
    if not names:
        yield {}
        return
    head, rest = names[0], names[1:]
    for tail in _grid(rest):
        for k in range(3):
            d = dict(tail)
            d[head] = k
            yield d


def _flatten_product(node):
    if isinstance(node, BinOp) and node.op == "*":
        return _flatten_product(node.left) + _flatten_product(node.right)
    return [node]


def resolve_modulus(node, env: dict, monos: dict):
    from ..polyq import Cyclotomic, Modulus, QInt, QPolyLiteral
    from ..qseries import Context, _as_mono, qeval

    factors = []

    def add(n, local):
        mult = 1
        core = n
        if isinstance(n, BinOp) and n.op == "^":
            core = n.left
            mult = eval_int(n.right, local, "modulus multiplicity")
        if isinstance(core, ProdNode):
            lo = eval_int(core.lo, local, "product bound")
            hi = eval_int(core.hi, local, "product bound")
            for j in range(lo, hi + 1):
                inner = dict(local)
                inner[core.var] = j
                for _ in range(mult):
                    for f in _flatten_product(core.body):
                        add(f, inner)
            return
        if isinstance(core, Phi):
            factors.append((Cyclotomic(eval_int(core.arg, local, "cyclotomic index")), mult))
        elif isinstance(core, Bracket) and core.base is None:
            factors.append((QInt(eval_int(core.arg, local, "q-integer index")), mult))
        elif isinstance(core, BinOp) and core.op in "+-":
            ctx = Context(local, monos)
            left = _as_mono(qeval(core.left, ctx))
            right = _as_mono(qeval(core.right, ctx))
            if core.op == "+":
                right = -right
            factors.append((QPolyLiteral(left, right), mult))
        else:
            raise ValidationError(f"unsupported modulus factor {show(core)}")

    for f in _flatten_product(node):
        add(f, env)
    return Modulus(tuple(factors))


def resolve_padic_modulus(claim: Claim, env: dict):
    node = claim.modulus
    if not (isinstance(node, BinOp) and node.op == "^" and node.left == Sym("p")):
        raise ValidationError(f"{claim.name}: p-adic modulus must be p^r")
    if "p" not in env:
        raise UnresolvedSymbol("p")
    return env["p"], eval_int(node.right, env, "p-adic precision")


# registry ----------------------------------------------------------------


def load_claim_file(path) -> Claim:
    path = Path(path)
    return parse_claim(path.read_text(encoding="utf-8"), source=str(path))


def registry_load(path=None) -> list:
    """Parse every ``*.qclaim`` file under ``path``, sorted by claim name."""
    root = Path(path) if path is not None else default_claims_dir()
    if not root.is_dir():
        raise ValidationError(f"claims directory {root} does not exist")
    claims: dict = {}
    for f in sorted(root.glob("*.qclaim")):
        c = load_claim_file(f)
        if c.name in claims:
            raise DuplicateClaim(f"claim {c.name!r} defined in both {claims[c.name].source} and {f}")
        claims[c.name] = c
    return [claims[k] for k in sorted(claims)]
