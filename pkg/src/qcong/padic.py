"""Classical (q = 1) sums checked p-adically.

Sums are evaluated exactly over Q and judged by their p-adic valuation.
Right-hand sides that involve Morita's p-adic Gamma function are compared
as residues modulo ``p^r``.

p-adic Gamma convention
-----------------------
For an integer ``m >= 0``::

    Gamma_p(m) = (-1)^m * prod(j for j in 1..m-1 if p does not divide j)

so ``Gamma_p(0) = 1``, ``Gamma_p(1) = -1`` and ``Gamma_p(2) = 1``.  For a
p-adic integer ``x`` we take the representative ``m`` of ``x`` in
``[0, p^r)`` and return ``Gamma_p(m) mod p^r``; for odd ``p`` the bound
``|Gamma_p(x) - Gamma_p(y)|_p <= |x - y|_p`` makes this exact to precision
``r``.  Every value is recomputed at precision ``r + 1`` and the two
residues must agree modulo ``p^r``.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction

from .claims.ast import (
    BinOp,
    Cond,
    Fact,
    GammaP,
    Neg,
    Num,
    Poch,
    SumNode,
    Sym,
    eval_condition,
    eval_int,
    eval_scalar,
)
from .engine import CheckResult
from .errors import NotPadicInteger, PrimeConditionViolated, QCongError, ValidationError
from .ntheory import is_prime

INF = math.inf


def poch_rational(x, k: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+k-1)``."""
    if k < 0:
        raise ValueError("negative length")
    x = Fraction(x)
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def vp(x, p: int):
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _gamma_int(m: int, p: int, mod: int) -> int:
    acc = 1
    for j in range(1, m):
        if j % p:
            acc = acc * j % mod
    return (-acc if m % 2 else acc) % mod


def _gamma_raw(x: Fraction, p: int, r: int) -> int:
    mod = p ** r
    m = x.numerator * pow(x.denominator, -1, mod) % mod
    return _gamma_int(m, p, mod)


def padic_gamma(x, p: int, r: int) -> int:
    """``Gamma_p(x) mod p^r`` as an integer in ``[0, p^r)``."""
    if p < 3 or not is_prime(p):
        raise ValidationError(f"p-adic Gamma needs an odd prime, got {p}")
    if r < 1:
        raise ValidationError("precision must be at least 1")
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NotPadicInteger(f"{x} is not a {p}-adic integer")
    lo = _gamma_raw(x, p, r)
    hi = _gamma_raw(x, p, r + 1)
    if hi % p ** r != lo:
        raise QCongError(f"Gamma_{p}({x}) is inconsistent between precisions {r} and {r + 1}")
    return lo


class Residue:
    """An element of ``Z / p^r``, closed under multiplication and unit division."""

    __slots__ = ("value", "p", "r")

    def __init__(self, value: int, p: int, r: int):
        self.p, self.r = p, r
        self.value = value % p ** r

    @classmethod
    def of(cls, x, p: int, r: int) -> "Residue":
        x = Fraction(x)
        if x.denominator % p == 0:
            raise NotPadicInteger(f"{x} is not a {p}-adic integer")
        mod = p ** r
        return cls(x.numerator * pow(x.denominator, -1, mod), p, r)

    def _lift(self, other):
        return other if isinstance(other, Residue) else Residue.of(other, self.p, self.r)

    def __add__(self, other):
        return Residue(self.value + self._lift(other).value, self.p, self.r)

    __radd__ = __add__

    def __neg__(self):
        return Residue(-self.value, self.p, self.r)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return Residue(self.value * self._lift(other).value, self.p, self.r)

    __rmul__ = __mul__

    def inverse(self):
        if self.value % self.p == 0:
            raise NotPadicInteger("division by a non-unit residue")
        mod = self.p ** self.r
        return Residue(pow(self.value, -1, mod), self.p, self.r)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Residue(pow(self.value, e, self.p ** self.r), self.p, self.r)

    def __eq__(self, other):
        return isinstance(other, Residue) and (self.value, self.p, self.r) == (other.value, other.p, other.r)

    def __repr__(self):
        return f"{self.value} (mod {self.p}^{self.r})"


def classical_eval(node, env: dict, p: int | None = None, r: int = 1):
    """Exact rational value; ``Gamma_p`` factors turn the result into a Residue."""
    if isinstance(node, SumNode):
        lo = eval_int(node.lo, env, "lower bound")
        hi = eval_int(node.hi, env, "upper bound")
        total = Fraction(0)
        for k in range(lo, hi + 1):
            total = total + classical_eval(node.body, {**env, node.var: k}, p, r)
        return total
    if isinstance(node, GammaP):
        if p is None:
            raise ValidationError("Gamma_p needs a prime")
        x = eval_scalar(node.arg, env)
        return Residue(padic_gamma(x, p, r), p, r)
    if isinstance(node, BinOp):
        x = classical_eval(node.left, env, p, r)
        if node.op == "^":
            e = eval_scalar(node.right, env)
            if e.denominator != 1:
                raise ValidationError(f"non-integral exponent {e}")
            return x ** int(e)
        y = classical_eval(node.right, env, p, r)
        if node.op == "+":
            return x + y
        if node.op == "-":
            return x - y
        if node.op == "*":
            return x * y
        if not isinstance(y, Residue) and y == 0:
            raise ValidationError("division by zero")
        return x / y
    if isinstance(node, Neg):
        return -classical_eval(node.arg, env, p, r)
    if isinstance(node, Cond):
        branch = node.then if eval_condition(node.test, env) else node.other
        return classical_eval(branch, env, p, r)
    if isinstance(node, (Num, Sym, Fact, Poch)):
        return eval_scalar(node, env)
    raise ValidationError(f"{type(node).__name__} has no classical value")


def padic_sum_check(cc, claim_name: str | None = None) -> CheckResult:
    """``lhs - rhs ≡ 0 (mod p^r)`` for a concrete p-adic claim."""
    t0 = time.perf_counter()
    p, r = cc.modulus
    if not is_prime(p):
        raise PrimeConditionViolated(f"{p} is not prime")
    name = claim_name or cc.name
    res = CheckResult(name, cc.assignments, True, kind="padic", modulus=f"{p}^{r}")
    # one spare digit so that p * Gamma-quotient is still known mod p^r
    lhs = classical_eval(cc.claim.lhs, cc.env, p, r + 1)
    rhs = Fraction(0) if cc.claim.rhs is None else classical_eval(cc.claim.rhs, cc.env, p, r + 1)
    if isinstance(lhs, Residue) or isinstance(rhs, Residue):
        diff = Residue.of(lhs, p, r + 1) - rhs if not isinstance(lhs, Residue) else lhs - rhs
        v = vp(diff.value, p)
        v = min(v, r + 1)
        res.detail = f"lhs - rhs = {diff.value} (mod {p}^{r + 1})"
    else:
        diff = lhs - rhs
        v = vp(diff, p)
        res.detail = f"lhs - rhs = {diff}"
    res.holds = v >= r
    shown = "inf" if v == INF else v
    if isinstance(diff, Residue) and v >= r + 1:
        shown = f">={r + 1}"
    res.factors.append({"prime": p, "required_valuation": r, "valuation": shown})
    if not res.holds:
        res.remainder_degree = 0
    res.elapsed = time.perf_counter() - t0
    return res


def vanhamme_g2_check(p: int) -> CheckResult:
    """The (8k+1) sum against ``p Gamma_p(1/2) Gamma_p(1/4) / Gamma_p(3/4)`` mod p^3.

    Written directly, without the claim language, as an independent route.
    """
    t0 = time.perf_counter()
    if not is_prime(p) or p % 4 != 1:
        raise PrimeConditionViolated(f"p = {p} is not a prime congruent to 1 mod 4")
    s = Fraction(0)
    quarter = Fraction(1, 4)
    term = Fraction(1)
    for k in range((p - 1) // 4 + 1):
        if k:
            term *= ((quarter + k - 1) / k) ** 4
        s += (8 * k + 1) * term
    mod = p ** 3
    g = padic_gamma(Fraction(1, 2), p, 3) * padic_gamma(quarter, p, 3)
    g = g * pow(padic_gamma(Fraction(3, 4), p, 3), -1, mod) % mod
    lhs = s.numerator * pow(s.denominator, -1, mod) % mod
    rhs = p * g % mod
    res = CheckResult("vanhamme_g2", (("p", p),), (lhs - rhs) % mod == 0, kind="padic", modulus=f"{p}^3")
    res.detail = f"lhs = {lhs}, rhs = {rhs} (mod {mod})"
    res.elapsed = time.perf_counter() - t0
    return res


__all__ = [
    "poch_rational",
    "vp",
    "padic_gamma",
    "Residue",
    "classical_eval",
    "padic_sum_check",
    "vanhamme_g2_check",
]
