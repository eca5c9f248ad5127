"""Exact congruence checking of concrete claims.

``A ≡ B (mod P)`` holds when ``P`` divides the numerator of the reduced
form of ``A - B``.  With the difference kept as ``num / prod(atoms)`` this is
decided atom by atom: for every irreducible factor ``F`` of ``P`` with
multiplicity ``m`` and denominator multiplicity ``mu``, ``F^(m + mu)`` must
divide ``num``.
"""
from __future__ import annotations

import hashlib
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import kernels
from .atoms import atom_poly, modulus_atoms
from .laurent import LPoly
from .ntheory import cyclotomic_coeffs
from .polyq import QPoly, modulus_expand, qp_divrem, root_of_unity
from .qfraction import QFraction, _lpolys_to_qpolys, atom_valuation
from .qseries import Context, evaluate

NUMERIC_TOL = mpmath.mpf(10) ** -25


@dataclass
class CheckResult:
    claim_name: str
    assignments: tuple
    holds: bool
    kind: str = "congruence"
    remainder: object = None  # list of Fraction coefficients (lowest degree first) or QPoly
    remainder_degree: int = -1
    remainder_hash: str = ""
    denominator_coprime_to_modulus: bool = True
    factors: list = field(default_factory=list)
    numeric_ok: bool | None = None
    modulus: str = ""
    detail: str = ""
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "claim": self.claim_name,
            "assignments": {k: v for k, v in self.assignments},
            "kind": self.kind,
            "holds": self.holds,
            "modulus": self.modulus,
            "remainder_degree": self.remainder_degree,
            "remainder_hash": self.remainder_hash,
            "denominator_coprime_to_modulus": self.denominator_coprime_to_modulus,
            "factors": self.factors,
            "numeric_ok": self.numeric_ok,
            "detail": self.detail,
            "elapsed": round(self.elapsed, 6),
        }


def sum_claim(cc) -> QFraction:
    """Exact left-hand side of a concrete claim."""
    return evaluate(cc.claim.lhs, Context(cc.env, cc.monos))


def rhs_claim(cc) -> QFraction:
    if cc.claim.rhs is None:
        return QFraction.zero()
    return evaluate(cc.claim.rhs, Context(cc.env, cc.monos))


def lhs_minus_rhs(cc) -> QFraction:
    return sum_claim(cc) - rhs_claim(cc)


def _hash_coeffs(coeffs) -> str:
    h = hashlib.sha256()
    for c in coeffs:
        h.update(str(c).encode())
        h.update(b",")
    return h.hexdigest()[:16]


def _poly_from_modulus_atoms(atoms: Counter) -> list:
    out = [1]
    for atom, m in sorted(atoms.items()):
        cs = list(cyclotomic_coeffs(atom.order))
        for _ in range(m):
            out = kernels.poly_mul(out, cs)
    return out


def _remainder_q_only(diff: QFraction, mod_atoms: Counter):
    """Remainder of the reduced numerator modulo the expanded monic modulus."""
    scale, num, _ = diff.reduced()
    off, cs = num.blocks[(0, 0)]
    # the reduced form is a polynomial in q; q^off is a unit only when off < 0
    shift = off if off > 0 else 0
    poly = [0] * shift + list(cs)
    m = _poly_from_modulus_atoms(mod_atoms)
    _, rem = kernels.poly_divmod(poly, m)
    return [scale * c for c in rem]


def _remainder_general(diff: QFraction, modulus) -> QPoly:
    scale, num, den = diff.reduced()
    red = QFraction(1, num, None)
    red.scale = scale
    dpoly = LPoly.constant(1)
    for atom, m in sorted(den.items()):
        for _ in range(m):
            dpoly = dpoly * atom_poly(atom)
    n_q, d_q = _lpolys_to_qpolys(num, dpoly, scale)
    inv = d_q.lc().inverse()
    n_q = QPoly([c * inv for c in n_q.coeffs])
    mpoly = modulus_expand(modulus).monic()
    return qp_divrem(n_q, mpoly)[1]


def _numeric_point(seed: int):
    rng = random.Random(seed)
    a0 = Fraction(rng.randint(5, 13), rng.randint(7, 11))
    e0 = Fraction(rng.randint(5, 13), rng.randint(7, 11))
    return a0, e0


def numeric_root_check(num: LPoly, order: int, mult: int, seed: int = 42) -> bool:
    """Check that ``num`` and its first ``mult - 1`` q-derivatives vanish at a
    primitive ``order``-th root of unity (parameters at a random rational point)."""
    a0, e0 = _numeric_point(seed)
    lo, hi = num.q_range()
    span = max(abs(lo), abs(hi)) + 2
    pdeg = 0
    for key in num.blocks:
        pdeg = max(pdeg, abs(key[0]) + abs(key[1]))
    digits = (
        50
        + len(str(num.max_abs()))
        + len(str(num.nterms()))
        + mult * len(str(span))
        + int(pdeg * 0.5)
    )
    with mpmath.workdps(digits):
        z = root_of_unity(order, 1, digits)
        a = mpmath.mpf(a0.numerator) / a0.denominator
        e = mpmath.mpf(e0.numerator) / e0.denominator
        p = num
        for _ in range(mult):
            if abs(p.eval(z, a, e)) >= NUMERIC_TOL:
                return False
            p = p.deriv_q()
    return True


def check_congruence(diff: QFraction, modulus, assignments=(), claim_name: str = "",
                     numeric: bool = True, seed: int = 42) -> CheckResult:
    """Decide ``diff ≡ 0`` modulo a concrete :class:`~qcong.polyq.Modulus`."""
    t0 = time.perf_counter()
    res = CheckResult(claim_name, tuple(assignments), True, modulus=str(modulus))
    if diff.is_zero():
        res.remainder = []
        res.elapsed = time.perf_counter() - t0
        res.numeric_ok = True if numeric else None
        return res
    mod_atoms = modulus_atoms(modulus)
    coprime = True
    numeric_ok = True if numeric else None
    for atom, m in sorted(mod_atoms.items()):
        mu = diff.den.get(atom, 0)
        need = m + mu
        v, _ = atom_valuation(diff.num, atom, need)
        ok = v >= need
        if v < mu:
            coprime = False
        res.factors.append({
            "factor": str(atom),
            "modulus_multiplicity": m,
            "denominator_multiplicity": mu,
            "numerator_order": v if v < need else f">={need}",
            "holds": ok,
        })
        if not ok:
            res.holds = False
        elif numeric and atom.is_q_only() and atom.order > 1:
            _, reduced = atom_valuation(diff.num, atom, mu)
            if not numeric_root_check(reduced, atom.order, m, seed):
                numeric_ok = False
    res.denominator_coprime_to_modulus = coprime
    res.numeric_ok = numeric_ok
    if res.holds:
        res.remainder = []
        res.remainder_degree = -1
    else:
        if diff.num.is_q_only() and all(a.is_q_only() for a in mod_atoms):
            rem = _remainder_q_only(diff, mod_atoms)
            res.remainder = rem
            res.remainder_degree = len(rem) - 1
            res.remainder_hash = _hash_coeffs(rem)
        else:
            rem = _remainder_general(diff, modulus)
            res.remainder = rem
            res.remainder_degree = rem.degree()
            res.remainder_hash = _hash_coeffs(str(c) for c in rem.coeffs)
    res.elapsed = time.perf_counter() - t0
    return res


def check_concrete(cc, numeric: bool = True, seed: int = 42) -> CheckResult:
    """Run a congruence claim instance end to end."""
    t0 = time.perf_counter()
    diff = lhs_minus_rhs(cc)
    res = check_congruence(diff, cc.modulus, cc.assignments, cc.name, numeric=numeric, seed=seed)
    res.elapsed = time.perf_counter() - t0
    return res


# series identities -----------------------------------------------------------


@dataclass(frozen=True)
class SeriesProductSpec:
    """``prod (q^a; q^b)_inf`` over ``factors = [(a, b, "num" | "den"), ...]``."""

    factors: tuple = ()


def product_truncate(spec: SeriesProductSpec, N: int) -> QPoly:
    from .series import product_truncate as _pt

    return QPoly.from_ints(_pt(spec.factors, N))


def _mono_value(m, q0):
    return mpmath.mpf(m.coef.numerator) / m.coef.denominator * q0 ** m.q


def series_numeric_check(cc, q0=Fraction(1, 7), dps: int = 50, tol: str = "1e-20"):
    """Both sides of a series claim evaluated in floating point at ``q = q0``."""
    from .numeric import numeric_eval

    with mpmath.workdps(dps):
        q = mpmath.mpf(q0.numerator) / q0.denominator
        values = {"q": q}
        for name, m in cc.monos.items():
            if name != "q":
                if m.a or m.e:
                    continue
                values[name] = _mono_value(m, q)
        lhs = numeric_eval(cc.claim.lhs, cc.env, values)
        rhs = numeric_eval(cc.claim.rhs, cc.env, values)
        diff = abs(lhs - rhs)
        return diff < mpmath.mpf(tol), mpmath.nstr(diff, 5)


def series_identity_check(cc, N: int = 40, numeric: bool = True) -> CheckResult:
    """Coefficient-wise comparison of both sides up to ``q^N``."""
    from .series import expand

    t0 = time.perf_counter()
    ctx = Context(cc.env, cc.monos)
    lhs = expand(cc.claim.lhs, ctx, N)
    rhs = expand(cc.claim.rhs, ctx, N)
    lo = min(lhs.val, rhs.val, 0)
    res = CheckResult(cc.name, cc.assignments, True, kind="series", modulus=f"O(q^{N + 1})")
    for n in range(lo, N + 1):
        if lhs.coeff(n) != rhs.coeff(n):
            res.holds = False
            res.remainder_degree = n
            res.detail = f"first mismatch at q^{n}: {lhs.coeff(n)} != {rhs.coeff(n)}"
            break
    diff = [lhs.coeff(n) - rhs.coeff(n) for n in range(lo, N + 1)]
    res.remainder = [] if res.holds else diff
    res.remainder_hash = "" if res.holds else _hash_coeffs(diff)
    if res.holds:
        res.detail = f"equal through q^{N}"
    if numeric:
        ok, gap = series_numeric_check(cc)
        res.numeric_ok = ok
        res.detail += f"; |lhs - rhs| at q=1/7 is {gap}"
    res.elapsed = time.perf_counter() - t0
    return res


def rahman_substitutions(count: int = 3, seed: int = 42, d0: bool = False) -> list:
    """Random parameters ``r * q^m`` keeping every base a positive q-power."""
    rng = random.Random(seed)
    out = []

    def coef():
        c = Fraction(rng.randint(1, 9), rng.randint(2, 9))
        return -c if rng.random() < 0.5 else c

    def mono(c, m):
        return f"({c})*q^{m}" if m != 1 else f"({c})*q"

    for _ in range(count):
        mb, mc = rng.randint(1, 2), rng.randint(1, 2)
        ma = mb + mc + rng.randint(0, 1)
        subs = {"a": mono(coef(), ma), "b": mono(coef(), mb), "c": mono(coef(), mc)}
        if not d0:
            subs["d"] = mono(coef(), rng.randint(1, ma - 1))
        out.append(subs)
    return out


def rahman_check(params: dict, N: int = 25, d0: bool = False, claims=None) -> CheckResult:
    """Check the quadratic transformation (or its ``d -> 0`` form) at a substitution."""
    from .claims import instantiate, registry_load

    name = "rahman_d0" if d0 else "rahman"
    pool = claims if claims is not None else {c.name: c for c in registry_load()}
    cc = instantiate(pool[name], params)
    return series_identity_check(cc, N)


__all__ = [
    "CheckResult",
    "SeriesProductSpec",
    "sum_claim",
    "rhs_claim",
    "lhs_minus_rhs",
    "check_congruence",
    "check_concrete",
    "numeric_root_check",
    "product_truncate",
    "series_identity_check",
    "series_numeric_check",
    "rahman_substitutions",
    "rahman_check",
]
