"""Monomials ``c * q^i * a^j * e^k`` with rational ``c`` and integer exponents."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

VARS = ("q", "a", "e")


@dataclass(frozen=True)
class Monomial:
    coef: Fraction = Fraction(1)
    q: int = 0
    a: int = 0
    e: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))

    @classmethod
    def var(cls, name: str) -> "Monomial":
        return cls(Fraction(1), **{name: 1})

    @property
    def exps(self) -> tuple[int, int, int]:
        return (self.q, self.a, self.e)

    def is_constant(self) -> bool:
        return self.q == 0 and self.a == 0 and self.e == 0

    def is_q_only(self) -> bool:
        return self.a == 0 and self.e == 0

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Monomial(self.coef * other, self.q, self.a, self.e)
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self.coef * other.coef, self.q + other.q, self.a + other.a, self.e + other.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Monomial(self.coef / other, self.q, self.a, self.e)
        if not isinstance(other, Monomial):
            return NotImplemented
        if other.coef == 0:
            raise ZeroDivisionError("division by a zero monomial")
        return Monomial(self.coef / other.coef, self.q - other.q, self.a - other.a, self.e - other.e)

    def __pow__(self, n: int):
        n = int(n)
        if n < 0 and self.coef == 0:
            raise ZeroDivisionError("negative power of zero")
        return Monomial(self.coef ** n, self.q * n, self.a * n, self.e * n)

    def __neg__(self):
        return Monomial(-self.coef, self.q, self.a, self.e)

    def substitute(self, values: dict) -> "Monomial":
        """Replace ``a`` and/or ``e`` by monomials."""
        out = Monomial(self.coef, self.q, 0 if "a" in values else self.a, 0 if "e" in values else self.e)
        for name in ("a", "e"):
            if name in values and getattr(self, name):
                out = out * values[name] ** getattr(self, name)
        return out

    def __str__(self):
        parts = []
        for name, ex in zip(VARS, self.exps):
            if ex == 1:
                parts.append(name)
            elif ex:
                parts.append(f"{name}^{ex}" if ex > 0 else f"{name}^({ex})")
        body = "*".join(parts)
        c = self.coef
        if not body:
            return str(c)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        return f"{c}*{body}"
