"""Pure-Python dense polynomial kernels.

Polynomials are plain lists of coefficients, lowest degree first.  These
functions define the semantics that the compiled kernels must reproduce
bit for bit; ``qcong.kernels`` picks one implementation at import time.
"""
from itertools import repeat
from operator import add, mul, sub

BACKEND = "python"


def trim(a):
    """Drop trailing zero coefficients in place and return ``a``."""
    while a and not a[-1]:
        a.pop()
    return a


def poly_mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    la = len(a)
    out = [0] * (la + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            out[j:j + la] = map(add, out[j:j + la], map(mul, a, repeat(bj)))
    return out


def poly_divmod(a, m):
    """Divide ``a`` by ``m`` whose leading coefficient is +1 or -1.

    Returns ``(quot, rem)`` with ``a == quot*m + rem`` and ``len(rem) < len(m)``.
    Both results are trimmed.
    """
    dm = len(m) - 1
    lc = m[-1]
    if lc not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    r = list(a)
    if len(r) <= dm:
        return [], trim(r)
    quot = [0] * (len(r) - dm)
    body = m[:dm]
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if not c:
            continue
        if lc == -1:
            c = -c
        quot[i - dm] = c
        s = i - dm
        r[s:i] = map(sub, r[s:i], map(mul, body, repeat(c)))
        r[i] = 0
    del r[dm:]
    return trim(quot), trim(r)


def poly_rem(a, m):
    return poly_divmod(a, m)[1]


def axpy(dst, src, offset, coef):
    """``dst[offset + i] += coef * src[i]`` in place; ``dst`` must be long enough."""
    if not coef:
        return dst
    end = offset + len(src)
    if coef == 1:
        dst[offset:end] = map(add, dst[offset:end], src)
    elif coef == -1:
        dst[offset:end] = map(sub, dst[offset:end], src)
    else:
        dst[offset:end] = map(add, dst[offset:end], map(mul, src, repeat(coef)))
    return dst


def mul_binomial(a, shift, c):
    """Return the coefficients of ``(1 - c*q**shift) * a`` for ``shift >= 0``."""
    out = list(a) + [0] * shift
    axpy(out, a, shift, -c)
    return trim(out)


def geom_div(a, shift, c, n):
    """Solve ``(1 - c*q**shift) * b == a  (mod q**n)`` for ``b``; needs ``shift >= 1``."""
    b = list(a[:n]) + [0] * max(0, n - len(a))
    if c:
        for i in range(shift, n):
            t = b[i - shift]
            if t:
                b[i] += c * t
    return b
