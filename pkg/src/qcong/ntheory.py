"""Small number-theory helpers and memoized integer cyclotomic polynomials."""
from __future__ import annotations

import threading
from math import gcd

from . import kernels

_CYCLO: dict[int, tuple[int, ...]] = {}
_CYCLO_LOCK = threading.Lock()


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("divisors of a non-positive integer")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.

    Computed as (q^n - 1) divided by the product of the proper-divisor
    cyclotomics.  Entries of the memo table are written once and never
    mutated, so concurrent readers see either nothing or the final tuple.
    """
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    hit = _CYCLO.get(n)
    if hit is not None:
        return hit
    if n == 1:
        coeffs = (-1, 1)
    else:
        num = [-1] + [0] * (n - 1) + [1]
        for d in divisors(n)[:-1]:
            num, rem = kernels.poly_divmod(num, list(cyclotomic_coeffs(d)))
            assert not rem
        coeffs = tuple(num)
    with _CYCLO_LOCK:
        return _CYCLO.setdefault(n, coeffs)


def qint_coeffs(n: int) -> list[int]:
    """Coefficients of [n] = 1 + q + ... + q^(n-1) for n >= 1."""
    if n < 1:
        raise ValueError("q-integer index must be positive")
    return [1] * n


def vp_int(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


__all__ = [
    "divisors",
    "euler_phi",
    "is_prime",
    "primes_between",
    "cyclotomic_coeffs",
    "qint_coeffs",
    "vp_int",
    "gcd",
]
