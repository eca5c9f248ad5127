from hypothesis import given
from hypothesis import strategies as st

from qcong.ntheory import (
    cyclotomic_coeffs,
    divisors,
    euler_phi,
    is_prime,
    primes_between,
    qint_coeffs,
    vp_int,
)


def test_divisors_and_phi():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [euler_phi(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]


def test_primes():
    assert primes_between(1, 30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and not is_prime(0) and not is_prime(-7)


@given(st.integers(1, 500))
def test_phi_is_sum_over_divisors(n):
    assert sum(euler_phi(d) for d in divisors(n)) == n


def test_small_cyclotomics():
    assert cyclotomic_coeffs(1) == (-1, 1)
    assert cyclotomic_coeffs(4) == (1, 0, 1)
    assert cyclotomic_coeffs(6) == (1, -1, 1)
    assert qint_coeffs(5) == [1, 1, 1, 1, 1]


def test_vp_int():
    assert vp_int(250, 5) == 3
    assert vp_int(7, 5) == 0
