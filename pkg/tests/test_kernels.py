"""The compiled kernels must agree with the pure-Python fallback exactly."""
import importlib
import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcong import _pykernels as py
from qcong import kernels

try:
    from qcong import _ckernels as cy
except ImportError:  # extension not built
    cy = None

needs_c = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

ints = st.integers(-(10**30), 10**30)
polys = st.lists(ints, max_size=30)
monic = st.lists(ints, max_size=12).map(lambda xs: xs + [1])
SET = settings(max_examples=200, deadline=None)


def _mul_ref(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@SET
@given(polys, polys)
def test_python_mul_matches_schoolbook(a, b):
    assert py.poly_mul(a, b) == _mul_ref(a, b)


@SET
@given(polys, monic, st.sampled_from([1, -1]))
def test_python_divmod_reconstructs(a, m, sign):
    m = m[:-1] + [sign]
    qt, r = py.poly_divmod(a, m)
    back = _mul_ref(qt, m)
    back += [0] * (len(a) - len(back))
    for i, c in enumerate(r):
        back[i] += c
    assert py.trim(back) == py.trim(list(a))
    assert len(r) < len(m)


def test_divmod_rejects_non_unit_leading():
    with pytest.raises(ValueError):
        py.poly_divmod([1, 2, 3], [1, 2])


@SET
@given(polys, st.integers(1, 6), ints, st.integers(1, 40))
def test_geom_div_inverts_mul_binomial(a, shift, c, n):
    prod = py.mul_binomial(a, shift, c)
    assert py.geom_div(prod, shift, c, n) == (list(a) + [0] * n)[:n]


@needs_c
@SET
@given(polys, polys)
def test_mul_parity(a, b):
    assert cy.poly_mul(a, b) == py.poly_mul(a, b)


@needs_c
@SET
@given(polys, monic, st.sampled_from([1, -1]))
def test_divmod_parity(a, m, sign):
    m = m[:-1] + [sign]
    assert cy.poly_divmod(a, m) == py.poly_divmod(a, m)
    assert cy.poly_rem(a, m) == py.poly_rem(a, m)


@needs_c
@SET
@given(polys, st.integers(0, 6), ints, st.integers(1, 40))
def test_binomial_kernels_parity(a, shift, c, n):
    assert cy.mul_binomial(a, shift, c) == py.mul_binomial(a, shift, c)
    if shift:
        assert cy.geom_div(a, shift, c, n) == py.geom_div(a, shift, c, n)


@needs_c
@SET
@given(polys, polys, st.integers(0, 5), ints)
def test_axpy_parity(dst, src, offset, coef):
    dst = dst + [0] * (offset + len(src))
    assert cy.axpy(list(dst), src, offset, coef) == py.axpy(list(dst), src, offset, coef)


@needs_c
def test_kernels_accept_fractions():
    a = [Fraction(1, 2), 3, Fraction(-2, 3)]
    b = [1, Fraction(5, 7)]
    assert cy.poly_mul(a, b) == py.poly_mul(a, b)
    assert cy.trim([Fraction(1), Fraction(0)]) == [1]


def test_env_var_forces_fallback():
    code = "import qcong.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, QCONG_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_default_backend_prefers_compiled():
    expected = "cython" if cy is not None else "python"
    if os.environ.get("QCONG_PURE_PYTHON"):
        expected = "python"
    assert importlib.reload(kernels).BACKEND == expected
