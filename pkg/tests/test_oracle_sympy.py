"""Cross-check cyclotomic orders with an independent computer algebra system."""
import pytest

sp = pytest.importorskip("sympy")

from qcong.claims import instantiate  # noqa: E402
from qcong.engine import check_concrete  # noqa: E402

q = sp.symbols("q")


def _poch(b, step, k):
    out = sp.Integer(1)
    for j in range(k):
        out *= 1 - b * q ** (step * j)
    return out


def _qint(m):
    return sp.cancel((1 - q ** m) / (1 - q))


def _order(expr, n):
    num, den = sp.fraction(sp.cancel(sp.together(expr)))
    phi = sp.Poly(sp.cyclotomic_poly(n, q), q)

    def strip(p):
        p, v = sp.Poly(sp.expand(p), q), 0
        while True:
            quo, rem = sp.div(p, phi)
            if not rem.is_zero:
                return v
            p, v = quo, v + 1

    return strip(num) - strip(den)


def _case1(n):
    s = 0
    for k in range((n - 1) // 2 + 1):
        s += (_qint(6 * k - 1) if k else -1 / q) * _poch(q ** -1, 4, k) * _poch(q ** -1, 2, k) * _poch(q, 2, k) ** 2 \
            / (_poch(q ** 2, 2, k) * _poch(q ** 4, 4, k) * _poch(q ** 2, 4, k) ** 2) * q ** (k * k + k + 1)
    m = (n - 1) // 4
    return s + _poch(q ** 2, 4, m) / _poch(q ** 4, 4, m) * q ** m


def _case3(n):
    s = 0
    for k in range((n - 1) // 2 + 1):
        s += (_qint(6 * k - 1) if k else -1 / q) * _poch(q ** -1, 4, k) * _poch(q ** -1, 2, k) * _poch(q, 2, k) ** 2 \
            / (_poch(q ** 2, 2, k) * _poch(q ** 4, 4, k) * _poch(q ** 2, 4, k) ** 2) * q ** (k * k + k + 1)
    return s


@pytest.mark.parametrize("n", [5, 9])
def test_first_case_order(claims, n):
    assert _order(_case1(n), n) >= 3
    assert check_concrete(instantiate(claims["thm1_4_case1"], {"n": n})).holds


@pytest.mark.slow
def test_counterexample_orders(claims):
    diff = _case3(15)
    res = check_concrete(instantiate(claims["counterexample_n15"], {"n": 15}), numeric=False)
    by_factor = {f["factor"]: f for f in res.factors}
    # [15] Phi_15^2 = Phi_3 Phi_5 Phi_15^3 and only Phi_5 fails to divide
    assert _order(diff, 5) < 1
    assert _order(diff, 3) >= 1 and _order(diff, 15) >= 3
    assert not by_factor["Phi_5(q)"]["holds"]
    assert by_factor["Phi_3(q)"]["holds"] and by_factor["Phi_15(q)"]["holds"]
