"""Compare the compiled kernels with the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat N]

Runs the raw polynomial kernels on big-integer inputs, then a full
congruence check under each backend (the latter in subprocesses, since the
backend is fixed at import time).
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from qcong import _pykernels as py

try:
    from qcong import _ckernels as cy
except ImportError:
    cy = None

END_TO_END = """
import time
from qcong.claims import instantiate, registry_load
from qcong.engine import check_concrete
from qcong.kernels import BACKEND
claims = {c.name: c for c in registry_load()}
t0 = time.perf_counter()
for name, args in [("thm1_1", {"d": 2, "n": 11}), ("thm1_1", {"d": 4, "n": 13}),
                   ("thm1_4_case3", {"n": 15}), ("conj5_4", {"n": 5, "r": 2, "d": 2})]:
    assert check_concrete(instantiate(claims[name], args), numeric=False).holds
print(BACKEND, time.perf_counter() - t0)
"""


def _inputs(seed=1, size=400, bits=200):
    rng = random.Random(seed)
    a = [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(size)]
    b = [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(size)]
    m = [rng.randint(-3, 3) for _ in range(60)] + [1]
    return a, b, m


def bench_kernels(repeat):
    a, b, m = _inputs()
    cases = {
        "poly_mul 400x400": lambda k: k.poly_mul(a, b),
        "poly_divmod 800/61": lambda k: k.poly_divmod(py.poly_mul(a, b), m),
        "mul_binomial x50": lambda k: [k.mul_binomial(a, s, -1) for s in range(1, 51)],
        "geom_div x50": lambda k: [k.geom_div(a, s, 1, 400) for s in range(1, 51)],
    }
    print(f"{'kernel':<22}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, fn in cases.items():
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=repeat)) * 1e3
        if cy is None:
            print(f"{name:<22}{tp:>14.2f}{'n/a':>14}{'':>10}")
            continue
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=repeat)) * 1e3
        print(f"{name:<22}{tp:>14.2f}{tc:>14.2f}{tp / tc:>9.2f}x")


def bench_end_to_end():
    print("\nend to end (four congruence checks):")
    for pure in (True, False):
        env = dict(os.environ)
        env.pop("QCONG_PURE_PYTHON", None)
        if pure:
            env["QCONG_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"  {backend:<8}{float(secs):8.2f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    bench_kernels(args.repeat)
    bench_end_to_end()


if __name__ == "__main__":
    main()
