"""Compare the compiled and pure-Python arithmetic kernels.

Run ``python benchmarks/bench_kernels.py`` after ``pip install -e .``.  Each
row times one kernel on the same inputs with both backends and checks the
results agree.  The end-to-end row runs a symmetry check in a subprocess
per backend.
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from pwsys.algebra import _pykernels
from pwsys.algebra.gcd import PRIMES
from pwsys.algebra.symbols import SLOT_BITS

try:
    from pwsys.algebra import _ckernels
except ImportError:
    _ckernels = None


def _poly(rng: random.Random, terms: int, nvars: int, deg: int) -> dict:
    out = {}
    for _ in range(terms):
        m = sum(rng.randrange(deg + 1) << (SLOT_BITS * k) for k in range(nvars))
        out[m] = rng.randrange(-50, 51) or 1
    return out


def workloads(seed: int) -> dict:
    rng = random.Random(seed)
    p = PRIMES[0][0]
    a, b = _poly(rng, 120, 5, 4), _poly(rng, 120, 5, 4)
    ua = [rng.randrange(p) for _ in range(200)]
    ub = [rng.randrange(p) for _ in range(180)]
    exps = [tuple(rng.randrange(8) for _ in range(4)) for _ in range(400)]
    coeffs = [rng.randrange(p) for _ in exps]
    point = [rng.randrange(1, p) for _ in range(4)]
    return {
        "mul_terms 120x120": ("mul_terms", (a, b)),
        "gcd_modp deg 200/180": ("gcd_modp", (ua, ub, p)),
        "univariate_images 400 terms": ("univariate_images", (exps, coeffs, point, p)),
    }


_E2E = ("from pwsys.catalog import get_system; from pwsys.weyl import check_coxeter;"
        "import time; s=get_system('G2_1'); t=time.perf_counter();"
        "r=check_coxeter(s,1,2); print(time.perf_counter()-t, r.status)")


def end_to_end(pure: bool) -> float:
    env = dict(os.environ, PWSYS_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", _E2E], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return float(out[0])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-e2e", action="store_true", help="skip the subprocess comparison")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python backend is available")
    print(f"{'workload':32} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, (fn, inputs) in workloads(args.seed).items():
        py = getattr(_pykernels, fn)
        t_py = min(timeit.repeat(lambda: py(*[_copy(x) for x in inputs]),
                                 number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:32} {t_py:10.2f} {'-':>10} {'-':>8}")
            continue
        cy = getattr(_ckernels, fn)
        if py(*[_copy(x) for x in inputs]) != cy(*[_copy(x) for x in inputs]):
            raise SystemExit(f"backends disagree on {name}")
        t_cy = min(timeit.repeat(lambda: cy(*[_copy(x) for x in inputs]),
                                 number=1, repeat=args.repeat)) * 1e3
        print(f"{name:32} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:8.2f}")
    if not args.no_e2e and _ckernels is not None:
        t_py, t_cy = end_to_end(True) * 1e3, end_to_end(False) * 1e3
        print(f"{'coxeter G2_1 s1 s2 (end to end)':32} {t_py:10.2f} {t_cy:10.2f} "
              f"{t_py / t_cy:8.2f}")


def _copy(x):
    return list(x) if isinstance(x, list) else dict(x) if isinstance(x, dict) else x


if __name__ == "__main__":
    main()
