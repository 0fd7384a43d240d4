"""The compiled kernels agree with the pure-Python reference on random inputs."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from pwsys.algebra import _pykernels as py
from pwsys.algebra import kernels

ck = pytest.importorskip("pwsys.algebra._ckernels")

P = 2 ** 31 - 1
SEEDS = range(150)


def _terms(rng: random.Random, n: int) -> dict:
    return {rng.randrange(0, 1 << 48): Fraction(rng.randrange(-50, 50), rng.randrange(1, 9))
            for _ in range(n)}


def test_active_backend_is_compiled():
    assert kernels.BACKEND == "cython"
    assert py.BACKEND == "python"


@pytest.mark.parametrize("seed", SEEDS)
def test_mul_and_add_agree(seed):
    rng = random.Random(seed)
    a, b = _terms(rng, rng.randrange(0, 12)), _terms(rng, rng.randrange(0, 12))
    assert ck.mul_terms(a, b) == py.mul_terms(a, b)
    s = Fraction(rng.randrange(-5, 5), 3)
    acc1, acc2 = dict(a), dict(a)
    ck.add_scaled(acc1, b, s)
    py.add_scaled(acc2, b, s)
    assert acc1 == acc2


@pytest.mark.parametrize("seed", SEEDS)
def test_modular_kernels_agree(seed):
    rng = random.Random(seed)
    k = rng.randrange(1, 5)
    n = rng.randrange(1, 15)
    exps = [[rng.randrange(0, 7) for _ in range(k)] for _ in range(n)]
    coeffs = [rng.randrange(-10 ** 12, 10 ** 12) for _ in range(n)]
    point = [rng.randrange(1, P) for _ in range(k)]
    assert ck.univariate_images(exps, coeffs, point, P) == py.univariate_images(exps, coeffs, point, P)
    a = [rng.randrange(0, P) for _ in range(rng.randrange(0, 10))]
    b = [rng.randrange(0, P) for _ in range(rng.randrange(0, 10))]
    common = [rng.randrange(0, P) for _ in range(rng.randrange(1, 4))]
    assert ck.gcd_modp(a, b, P) == py.gcd_modp(a, b, P)
    mul = lambda u, v: [sum(u[i] * v[j - i] for i in range(len(u)) if 0 <= j - i < len(v)) % P  # noqa: E731
                        for j in range(len(u) + len(v) - 1)]
    if a and b:
        assert ck.gcd_modp(mul(a, common), mul(b, common), P) == \
            py.gcd_modp(mul(a, common), mul(b, common), P)
