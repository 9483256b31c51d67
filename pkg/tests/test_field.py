import math
import random

import numpy as np
import pytest

from ffstats.errors import (
    DegreeMismatchError,
    NotPrimeError,
    ReducibleModulusError,
)
from ffstats.field import CyclotomicSum, FieldCtx, cyclotomic_magnitude, is_prime


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 97, 101, 10007}
    for n in range(2, 120):
        assert is_prime(n) == all(n % d for d in range(2, n)), n
    for n in primes:
        assert is_prime(n)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(561)  # Carmichael
    assert is_prime(2**61 - 1)


def test_ctx_create_prime_field():
    ctx = FieldCtx(5)
    assert (ctx.p, ctx.k, ctx.q) == (5, 1, 5)
    assert ctx.modulus is None


def test_ctx_create_f9_with_modulus():
    # x^2 + 1 is irreducible mod 3: neither 0, 1 nor 2 squares to -1.
    assert all((r * r + 1) % 3 != 0 for r in range(3))
    ctx = FieldCtx(3, 2, modulus=[1, 0, 1])
    assert ctx.q == 9
    assert ctx.modulus == (1, 0, 1)


def test_ctx_create_rejects_composite():
    with pytest.raises(NotPrimeError):
        FieldCtx(4)


def test_ctx_create_rejects_reducible_modulus():
    # x^2 + 2 = (x-1)(x+1) mod 3
    with pytest.raises(ReducibleModulusError):
        FieldCtx(3, 2, modulus=[2, 0, 1])


def test_ctx_create_rejects_bad_degree():
    with pytest.raises(DegreeMismatchError):
        FieldCtx(3, 2, modulus=[1, 0, 0, 1])
    with pytest.raises(DegreeMismatchError):
        FieldCtx(5, 1, modulus=[1, 1])
    with pytest.raises(DegreeMismatchError):
        FieldCtx(5, 0)


def test_random_modulus_deterministic_from_seed():
    a = FieldCtx(3, 4, seed=11)
    b = FieldCtx(3, 4, seed=11)
    assert a.modulus == b.modulus
    ctx = FieldCtx(7, 3, seed=5)
    assert len(ctx.modulus) == 4 and ctx.modulus[-1] == 1


def test_prime_field_inverse_example():
    assert FieldCtx(5).inv(2) == 3  # 2*3 = 6 = 1


def test_f9_x_squared_is_two():
    ctx = FieldCtx(3, 2, modulus=[1, 0, 1])
    x = ctx.from_coords((0, 1))
    assert ctx.mul(x, x) == ctx.from_coords((2, 0)) == 2


def test_pow_zero_is_one():
    for ctx in (FieldCtx(7), FieldCtx(3, 2, modulus=[1, 0, 1])):
        for a in ctx.elements():
            assert ctx.pow(a, 0) == 1


@pytest.mark.parametrize(
    "ctx",
    [FieldCtx(7), FieldCtx(2, 3, seed=0), FieldCtx(3, 2, modulus=[1, 0, 1])],
    ids=["F7", "F8", "F9"],
)
def test_field_axioms_exhaustive(ctx):
    els = list(ctx.elements())
    for a in els:
        assert ctx.add(a, 0) == a
        assert ctx.mul(a, 1) == a
        assert ctx.add(a, ctx.neg(a)) == 0
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rng.randrange(ctx.q) for _ in range(3))
        assert ctx.add(a, b) == ctx.add(b, a)
        assert ctx.mul(a, b) == ctx.mul(b, a)
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))


def test_inv_zero_raises():
    with pytest.raises(ZeroDivisionError):
        FieldCtx(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        FieldCtx(3, 2, modulus=[1, 0, 1]).inv(0)


def test_coords_roundtrip():
    ctx = FieldCtx(3, 3, seed=2)
    for a in ctx.elements():
        cs = ctx.coords(a)
        assert len(cs) == 3 and all(0 <= c < 3 for c in cs)
        assert ctx.from_coords(cs) == a
    with pytest.raises(DegreeMismatchError):
        ctx.from_coords((1, 2))


def test_trace_prime_field_identity():
    ctx = FieldCtx(5)
    assert ctx.trace(3) == 3


def test_trace_f9_examples():
    ctx = FieldCtx(3, 2, modulus=[1, 0, 1])
    x = ctx.from_coords((0, 1))
    assert ctx.trace(x) == 0  # x + x^3 = x - x
    assert ctx.trace(1) == 2  # k copies of 1


def test_trace_additive():
    for ctx in (FieldCtx(3, 3, seed=1), FieldCtx(5, 2, seed=1)):
        rng = random.Random(3)
        for _ in range(200):
            u, v = rng.randrange(ctx.q), rng.randrange(ctx.q)
            assert ctx.trace(ctx.add(u, v)) == (ctx.trace(u) + ctx.trace(v)) % ctx.p


@pytest.mark.parametrize(
    "p,k", [(2, 10), (3, 6), (5, 4), (7, 3), (13, 2), (97, 2)]
)
def test_trace_fibers_uniform(p, k):
    # every trace value is hit by exactly q/p elements
    ctx = FieldCtx(p, k, seed=0)
    fibers = [0] * p
    for a in ctx.elements():
        fibers[ctx.trace(a)] += 1
    assert fibers == [ctx.q // p] * p


def test_psi_index_examples():
    assert FieldCtx(7).psi_index(0) == 0
    assert FieldCtx(7).psi_index(3) == 3
    ctx = FieldCtx(3, 2, modulus=[1, 0, 1])
    assert ctx.psi_index(ctx.from_coords((0, 1))) == 0


def test_magnitude_real_mass():
    s = CyclotomicSum(7)
    s.add_root(0, 5)
    assert s.magnitude() == 5.0


def test_magnitude_golden_ratio():
    s = CyclotomicSum(5)
    s.add_root(2)
    s.add_root(3)
    assert abs(s.magnitude() - (1 + math.sqrt(5)) / 2) < 1e-12


def test_magnitude_full_orbit_vanishes():
    s = CyclotomicSum(11, [1] * 11)
    assert s.magnitude() == 0.0


def test_magnitude_shift_invariant():
    rng = random.Random(5)
    for p in (2, 3, 7, 13):
        counts = [rng.randrange(-20, 20) for _ in range(p)]
        base = cyclotomic_magnitude(counts, p)
        shifted = cyclotomic_magnitude([c + 9 for c in counts], p)
        assert abs(base - shifted) < 1e-9


def test_magnitude_matches_direct_float_accumulation():
    rng = random.Random(9)
    p = 101
    n_terms = 200_000
    js = np.asarray([rng.randrange(p) for _ in range(n_terms)])
    s = CyclotomicSum(p, np.bincount(js, minlength=p).tolist())
    direct = np.exp(2j * np.pi * js / p).sum()
    assert abs(s.magnitude() - abs(direct)) < 1e-9


def test_cyclotomic_merge_is_addition():
    a = CyclotomicSum(5, [1, 2, 0, 0, 1])
    b = CyclotomicSum(5, [0, 1, 3, 0, 0])
    c = a.merge(b)
    assert c.counts == [1, 3, 3, 0, 1]
    with pytest.raises(DegreeMismatchError):
        CyclotomicSum(5).merge(CyclotomicSum(7))


def test_cyclotomic_value_matches_magnitude():
    s = CyclotomicSum(7, [2, -1, 0, 3, 0, 0, 1])
    assert abs(abs(s.value()) - s.magnitude()) < 1e-12
