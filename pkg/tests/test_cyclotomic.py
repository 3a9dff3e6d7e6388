from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from tmcurves.cyclotomic import (
    CycNumber,
    RootOfUnity,
    certified_sign,
    cyclotomic_polynomial,
    embed,
    embed_batch,
    root,
)

CONDUCTORS = [3, 4, 5, 6, 8, 12]


def cyc(m):
    coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(coef, min_size=m, max_size=m).map(
        lambda cs: sum((root(m, j) * c for j, c in enumerate(cs)), CycNumber.zero(m)))


any_cyc = st.sampled_from(CONDUCTORS).flatmap(cyc)


def reference(a, dps=60):
    with mpmath.workdps(dps):
        return sum(mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * j) / a.m)
                   for j, c in enumerate(a.coefficients))


def test_root_examples():
    assert root(6, 6) == 1
    i = root(4, 1)
    assert i * i == -1 and i.m == 4
    assert root(3, 1) + root(3, 2) == -1
    with pytest.raises(ValueError):
        root(0, 1)


def test_field_examples():
    z5 = root(5)
    assert z5 ** 2 * z5 == root(5, 3)
    x = root(12, 5) * Fraction(3, 7) + 2
    assert (x + (-x)).is_zero()
    w = 1 - root(3)
    assert w * (1 - root(3, 2)) == 3
    assert z5.inv() == root(5, 4)
    assert CycNumber.rational(2).inv() == Fraction(1, 2)
    assert w.inv() == (1 - root(3, 2)) / 3
    with pytest.raises(ZeroDivisionError):
        CycNumber.zero(5).inv()


def test_conj_examples():
    assert root(4).conj() == -root(4)
    assert CycNumber.rational(Fraction(5, 3)).conj() == Fraction(5, 3)
    r = 1 - root(3) + root(3, 2)
    assert r * r.conj() == 4


def test_embed_examples():
    z, mod = embed(CycNumber.one())
    assert z == 1 and mod.lower == mod.upper == 1
    z, mod = embed(CycNumber.rational(3))
    assert z == 3 and mod.lower == mod.upper == 3
    z, _ = embed(root(4))
    assert abs(z - 1j) < 1e-12


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("m", range(2, 13))
def test_roots_sum_to_zero(m):
    assert sum((root(m, j) for j in range(m)), CycNumber.zero(m)).is_zero()


def test_canonical_across_conductors():
    assert root(6, 2) == root(3, 1)
    assert hash(root(6, 2)) == hash(root(3, 1))
    assert root(12, 6) == -1 and hash(root(12, 6)) == hash(-1)
    assert (root(4) * root(3)).minimal().m == 12
    assert root(10, 5).minimal().m == 1


def test_root_of_unity_canonical():
    assert RootOfUnity(6, 2) == RootOfUnity(3, 1)
    assert RootOfUnity(6, 8) == RootOfUnity(3, 1)
    assert RootOfUnity(4, 0) == RootOfUnity(1, 0)
    assert RootOfUnity(6, 1) * RootOfUnity(6, 5) == RootOfUnity(1, 0)
    assert RootOfUnity(6, 1).inverse() == RootOfUnity(6, 5)
    assert RootOfUnity(5, 3).to_cyc() == root(5, 3)


def test_certified_sign():
    assert certified_sign(CycNumber.rational(Fraction(-1, 10**30))) == -1
    assert certified_sign(CycNumber.zero()) == 0
    s = root(12) + root(12, 11)  # sqrt(3)
    assert certified_sign(s * s - 3) == 0
    assert certified_sign(s - Fraction(17320508075688772, 10**16)) == 1


@given(any_cyc, any_cyc, any_cyc)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert (a - a).is_zero()
    if not a.is_zero():
        assert a * a.inv() == 1
        assert (b / a) * a == b


@given(st.sampled_from(CONDUCTORS), st.data())
def test_many_cases_per_conductor(m, data):
    a = data.draw(cyc(m))
    b = data.draw(cyc(m))
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.abs2().is_rational() or a.abs2() == a.abs2().conj()


@given(any_cyc, st.sampled_from([Fraction(1, 10**6), Fraction(1, 10**12), Fraction(1, 10**14)]))
def test_embedding_soundness(a, width):
    z, mod = embed(a, width)
    with mpmath.workdps(60):
        ref = reference(a)
        assert abs(mpmath.mpc(z) - ref) < mpmath.mpf(width.numerator) / width.denominator
        lower = mpmath.mpf(mod.lower.numerator) / mod.lower.denominator
        upper = mpmath.mpf(mod.upper.numerator) / mod.upper.denominator
        assert lower - mpmath.mpf(10) ** -50 <= abs(ref) <= upper + mpmath.mpf(10) ** -50
    assert mod.lower <= mod.upper and mod.upper - mod.lower < width


@given(st.lists(any_cyc, min_size=1, max_size=30))
def test_batch_embedding_soundness(values):
    out = embed_batch(values, Fraction(1, 10**12))
    for z, a in zip(out, values):
        assert abs(mpmath.mpc(complex(z)) - reference(a)) < 1e-12


@given(any_cyc, st.integers(1, 11))
def test_galois_is_automorphism(a, j):
    m = a.m
    if np.gcd(j, m) != 1:
        return
    b = a * a + 1
    assert b.galois(j) == a.galois(j) * a.galois(j) + 1


@pytest.mark.parametrize("m", CONDUCTORS)
def test_field_axioms_thousand_cases(m):
    rng = np.random.default_rng(m)
    basis = [root(m, j) for j in range(m)]

    def draw():
        nums = rng.integers(-4, 5, size=m)
        den = int(rng.integers(1, 4))
        return sum((basis[j] * Fraction(int(c), den) for j, c in enumerate(nums) if c), CycNumber.zero(m))

    for _ in range(1000):
        a, b, c = draw(), draw(), draw()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + (-a)).nums == CycNumber.zero(m).nums
        if not a.is_zero():
            assert a * a.inv() == 1
