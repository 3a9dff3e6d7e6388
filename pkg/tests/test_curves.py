import random

import pytest
from hypothesis import given, strategies as st

from tmcurves.curves import (
    DekkingCurve,
    _dekking_point_digits,
    dekking_point,
    dekking_point_fast,
    scaling_info,
    segment_cap,
    totient,
)
from tmcurves.cyclotomic import CycNumber, root

SELF_SIMILAR = [DekkingCurve(2, 3, 1), DekkingCurve(2, 5, 1), DekkingCurve(3, 2, 1),
                DekkingCurve(2, 7, 2), DekkingCurve(2, 5, 3)]


def direct_sum(p, q, k, N):
    # the defining sum with t_p from the digit sum
    total = CycNumber.zero()
    for i in range(N):
        s, n = 0, i
        while n:
            n, d = divmod(n, p)
            s += d
        total = total + root(p, s % p) * root(q, k * i)
    return total


def test_totient():
    assert [totient(n) for n in (1, 3, 12, 7, 30)] == [1, 2, 4, 6, 8]


def test_point_examples():
    D = DekkingCurve(2, 3, 1)
    assert dekking_point(D, 1) == 1
    assert dekking_point(D, 4) == 3
    assert dekking_point(D, 0) == 0
    assert dekking_point(DekkingCurve(2, 12, 1), 0) == 0
    assert dekking_point(DekkingCurve(3, 2, 1), 3) == 1 - root(3) + root(3, 2)


def test_fast_examples():
    D = DekkingCurve(2, 3, 1)
    for n in range(11):
        assert dekking_point_fast(D, 4 ** n) == 3 ** n
    assert dekking_point_fast(D, 7) == dekking_point(D, 7)
    assert dekking_point_fast(DekkingCurve(3, 2, 1), 3) == 1 - root(3) + root(3, 2)
    with pytest.raises(ValueError):
        dekking_point_fast(DekkingCurve(2, 12, 1), 5)


def test_scaling_examples():
    info = scaling_info(DekkingCurve(2, 3, 1))
    assert info.Q == 4 and info.r == 3 and info.regular
    assert info.modulus.lower == info.modulus.upper == 3
    info = scaling_info(DekkingCurve(3, 2, 1))
    assert info.Q == 3 and info.r == 1 - root(3) + root(3, 2) and info.regular
    assert info.r * info.r.conj() == 4
    info = scaling_info(DekkingCurve(2, 5, 1))
    assert info.Q == 16 and info.r == 5 and info.regular
    with pytest.raises(ValueError):
        scaling_info(DekkingCurve(2, 12, 1))


def test_non_regular_curve():
    info = scaling_info(DekkingCurve(2, 15, 1))
    assert info.Q == 2 ** 8 and not info.regular
    assert info.r * info.r.conj() == 1


def test_reported_regularity():
    # values computed by the package and kept as regression constants
    assert scaling_info(DekkingCurve(2, 7, 2)).r == -7
    big = scaling_info(DekkingCurve(2, 31, 6))
    assert big.Q == 2 ** 30 and big.regular
    assert 1301 < float(big.modulus.lower) < 1302


def test_scaling_matches_direct_sum():
    for D in SELF_SIMILAR:
        info = scaling_info(D)
        assert info.r == direct_sum(D.p, D.q, D.k, info.Q)


def test_curve_validation():
    with pytest.raises(ValueError):
        DekkingCurve(2, 6, 2)
    with pytest.raises(ValueError):
        DekkingCurve(1, 3, 1)
    assert DekkingCurve(2, 3, 4) == DekkingCurve(2, 3, 1)
    assert str(DekkingCurve(2, 10, 7)) == "D_{2,10,7}"


def test_segment_cap(monkeypatch):
    assert segment_cap() == 2 ** 24
    monkeypatch.setenv("TMCURVES_SEGMENT_CAP", "10")
    with pytest.raises(MemoryError):
        dekking_point(DekkingCurve(2, 3, 1), 11)
    monkeypatch.setenv("TMCURVES_SEGMENT_CAP", "zero")
    with pytest.raises(ValueError):
        segment_cap()


@pytest.mark.parametrize("D", SELF_SIMILAR, ids=str)
def test_self_similarity(D):
    info = scaling_info(D)
    pts = D.turtle.points(info.Q * 1000)
    for n in range(1001):
        assert pts[info.Q * n] == info.r * pts[n]


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 2)])
def test_step_map_is_homomorphism(p, q):
    for D in (DekkingCurve(p, q, 1),):
        for a in range(p * q):
            for b in range(p * q):
                x1, y1 = divmod(a, q)
                x2, y2 = divmod(b, q)
                s = ((x1 + x2) % p) * q + (y1 + y2) % q
                assert D.step(s) == D.step(a) * D.step(b)


@pytest.mark.parametrize("D", [DekkingCurve(2, 3, 1), DekkingCurve(3, 2, 1), DekkingCurve(2, 12, 1)], ids=str)
def test_unit_steps(D):
    for s in range(D.p * D.q):
        assert D.step(s) * D.step(s).conj() == 1


@pytest.mark.parametrize("D", [DekkingCurve(2, 3, 1), DekkingCurve(3, 2, 1)], ids=str)
def test_fast_matches_scan(D):
    pts = D.turtle.points(10**4)
    assert all(dekking_point_fast(D, N) == pts[N] for N in range(10**4 + 1))


@pytest.mark.parametrize("D", [DekkingCurve(2, 3, 1), DekkingCurve(3, 2, 1)], ids=str)
def test_fast_matches_digit_recursion_large(D):
    rng = random.Random(1)
    for _ in range(1000):
        N = rng.randrange(10**9 + 1)
        assert dekking_point_fast(D, N) == _dekking_point_digits(D, N)


@pytest.mark.parametrize("D", [DekkingCurve(2, 3, 1), DekkingCurve(3, 2, 1)], ids=str)
def test_fast_matches_long_scan(D):
    N = 10**6 + 12345
    assert dekking_point_fast(D, N) == dekking_point(D, N)


@given(st.sampled_from([(2, 3, 1), (2, 5, 3), (3, 2, 1), (2, 7, 2), (3, 4, 1), (5, 2, 1)]),
       st.integers(0, 3000))
def test_digit_recursion_matches_direct(params, N):
    D = DekkingCurve(*params)
    assert _dekking_point_digits(D, N) == dekking_point(D, N)
