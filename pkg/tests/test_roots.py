import os
from fractions import Fraction
from math import sqrt

import pytest
from hypothesis import given, settings, strategies as st

from seplab.algebra import Poly, discriminant, height
from seplab.families import gen_P, gen_Q, gen_p, gen_r, x_n_at
from seplab.roots import (HeightTooSmall, NotSquarefree, PrecisionExhausted, cluster_product,
                          conjugate_pair_scaling, disc_crosscheck, disc_interval, e_value,
                          find_roots, mahler_sanity, precision_cap, separation, sqrt_bounds)


def _cmul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _ceval(p, re, im):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(p.coeffs):
        acc = _cmul(acc, (re, im))
        acc = (acc[0] + c, acc[1])
    return acc


def assert_certified(rs):
    """Independent exact check: d * |p(c)| <= r * |p'(c)| at every centre."""
    p = rs.poly
    d = p.degree
    dp = p.derivative()
    assert len(rs.disks) == d
    for disk in rs.disks:
        v = _ceval(p, disk.re, disk.im)
        w = _ceval(dp, disk.re, disk.im)
        assert d * d * (v[0] ** 2 + v[1] ** 2) <= disk.radius ** 2 * (w[0] ** 2 + w[1] ** 2)


def test_sqrt_two():
    rs = find_roots(Poly([-2, 0, 1]), 128)
    assert rs.disjoint
    centres = sorted(float(d.re) for d in rs.disks)
    assert centres == pytest.approx([-sqrt(2), sqrt(2)], abs=1e-15)
    assert all(d.radius < Fraction(1, 2 ** 100) for d in rs.disks)
    assert_certified(rs)


def test_i():
    rs = find_roots(Poly([1, 0, 1]))
    ims = sorted(float(d.im) for d in rs.disks)
    assert ims == pytest.approx([-1, 1], abs=1e-30)
    assert all(abs(d.re) < 1e-30 for d in rs.disks)
    assert_certified(rs)


def test_P4_10_two_roots_near_xn():
    p = gen_P(4).instantiate(10)
    rs = find_roots(p)
    assert len(rs) == 4 and rs.disjoint
    close = [d for d in rs.disks if (d.re - Fraction(12, 131)) ** 2 + d.im ** 2 < Fraction(1, 10 ** 8)]
    assert len(close) == 2
    assert_certified(rs)


@pytest.mark.parametrize("poly", [
    gen_P(6).instantiate(1000),
    gen_Q(6).instantiate(100),
    gen_r(7).instantiate(1000),
    Poly([1, -3, 0, 0, 0, 0, 0, 2]),
])
def test_certification_soundness_families(poly):
    assert_certified(find_roots(poly))


@given(st.lists(st.integers(-30, 30), min_size=3, max_size=8))
@settings(max_examples=25, deadline=None)
def test_certification_soundness_random(coeffs):
    p = Poly(coeffs)
    if p.is_zero() or p.degree < 1 or p.coeff(0) == 0:
        return
    try:
        rs = find_roots(p)
    except NotSquarefree:
        return
    assert_certified(rs)


def test_not_squarefree():
    with pytest.raises(NotSquarefree):
        find_roots(Poly([1, 2, 1]))


def test_precision_validation():
    with pytest.raises(ValueError):
        find_roots(Poly([-2, 0, 1]), prec=256, cap=128)
    with pytest.raises(ValueError):
        find_roots(Poly([-2, 0, 1]), prec=16)


def test_precision_exhausted():
    # roots 1 and 1 + 2^-200 cannot be told apart with a 128 bit cap
    a = Poly([-1, 1])
    b = Poly([-(1 << 200) - 1, 1 << 200])
    with pytest.raises(PrecisionExhausted):
        find_roots(a * b * Poly([1, 0, 1]), prec=64, cap=128)


def test_env_precision_cap(monkeypatch):
    monkeypatch.setenv("SEPLAB_PRECISION_CAP", "256")
    assert precision_cap() == 256
    monkeypatch.delenv("SEPLAB_PRECISION_CAP")
    assert precision_cap() == 8192


def test_sqrt_bounds():
    lo, hi = sqrt_bounds(Fraction(2), 64)
    assert lo * lo <= 2 <= hi * hi
    assert hi - lo < Fraction(1, 2 ** 60)


def test_separation_examples():
    lo, hi = separation(Poly([0, -1, 1]))
    assert lo <= 1 <= hi
    lo, hi = separation(Poly([-2, 0, 1]))
    assert lo * lo <= 8 <= hi * hi


def test_separation_bound_P4_100():
    n = 100
    lo, hi = separation(gen_P(4).instantiate(n))
    assert 0 < lo <= hi <= Fraction(1, n * (n * n + 3 * n + 1) ** 3)


def test_monotone_refinement():
    p = gen_P(5).instantiate(100)
    prev = None
    for prec in (128, 256, 512):
        cur = separation(p, roots=find_roots(p, prec, tight_bits=0))
        if prev is not None:
            # the sharper interval overlaps and is no wider than the coarse one by more than rounding
            assert cur[0] <= prev[1] and prev[0] <= cur[1]
            assert cur[1] - cur[0] <= (prev[1] - prev[0]) * (1 + Fraction(1, 10 ** 6))
        prev = cur


def test_e_value_sqrt_two():
    lo, hi = e_value(Poly([-2, 0, 1]))
    assert lo <= Fraction(-3, 2) <= hi
    assert hi - lo < Fraction(1, 10 ** 15)


def test_e_value_height_too_small():
    with pytest.raises(HeightTooSmall):
        e_value(Poly([0, -1, 1]))


def test_e_value_P5_large_n():
    lo, hi = e_value(gen_P(5).instantiate(10 ** 4))
    assert Fraction(27, 10) <= lo <= hi <= 3


def test_cluster_k2_is_separation():
    p = gen_p(5).instantiate(30)
    rs = find_roots(p)
    res = cluster_product(p, 2, roots=rs)
    assert (res.lo, res.hi) == separation(p, roots=rs)
    assert res.exhaustive


def test_cluster_full_matches_discriminant():
    p = Poly([3, -1, 4, 1, -5, 2])
    rs = find_roots(p)
    res = cluster_product(p, p.degree, roots=rs)
    exact = Fraction(abs(discriminant(p)), p.lc ** (2 * p.degree - 2))
    assert res.lo ** 2 <= exact <= res.hi ** 2


def test_cluster_product_range():
    with pytest.raises(ValueError):
        cluster_product(Poly([-2, 0, 1]), 3)


@pytest.mark.parametrize("poly", [Poly([-2, 0, 1]), gen_p(3).instantiate(5), gen_r(4).instantiate(7)])
def test_disc_crosscheck(poly):
    assert disc_crosscheck(poly)


def test_disc_interval_sqrt_two():
    lo, hi = disc_interval(find_roots(Poly([-2, 0, 1])))
    assert lo <= 8 <= hi


@pytest.mark.parametrize("poly", [gen_P(4).instantiate(100), Poly([-2, 0, 1]), gen_r(6).instantiate(50)])
def test_mahler_sanity(poly):
    assert mahler_sanity(poly)


def test_mahler_sanity_catches_impossible_e():
    p = gen_P(4).instantiate(100)
    assert not mahler_sanity(p, e=(Fraction(0), Fraction(50)))


@pytest.mark.parametrize("D", [4, 5])
def test_conjugate_pair_scaling(D):
    cp = conjugate_pair_scaling(D, 1000)
    assert 0.9 <= cp.gamma_hat <= 1.1
    # the real part sits where the second-order Taylor model puts it
    assert cp.beta_hat == pytest.approx(cp.beta_taylor, rel=0.05)


def test_conjugate_pair_small_n_recorded():
    cp = conjugate_pair_scaling(4, 10)
    assert cp.gamma_hat > 0


def test_conjugate_pair_validation():
    with pytest.raises(ValueError):
        conjugate_pair_scaling(3, 100)


def test_determinism():
    p = gen_Q(7).instantiate(300)
    assert find_roots(p) == find_roots(p)
