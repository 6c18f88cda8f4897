"""Certified complex root enclosures and separation measurements.

Approximate roots come from Aberth-Ehrlich iteration in mpmath at a fixed
working precision.  Each approximation is an exact dyadic complex number,
so ``p`` and ``p'`` are evaluated at it *exactly* in Gaussian-integer
arithmetic.  Some root of ``p`` lies within ``deg(p) * |p(z) / p'(z)|`` of
any ``z``; that quantity, bounded above by a dyadic rational, is the disk
radius.  When the ``deg(p)`` disks are pairwise disjoint, each holds exactly
one root.  All interval endpoints are ``Fraction`` values.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath
from mpmath.ctx_iv import MPIntervalContext

from .algebra import Poly, height, is_squarefree, discriminant

DEFAULT_PRECISION = 128
DEFAULT_CAP = 8192
EXHAUSTIVE_CLUSTER_LIMIT = 200_000


class RootError(ArithmeticError):
    pass


class PrecisionExhausted(RootError):
    pass


class NotSquarefree(RootError):
    pass


class HeightTooSmall(RootError):
    pass


class NoComplexPairFound(RootError):
    pass


def precision_cap() -> int:
    return int(os.environ.get("SEPLAB_PRECISION_CAP", DEFAULT_CAP))


# -- exact dyadic helpers ---------------------------------------------------

def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_ if hasattr(x, "_mpf_") else x
    if not man:
        return Fraction(0)
    v = int(man)
    if sign:
        v = -v
    return Fraction(v << exp) if exp >= 0 else Fraction(v, 1 << -exp)


def _isqrt_ceil(m: int) -> int:
    r = math.isqrt(m)
    return r if r * r == m else r + 1


def sqrt_bounds(q: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Dyadic lo <= sqrt(q) <= hi, with relative width about 2**-bits."""
    if q < 0:
        raise ValueError("negative argument")
    if q == 0:
        return Fraction(0), Fraction(0)
    mag = q.numerator.bit_length() - q.denominator.bit_length()
    s = bits - mag // 2 + 2
    if s >= 0:
        num, den = q.numerator << (2 * s), q.denominator
    else:
        num, den = q.numerator, q.denominator << (-2 * s)
    fl, rem = divmod(num, den)
    ce = fl + (1 if rem else 0)
    lo, hi = math.isqrt(fl), _isqrt_ceil(ce)
    if s >= 0:
        return Fraction(lo, 1 << s), Fraction(hi, 1 << s)
    return Fraction(lo << -s), Fraction(hi << -s)


def _gauss_eval(p: Poly, a: int, b: int, k: int):
    """2**(k*deg) * p((a+bi)/2**k) and the matching scaled derivative, as Gaussian integers."""
    coeffs = p.coeffs
    d = len(coeffs) - 1
    # homogenised Horner: sum c_j z^j s^(d-j) with z = a+bi, s = 2**k
    pr, pi_ = 0, 0
    for j in range(d, -1, -1):
        pr, pi_ = pr * a - pi_ * b, pr * b + pi_ * a
        pr += coeffs[j] << (k * (d - j))
    dcoeffs = [j * c for j, c in enumerate(coeffs)][1:]
    qr, qi = 0, 0
    for j in range(d - 1, -1, -1):
        qr, qi = qr * a - qi * b, qr * b + qi * a
        qr += dcoeffs[j] << (k * (d - 1 - j))
    return (pr, pi_), (qr, qi)


# -- data types -------------------------------------------------------------

@dataclass(frozen=True)
class RootDisk:
    re: Fraction
    im: Fraction
    radius: Fraction

    @property
    def center(self):
        return mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                          mpmath.mpf(self.im.numerator) / self.im.denominator)

    def is_real_separated(self) -> bool:
        """True when the disk does not meet the real axis."""
        return abs(self.im) > self.radius

    def dist2_to(self, other: "RootDisk") -> Fraction:
        return (self.re - other.re) ** 2 + (self.im - other.im) ** 2


@dataclass(frozen=True)
class RootSet:
    poly: Poly
    disks: tuple
    disjoint: bool
    precision: int
    bits: int = field(default=64, repr=False)

    def __len__(self):
        return len(self.disks)

    @cached_property
    def pair_bounds(self) -> dict:
        """{(i, j): (lo, hi)} enclosing |alpha_i - alpha_j| for i < j."""
        out = {}
        for i, j in itertools.combinations(range(len(self.disks)), 2):
            a, b = self.disks[i], self.disks[j]
            lo, hi = sqrt_bounds(a.dist2_to(b), self.bits)
            rr = a.radius + b.radius
            out[i, j] = (max(lo - rr, Fraction(0)), hi + rr)
        return out


# -- Aberth iteration -------------------------------------------------------

def _initial_guesses(p: Poly):
    """Starting points on circles whose radii come from the Newton polygon of |coeffs|."""
    coeffs = p.coeffs
    d = len(coeffs) - 1
    pts = [(i, math.log2(abs(c)) if abs(c) < 2 ** 1000 else float(abs(c).bit_length()))
           for i, c in enumerate(coeffs) if c != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    guesses = []
    low = pts[0][0]
    sigma = 0.7
    for (i, yi), (j, yj) in zip(hull, hull[1:]):
        m = j - i
        r = 2.0 ** ((yi - yj) / m)
        for t in range(m):
            ang = 2 * math.pi * t / m + 2 * math.pi * i / d + sigma
            guesses.append(mpmath.mpc(r * math.cos(ang), r * math.sin(ang)))
    if low:
        r0 = min(abs(g) for g in guesses) / 4 if guesses else 0.5
        for t in range(low):
            ang = 2 * math.pi * t / low + sigma
            guesses.append(mpmath.mpc(r0 * math.cos(ang), r0 * math.sin(ang)))
    return guesses


def _aberth(p: Poly, z: list, prec: int, maxiter: int):
    coeffs = [mpmath.mpf(c) for c in p.coeffs]
    dcoeffs = [mpmath.mpf(k * c) for k, c in enumerate(p.coeffs)][1:]
    d = len(z)
    tol = mpmath.mpf(2) ** (-(prec - 6))
    done = [False] * d
    for _ in range(maxiter):
        if all(done):
            break
        for i in range(d):
            if done[i]:
                continue
            zi = z[i]
            pv = mpmath.polyval(coeffs[::-1], zi)
            if pv == 0:
                done[i] = True
                continue
            dv = mpmath.polyval(dcoeffs[::-1], zi)
            s = mpmath.fsum(1 / (zi - z[j]) for j in range(d) if j != i and z[j] != zi)
            if dv == 0:
                w = pv * mpmath.mpf(2) ** -prec + mpmath.mpf(2) ** -(prec // 2)
            else:
                ratio = pv / dv
                w = ratio / (1 - ratio * s)
            z[i] = zi - w
            if abs(w) <= tol * max(abs(z[i]), tol):
                done[i] = True
    return z


def _certify_disk(p: Poly, zc, bits: int) -> RootDisk:
    re, im = _mpf_to_fraction(zc.real), _mpf_to_fraction(zc.imag)
    k = max(re.denominator.bit_length(), im.denominator.bit_length()) - 1
    a = re.numerator * ((1 << k) // re.denominator)
    b = im.numerator * ((1 << k) // im.denominator)
    (pr, pim), (qr, qim) = _gauss_eval(p, a, b, k)
    d = p.degree
    num2 = pr * pr + pim * pim
    den2 = (qr * qr + qim * qim) << (2 * k)
    if den2 == 0:
        return RootDisk(re, im, Fraction(10) ** 100)
    _, r = sqrt_bounds(Fraction(d * d * num2, den2), bits)
    return RootDisk(re, im, r)


def _disjoint(disks, scale: int = 1) -> bool:
    """Pairwise check |c_i - c_j| > scale * (r_i + r_j)."""
    for a, b in itertools.combinations(disks, 2):
        rr = (a.radius + b.radius) * scale
        if a.dist2_to(b) <= rr * rr:
            return False
    return True


def find_roots(p: Poly, prec: int = DEFAULT_PRECISION, cap: int | None = None,
               tight_bits: int = 32) -> RootSet:
    """Certified pairwise-disjoint root disks for a squarefree integer polynomial.

    Precision doubles until the disks are disjoint and, while the cap
    allows, until every pair of radii is below 2**-tight_bits times the
    distance between the two centres.
    """
    if p.is_zero() or p.degree < 1:
        raise ValueError("find_roots needs degree >= 1")
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    if not is_squarefree(p):
        raise NotSquarefree(f"{p} has a repeated root")
    cap = precision_cap() if cap is None else cap
    if prec > cap:
        raise ValueError("precision start exceeds the cap")
    d = p.degree
    z = None
    while True:
        with mpmath.workprec(prec):
            if z is None:
                z = _initial_guesses(p)
            else:
                z = [mpmath.mpc(v) for v in z]
            z = _aberth(p, z, prec, maxiter=100 + 20 * d)
            bits = max(64, prec // 2)
            disks = tuple(_certify_disk(p, zc, bits) for zc in z)
        disjoint = _disjoint(disks)
        if disjoint and (prec * 2 > cap or _disjoint(disks, 1 << tight_bits)):
            return RootSet(p, disks, True, prec, bits)
        if prec * 2 > cap:
            raise PrecisionExhausted(f"roots not separated at {prec} bits (cap {cap})")
        prec *= 2


# -- measurements ------------------------------------------------------------

def separation(p: Poly, prec: int = DEFAULT_PRECISION, cap: int | None = None,
               roots: RootSet | None = None) -> tuple[Fraction, Fraction]:
    """Interval [lo, hi] containing the minimal distance between two roots."""
    rs = roots or find_roots(p, prec, cap)
    if len(rs) < 2:
        raise ValueError("separation needs degree >= 2")
    bounds = rs.pair_bounds.values()
    return min(b[0] for b in bounds), min(b[1] for b in bounds)


_IV = MPIntervalContext()
_IV.prec = 128


def _iv_of(q: Fraction):
    return _IV.mpf(q.numerator) / _IV.mpf(q.denominator)


def _iv_bounds(x) -> tuple[Fraction, Fraction]:
    lo, hi = x._mpi_
    return _mpf_to_fraction(lo), _mpf_to_fraction(hi)


def log_ratio_bounds(value_lo: Fraction, value_hi: Fraction, h: int) -> tuple[Fraction, Fraction]:
    """Enclosure of -ln(v)/ln(h) over v in [value_lo, value_hi]."""
    lnh = _IV.log(_IV.mpf(h))
    e_lo = _iv_bounds(-_IV.log(_iv_of(value_hi)) / lnh)[0]
    if value_lo > 0:
        e_hi = _iv_bounds(-_IV.log(_iv_of(value_lo)) / lnh)[1]
    else:
        e_hi = Fraction(10) ** 30
    return e_lo, e_hi


def e_value(p: Poly, prec: int = DEFAULT_PRECISION, cap: int | None = None,
            roots: RootSet | None = None, sep=None) -> tuple[Fraction, Fraction]:
    """Enclosure of e(P) defined by sep(P) = H(P)**-e(P)."""
    h = height(p)
    if h <= 1:
        raise HeightTooSmall("height must be at least 2")
    lo, hi = sep if sep is not None else separation(p, prec, cap, roots)
    return log_ratio_bounds(lo, hi, h)


def _product_bounds(rs: RootSet, subset) -> tuple[Fraction, Fraction]:
    lo, hi = Fraction(1), Fraction(1)
    pb = rs.pair_bounds
    for i, j in itertools.combinations(sorted(subset), 2):
        a, b = pb[i, j]
        lo *= a
        hi *= b
    return lo, hi


@dataclass(frozen=True)
class ClusterResult:
    lo: Fraction
    hi: Fraction
    indices: tuple
    exhaustive: bool


def cluster_product(p: Poly, k: int, prec: int = DEFAULT_PRECISION, cap: int | None = None,
                    roots: RootSet | None = None) -> ClusterResult:
    """Smallest product of pairwise distances over k of the roots.

    When every k-subset can be enumerated the returned interval encloses the
    true minimum; otherwise the subset is grown greedily from the closest
    pair and the interval covers that subset only.
    """
    rs = roots or find_roots(p, prec, cap)
    d = len(rs)
    if not 2 <= k <= d:
        raise ValueError("need 2 <= k <= deg p")
    if math.comb(d, k) <= EXHAUSTIVE_CLUSTER_LIMIT:
        best_lo = best_hi = None
        best_idx = None
        for sub in itertools.combinations(range(d), k):
            lo, hi = _product_bounds(rs, sub)
            if best_hi is None or hi < best_hi:
                best_hi, best_idx = hi, sub
            if best_lo is None or lo < best_lo:
                best_lo = lo
        return ClusterResult(best_lo, best_hi, best_idx, True)
    pb = rs.pair_bounds
    i, j = min(pb, key=lambda ij: pb[ij][1])
    chosen = [i, j]
    while len(chosen) < k:
        rest = [m for m in range(d) if m not in chosen]
        m = min(rest, key=lambda m: _product_bounds(rs, chosen + [m])[1])
        chosen.append(m)
    lo, hi = _product_bounds(rs, chosen)
    return ClusterResult(lo, hi, tuple(sorted(chosen)), False)


def disc_interval(rs: RootSet) -> tuple[Fraction, Fraction]:
    """Enclosure of lc**(2d-2) * prod |a_i - a_j|**2 from certified roots."""
    d = len(rs)
    lo, hi = _product_bounds(rs, range(d))
    scale = Fraction(rs.poly.lc) ** (2 * d - 2)
    return lo * lo * scale, hi * hi * scale


def disc_crosscheck(p: Poly, prec: int = DEFAULT_PRECISION, cap: int | None = None,
                    roots: RootSet | None = None) -> bool:
    if p.degree < 2:
        raise ValueError("disc_crosscheck needs degree >= 2")
    rs = roots or find_roots(p, prec, cap)
    exact = abs(discriminant(p))
    lo, hi = disc_interval(rs)
    return lo <= exact <= hi


def mahler_slack(d: int) -> float:
    """ln of the explicit constant in Mahler's lower bound for sep(P).

    sep(P) > sqrt(3) d**(-(d+2)/2) M(P)**-(d-1) with M(P) <= sqrt(d+1) H(P),
    so e(P) <= d - 1 + mahler_slack(d) / ln H(P).
    """
    return (d + 2) / 2 * math.log(d) - 0.5 * math.log(3) + (d - 1) / 2 * math.log(d + 1)


def mahler_sanity(p: Poly, prec: int = DEFAULT_PRECISION, cap: int | None = None,
                  roots: RootSet | None = None, e=None) -> bool:
    h = height(p)
    if h <= 1:
        raise HeightTooSmall("height must be at least 2")
    d = p.degree
    _, e_hi = e if e is not None else e_value(p, prec, cap, roots)
    return float(e_hi) <= (d - 1) + mahler_slack(d) / math.log(h) + 1e-12


@dataclass(frozen=True)
class ConjugatePair:
    D: int
    n: int
    re: Fraction
    im: Fraction
    beta_hat: float
    gamma_hat: float
    beta_taylor: float
    precision: int


def conjugate_pair_scaling(D: int, n: int, prec: int = DEFAULT_PRECISION,
                           cap: int | None = None) -> ConjugatePair:
    """Locate the root pair of r_{D,n} nearest x_n and rescale it.

    gamma_hat = Im * n**((2D-1)/2) and beta_hat = (Re - x_n) * n**D.
    ``beta_taylor`` is the exact second-order Taylor estimate
    -r'(x_n) / r''(x_n) on the same scale, for comparison with beta_hat.
    """
    from .families import gen_r, x_n_at

    if D < 4 or n < 2:
        raise ValueError("need D >= 4 and n >= 2")
    p = gen_r(D).instantiate(n)
    rs = find_roots(p, prec, cap)
    xn = x_n_at(n)
    order = sorted(range(len(rs)), key=lambda i: (rs.disks[i].re - xn) ** 2 + rs.disks[i].im ** 2)
    a, b = rs.disks[order[0]], rs.disks[order[1]]
    if not (a.is_real_separated() and b.is_real_separated()) or (a.im > 0) == (b.im > 0):
        raise NoComplexPairFound(f"two roots of r_{D},{n} nearest x_n are not a conjugate pair")
    up = a if a.im > 0 else b
    with mpmath.workprec(128):
        nn = mpmath.mpf(n)
        gamma = mpmath.mpf(up.im.numerator) / up.im.denominator * nn ** (mpmath.mpf(2 * D - 1) / 2)
        shift = up.re - xn
        beta = mpmath.mpf(shift.numerator) / shift.denominator * nn ** D
    d1 = p.derivative()
    taylor = -d1(xn) / d1.derivative()(xn) * n ** D
    return ConjugatePair(D, n, up.re, up.im, float(beta), float(gamma), float(taylor), rs.precision)
