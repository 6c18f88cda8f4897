"""Parametric integer polynomial families with abnormally close roots.

Every generator returns a polynomial in ``x`` whose coefficients are
polynomials in the parameter ``n`` (see :mod:`seplab.algebra`); call
``.instantiate(n)`` to obtain a concrete integer polynomial.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import Poly, N, X

FAMILIES = ("p", "L", "P", "K", "q", "Q", "s", "r", "clusterP", "clusterQ")


class FamilyRangeError(ValueError):
    pass


@lru_cache(maxsize=None)
def fib(k: int) -> int:
    """Fibonacci numbers with F(-1) = 1, F(0) = 0, F(1) = 1."""
    if k < -1:
        raise ValueError("fib is only defined for k >= -1")
    if k == -1:
        return 1
    a, b = 1, 0  # F(-1), F(0)
    for _ in range(k):
        a, b = b, a + b
    return b


def _below(name, value, minimum, allow_small):
    if value >= minimum:
        return
    msg = f"{name}({value}) is below the range {minimum}+ where the separation bound applies"
    if not allow_small:
        raise FamilyRangeError(msg)
    warnings.warn(msg, stacklevel=3)


def _bi(*coeffs):
    return Poly(coeffs, "x")


def n_linear_denominator():
    """n^2 + 3n + 1."""
    return Poly([1, 3, 1], "n")


def x_n():
    """The rational point (n+2)/(n^2+3n+1) as a pair of n-polynomials."""
    return Poly([2, 1], "n"), n_linear_denominator()


def x_n_at(n: int) -> Fraction:
    return Fraction(n + 2, n * n + 3 * n + 1)


@lru_cache(maxsize=None)
def gen_p(d: int) -> Poly:
    """p_0 = -1, p_1 = (n+1)x - 1, p_d = (1+x) p_{d-1} + x^2 p_{d-2}."""
    if d < 0:
        raise FamilyRangeError("p is defined for d >= 0")
    if d == 0:
        return _bi(-1)
    if d == 1:
        return _bi(-1, N() + 1)
    return (1 + X()) * gen_p(d - 1) + X() ** 2 * gen_p(d - 2)


def gen_L() -> Poly:
    return _bi(Poly([-2, -1], "n"), n_linear_denominator())


def gen_K() -> Poly:
    return _bi(Poly([2, 1], "n"), -n_linear_denominator(), 1)


def gen_P(d: int) -> Poly:
    """L_n(x) * p_{d-1}(x); degree d."""
    if d < 1:
        raise FamilyRangeError("P needs d >= 1")
    if d < 4:
        warnings.warn(f"P({d}) is below d >= 4", stacklevel=2)
    return gen_L() * gen_p(d - 1)


@lru_cache(maxsize=None)
def gen_q(d: int) -> Poly:
    """q_0 = 1, q_2 = x^2 - (n+1)x + 1, q_d = (2x^2+x+1) q_{d-2} - x^4 q_{d-4}."""
    if d < 0 or d % 2:
        raise FamilyRangeError("q is defined for even d >= 0")
    if d == 0:
        return _bi(1)
    if d == 2:
        return _bi(1, -(N() + 1), 1)
    return _bi(1, 1, 2) * gen_q(d - 2) - X() ** 4 * gen_q(d - 4)


def gen_Q(d: int, allow_small: bool = False) -> Poly:
    """Monic degree-d polynomial with two close roots near the small root of K_n.

    Even d: K_n q_{d-2}; odd d: x K_n q_{d-3}.
    """
    if d % 2 == 0:
        _below("Q", d, 6, allow_small)
        if d < 2:
            raise FamilyRangeError("Q needs d >= 2")
        return gen_K() * gen_q(d - 2)
    _below("Q", d, 7, allow_small)
    if d < 3:
        raise FamilyRangeError("odd Q needs d >= 3")
    return X() * gen_K() * gen_q(d - 3)


@lru_cache(maxsize=None)
def gen_s(d: int) -> Poly:
    """(-1)^(d-1) (F_{d-1} p_d - F_d x p_{d-1}); monic of degree d."""
    if d < 2:
        raise FamilyRangeError("s is defined for d >= 2")
    sign = -1 if d % 2 == 0 else 1
    return sign * (fib(d - 1) * gen_p(d) - fib(d) * X() * gen_p(d - 1))


@lru_cache(maxsize=None)
def gen_r(D: int) -> Poly:
    """Monic irreducible-for-large-n family of final degree D >= 4."""
    if D < 4:
        raise FamilyRangeError("r is defined for D >= 4")
    d = D // 2
    s = gen_s(d)
    if D % 2:
        return X() * s * s + fib(d) ** 2 * gen_p(d) ** 2
    return s * s + fib(d - 1) ** 2 * X() * gen_p(d - 1) ** 2


def gen_cluster_P(delta: int, h: int, pad: int = 0) -> Poly:
    """P_delta * p_delta * ... * p_{delta+h}, optionally times x**pad."""
    if delta < 2 or h < 0 or pad < 0:
        raise FamilyRangeError("cluster P needs delta >= 2, h >= 0, pad >= 0")
    out = gen_L() * gen_p(delta - 1)
    for j in range(h + 1):
        out = out * gen_p(delta + j)
    return out.shift(pad)


def gen_cluster_Q(delta: int, h: int, pad: int = 0) -> Poly:
    """Q_delta * q_delta * q_{delta+2} * ... * q_{delta+2h}, optionally times x**pad."""
    if delta < 6 or delta % 2 or h < 0 or pad < 0:
        raise FamilyRangeError("cluster Q needs even delta >= 6, h >= 0, pad >= 0")
    out = gen_K() * gen_q(delta - 2)
    for j in range(h + 1):
        out = out * gen_q(delta + 2 * j)
    return out.shift(pad)


@dataclass(frozen=True)
class ClusterShape:
    """Predicted shape of a cluster construction as n grows.

    ``members`` are the indices m of the factors contributing a root within
    roughly n**-(2m+1) of the anchor root; the anchor itself is implicit.
    """

    monic: bool
    delta: int
    h: int
    pad: int
    degree: int
    k: int
    height_exponent: int
    members: tuple

    @property
    def distance_exponent(self) -> int:
        # anchor-to-member distances, then member pairs governed by the smaller index
        ms = sorted(self.members)
        total = sum(2 * m + 1 for m in ms)
        for i in range(len(ms)):
            total += (2 * ms[i] + 1) * (len(ms) - 1 - i)
        return total

    @property
    def predicted_exponent(self) -> Fraction:
        return Fraction(self.distance_exponent, self.height_exponent)

    @property
    def target(self) -> Fraction:
        return Fraction(self.k, self.k + 1) * self.degree

    @property
    def c(self) -> Fraction:
        """Constant c with predicted exponent = k/(k+1) * degree - c."""
        return self.target - self.predicted_exponent


def cluster_shape(delta: int, h: int, monic: bool = False, pad: int = 0) -> ClusterShape:
    if monic:
        members = (delta - 2,) + tuple(delta + 2 * j for j in range(h + 1))
        degree = (h + 2) * delta + h * (h + 1) + pad
    else:
        members = (delta - 1,) + tuple(delta + j for j in range(h + 1))
        degree = (h + 2) * delta + h * (h + 1) // 2 + pad
    return ClusterShape(monic, delta, h, pad, degree, h + 3, h + 4, members)


def build(family: str, d: int | None = None, *, h: int = 0, pad: int = 0,
          allow_small: bool = False) -> Poly:
    """Look up a family generator by its tag."""
    if family == "L":
        return gen_L()
    if family == "K":
        return gen_K()
    if d is None:
        raise FamilyRangeError(f"family {family} needs a degree parameter")
    if family == "p":
        return gen_p(d)
    if family == "P":
        return gen_P(d)
    if family == "q":
        return gen_q(d)
    if family == "Q":
        return gen_Q(d, allow_small=allow_small)
    if family == "s":
        return gen_s(d)
    if family == "r":
        return gen_r(d)
    if family == "clusterP":
        return gen_cluster_P(d, h, pad)
    if family == "clusterQ":
        return gen_cluster_Q(d, h, pad)
    raise FamilyRangeError(f"unknown family {family!r}")
