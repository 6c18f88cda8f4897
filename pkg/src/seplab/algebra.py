"""Exact polynomial arithmetic over the integers and over Z[n].

A polynomial is a :class:`Poly` holding an ascending tuple of coefficients
and the name of its variable.  Coefficients are Python ints, Fractions, or
other ``Poly`` objects in an *inner* variable, so ``Poly`` over ``Poly`` in
``n`` is a polynomial in ``x`` with coefficients in Z[n].  Variable nesting
order is fixed: ``x`` is always outside ``n``.

The zero polynomial has an empty coefficient tuple; asking for its degree
raises ``ValueError``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

# higher rank = outer variable
_RANK = {"n": 0, "t": 0, "x": 1}


def _rank(var):
    return _RANK.get(var, 0)


def _is_zero(c):
    return not c


class Poly:
    """Immutable dense univariate polynomial, coefficients in ascending order."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, k, c=1, var="x"):
        return cls([0] * k + [c], var)

    @classmethod
    def gen(cls, var="x"):
        return cls([0, 1], var)

    # -- structure -------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # -- coercion --------------------------------------------------------

    def _as_poly(self, other):
        """Return ``other`` as a Poly in self.var, or None if it is not one we own."""
        if isinstance(other, Poly):
            if other.var == self.var:
                return other
            if _rank(other.var) < _rank(self.var):
                return Poly([other], self.var)
            return None
        if isinstance(other, (int, Fraction)):
            return Poly([other], self.var)
        return None

    # -- ring operations -------------------------------------------------

    def _outer(self, other):
        # same-type operands never reach the reflected method, so hand off explicitly
        return isinstance(other, Poly) and _rank(other.var) > _rank(self.var)

    def __add__(self, other):
        b = self._as_poly(other)
        if b is None:
            return other.__radd__(self) if self._outer(other) else NotImplemented
        a, b = self.coeffs, b.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        b = self._as_poly(other)
        if b is None:
            return other.__rsub__(self) if self._outer(other) else NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._as_poly(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._as_poly(other)
        if b is None:
            return other.__rmul__(self) if self._outer(other) else NotImplemented
        a, b = self.coeffs, b.coeffs
        if not a or not b:
            return Poly((), self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if _is_zero(ai):
                continue
            for j, bj in enumerate(b):
                if _is_zero(bj):
                    continue
                out[i + j] = out[i + j] + ai * bj
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = Poly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        b = self._as_poly(other)
        if b is None:
            if isinstance(other, Poly):
                return other == self
            return NotImplemented
        return (self - b).is_zero()

    __hash__ = None

    def __call__(self, v):
        """Evaluate by Horner's rule; ``v`` may be any ring element."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self):
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def shift(self, k):
        """Multiply by var**k."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs), self.var)

    def truncate(self, k):
        return Poly(self.coeffs[:k], self.var)

    def map_coeffs(self, f):
        return Poly([f(c) for c in self.coeffs], self.var)

    def instantiate(self, n):
        """Substitute an integer for every inner-variable coefficient."""
        return self.map_coeffs(lambda c: c(n) if isinstance(c, Poly) else c)

    def divmod_monic(self, b):
        """Division by a divisor whose leading coefficient equals 1.

        Works over any coefficient ring since no coefficient division is
        needed.  Returns ``(q, r)`` with ``self == b*q + r``.
        """
        b = self._as_poly(b)
        if b is None or b.is_zero():
            raise ValueError("divisor must be a nonzero polynomial in the same variable")
        if b.lc != 1:
            raise ValueError("divisor must be monic (pseudo-division is not supported)")
        r = list(self.coeffs)
        db = b.degree
        if len(r) - 1 < db:
            return Poly((), self.var), self
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if _is_zero(c):
                continue
            q[k] = c
            for j, bj in enumerate(b.coeffs):
                if not _is_zero(bj):
                    r[k + j] = r[k + j] - c * bj
        return Poly(q, self.var), Poly(r[:db], self.var)

    def __divmod__(self, b):
        return self.divmod_monic(b)

    # -- integer-polynomial helpers -------------------------------------

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, int(c))
        return g

    def primitive(self):
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return Poly([c // g for c in self.coeffs], self.var)

    # -- printing --------------------------------------------------------

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, {self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = f"({c})" if isinstance(c, Poly) and sum(1 for a in c if a) > 1 else str(c)
            if not mono:
                terms.append(cs)
            elif cs == "1":
                terms.append(mono)
            elif cs == "-1":
                terms.append("-" + mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def X():
    return Poly.gen("x")


def N():
    return Poly.gen("n")


def npoly_str(c):
    """Canonical text for an n-coefficient: ``"c0 + c1*n + c2*n^2"`` with zero terms dropped."""
    if not isinstance(c, Poly):
        return str(c)
    if c.is_zero():
        return "0"
    parts = []
    for k, a in enumerate(c.coeffs):
        if a == 0:
            continue
        parts.append(str(a) if k == 0 else (f"{a}*n" if k == 1 else f"{a}*n^{k}"))
    return " + ".join(parts)


def height(p):
    """Naive height: the largest absolute coefficient."""
    if p.is_zero():
        raise ValueError("height of the zero polynomial is undefined")
    return max(abs(c) for c in p.coeffs)


def eval_rational(p, v):
    """Exact value of an integer polynomial at a rational point."""
    return p(Fraction(v))


# -- gcd / exact division over Q -----------------------------------------

def _to_fraction_poly(p):
    return p.map_coeffs(Fraction)


def _divmod_field(a, b):
    r = list(map(Fraction, a.coeffs))
    bc = list(map(Fraction, b.coeffs))
    db = len(bc) - 1
    inv = 1 / bc[-1]
    if len(r) - 1 < db:
        return Poly((), a.var), Poly(r, a.var)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv
        q[k] = c
        if c:
            for j, bj in enumerate(bc):
                r[k + j] -= c * bj
    return Poly(q, a.var), Poly(r[:db], a.var)


def _clear_to_primitive(p):
    den = 1
    for c in p.coeffs:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    return Poly([int(Fraction(c) * den) for c in p.coeffs], p.var).primitive()


def poly_gcd(a, b):
    """Primitive gcd of two integer polynomials (positive leading coefficient)."""
    if a.is_zero():
        return b.primitive() if not b.is_zero() else b
    if b.is_zero():
        return a.primitive()
    a, b = _to_fraction_poly(a), _to_fraction_poly(b)
    while not b.is_zero():
        a, b = b, _divmod_field(a, b)[1]
    g = _clear_to_primitive(a)
    return g


def exact_quotient(a, b):
    """a / b over Z[var]; raises ValueError if b does not divide a with integral quotient."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q, r = _divmod_field(a, b)
    if not r.is_zero() or any(Fraction(c).denominator != 1 for c in q.coeffs):
        raise ValueError("division is not exact over the integers")
    return Poly([int(c) for c in q.coeffs], a.var)


def is_squarefree(p):
    if p.is_zero():
        return False
    if p.degree == 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


# -- resultants ----------------------------------------------------------

def bareiss_det(m):
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(row) for row in m]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, size):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[-1][-1]


def sylvester_matrix(f, g):
    m, n = f.degree, g.degree
    size = m + n
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def resultant(f, g):
    """Res(f, g) = lc(f)**deg(g) * prod g(a) over the roots a of f.

    This is the determinant of the Sylvester matrix with the rows of ``f``
    placed first.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial is undefined")
    if f.degree == 0 and g.degree == 0:
        return 1
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(p):
    d = p.degree
    if d < 2:
        raise ValueError("discriminant needs degree >= 2")
    r = resultant(p, p.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, p.lc)
    assert rem == 0
    return q


def collect_in_n(p):
    """Rewrite a polynomial in x over Z[n] as a list [C0(x), C1(x), ...] of powers of n."""
    top = 0
    for c in p.coeffs:
        if isinstance(c, Poly) and not c.is_zero():
            top = max(top, c.degree)
    out = []
    for k in range(top + 1):
        out.append(Poly([c.coeff(k) if isinstance(c, Poly) else (c if k == 0 else 0)
                         for c in p.coeffs], p.var))
    return out


def discriminant_in_n(p):
    """B**2 - 4*A*C for p = A(x) n^2 + B(x) n + C(x); requires degree exactly 2 in n."""
    parts = collect_in_n(p)
    if len(parts) != 3:
        raise ValueError(f"degree in n is {len(parts) - 1}, expected 2")
    c, b, a = parts
    return b * b - 4 * a * c


# -- rational functions in n ---------------------------------------------

class RatFunc:
    """Reduced quotient of two polynomials in n."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, Poly) else Poly([num], "n")
        den = den if isinstance(den, Poly) else Poly([den], "n")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Poly((), "n"), Poly([1], "n")
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = exact_quotient(num, g), exact_quotient(den, g)
            c = gcd(num.content(), den.content())
            if den.lc < 0:
                c = -c
            num = Poly([k // c for k in num.coeffs], "n")
            den = Poly([k // c for k in den.coeffs], "n")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Poly)):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, k):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __bool__(self):
        return not self.num.is_zero()

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"


@dataclass(frozen=True)
class InvSeries:
    """Truncated expansion ``constant + sum coeffs[k-1] / n**k`` for k = 1..order."""

    constant: Fraction
    coeffs: tuple

    @property
    def order(self):
        return len(self.coeffs)


def series_inverse_n(f, order):
    """Expand a rational function of n in powers of 1/n up to 1/n**order."""
    num, den = f.num, f.den
    if num.is_zero():
        return InvSeries(Fraction(0), tuple(Fraction(0) for _ in range(order)))
    a, b = num.degree, den.degree
    if a > b:
        raise ValueError("expansion has positive powers of n")
    # with t = 1/n: f = t**(b-a) * rev(num)(t) / rev(den)(t)
    rn = [Fraction(c) for c in reversed(num.coeffs)]
    rd = [Fraction(c) for c in reversed(den.coeffs)]
    total = order + 1
    quo = []
    work = rn + [Fraction(0)] * total
    for k in range(total):
        c = work[k] / rd[0] if k < len(work) else Fraction(0)
        quo.append(c)
        if c:
            for j in range(1, len(rd)):
                if k + j < len(work):
                    work[k + j] -= c * rd[j]
    shift = b - a
    series = [Fraction(0)] * shift + quo
    series = series[:total]
    return InvSeries(series[0], tuple(series[1:total]))
