"""Irreducibility certificates for integer polynomials.

No factorisation over Z is attempted.  A certificate combines

* the rational-root test, which either yields an exact linear factor or
  rules out factors of degree 1 and deg-1, and
* degree patterns of the factorisation modulo small good primes, found by
  distinct-degree factorisation.  A proper factor over Z must have a degree
  that is a subset sum of every pattern.

If no proper degree survives, the polynomial is irreducible.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import Poly, exact_quotient


class BadPrime(ValueError):
    pass


# -- rational roots ----------------------------------------------------------

def _divisors(m: int) -> list[int]:
    m = abs(m)
    small, large = [], []
    i = 1
    while i * i <= m:
        if m % i == 0:
            small.append(i)
            if i * i != m:
                large.append(m // i)
        i += 1
    return small + large[::-1]


def rational_root_test(p: Poly) -> list[Fraction]:
    """All rational roots of p, in increasing order."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    roots = set()
    coeffs = list(p.coeffs)
    if coeffs[0] == 0:
        roots.add(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    q = Poly(coeffs, p.var)
    if q.degree >= 1:
        for num in _divisors(q.coeffs[0]):
            for den in _divisors(q.lc):
                if gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if q(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


# -- arithmetic in GF(prime)[x], lists ascending ---------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, prime):
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], -1, prime)
    for k in range(len(a) - 1, df - 1, -1):
        c = a[k] * inv % prime
        if c:
            for j in range(df + 1):
                a[k - df + j] = (a[k - df + j] - c * f[j]) % prime
    return _trim(a[:df])


def _pmul(a, b, prime):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % prime
    return _trim(out)


def _pgcd(a, b, prime):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, prime)
    if a:
        inv = pow(a[-1], -1, prime)
        a = [c * inv % prime for c in a]
    return a


def _pdiv_exact(a, b, prime):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, prime)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % prime
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = (a[k + j] - c * b[j]) % prime
    return _trim(q)


def _ppowmod(base, e, f, prime):
    result = [1]
    base = _pmod(base, f, prime)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, prime), f, prime)
        base = _pmod(_pmul(base, base, prime), f, prime)
        e >>= 1
    return result


def _psub(a, b, prime):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % prime
                  for i in range(n)])


def degree_pattern_mod_p(p: Poly, prime: int) -> list[int]:
    """Sorted degrees of the irreducible factors of p modulo a good prime."""
    f = [c % prime for c in p.coeffs]
    if f[-1] == 0:
        raise BadPrime(f"{prime} divides the leading coefficient")
    f = _trim(f)
    df = [(k * c) % prime for k, c in enumerate(f)][1:]
    if len(_pgcd(f, df, prime)) > 1:
        raise BadPrime(f"p is not squarefree modulo {prime}")
    inv = pow(f[-1], -1, prime)
    f = [c * inv % prime for c in f]
    pattern = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _ppowmod(h, prime, f, prime)
        g = _pgcd(_psub(h, [0, 1], prime), f, prime)
        dg = len(g) - 1
        if dg > 0:
            pattern.extend([i] * (dg // i))
            f = _pdiv_exact(f, g, prime)
            h = _pmod(h, f, prime)
    if len(f) - 1 > 0:
        pattern.append(len(f) - 1)
    return sorted(pattern)


def _subset_sums(pattern):
    sums = {0}
    for k in pattern:
        sums |= {s + k for s in sums}
    return sums


def _primes():
    found = []
    c = 2
    while True:
        if all(c % q for q in found if q * q <= c):
            found.append(c)
            yield c
        c += 1


# -- certificates ------------------------------------------------------------

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"
INCONCLUSIVE = "Inconclusive"


@dataclass
class IrredCertificate:
    poly_hash: str
    degree: int
    rational_roots: list
    patterns: dict = field(default_factory=dict)
    feasible: list = field(default_factory=list)
    verdict: str = INCONCLUSIVE
    witness: Poly | None = None

    def to_json(self) -> dict:
        return {
            "poly_sha256": self.poly_hash,
            "degree": self.degree,
            "rational_roots": [str(r) for r in self.rational_roots],
            "primes": list(self.patterns),
            "patterns": {str(k): v for k, v in self.patterns.items()},
            "feasible_factor_degrees": self.feasible,
            "verdict": self.verdict,
            "witness": list(self.witness.coeffs) if self.witness is not None else None,
        }


def poly_hash(p: Poly) -> str:
    return hashlib.sha256(" ".join(map(str, p.coeffs)).encode()).hexdigest()


def certify_irreducible(p: Poly, prime_budget: int = 50) -> IrredCertificate:
    """Decide irreducibility over Q of a primitive integer polynomial, or give up.

    A Reducible verdict always carries an exact factor; an Irreducible
    verdict carries the primes and patterns that rule out every proper
    factor degree.
    """
    if p.is_zero() or p.degree < 2:
        raise ValueError("need degree >= 2")
    if p.content() != 1:
        raise ValueError("polynomial must be primitive")
    d = p.degree
    cert = IrredCertificate(poly_hash(p), d, rational_root_test(p))
    if cert.rational_roots:
        r = cert.rational_roots[0]
        factor = Poly([-r.numerator, r.denominator], p.var)
        exact_quotient(p, factor)  # raises unless the division is exact
        cert.verdict, cert.witness = REDUCIBLE, factor
        return cert

    feasible = set(range(1, d))
    feasible -= {1, d - 1}
    used = 0
    for prime in _primes():
        if not feasible or used >= prime_budget:
            break
        try:
            pattern = degree_pattern_mod_p(p, prime)
        except BadPrime:
            continue
        used += 1
        cert.patterns[prime] = pattern
        feasible &= _subset_sums(pattern)
        if prime > 10 ** 6:
            break
    cert.feasible = sorted(feasible)
    cert.verdict = IRREDUCIBLE if not feasible else INCONCLUSIVE
    return cert
