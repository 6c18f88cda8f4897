"""Exact checks of the closed-form identities satisfied by the families.

Each ``verify_*`` function returns an :class:`IdentityReport`; a failing
identity is a report with ``passed=False`` and a witness (the nonzero
residual), never an exception.  Generators can be swapped via keyword
arguments so that deliberately broken families can be fed in as negative
controls.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, RatFunc, discriminant_in_n, collect_in_n, series_inverse_n
from .families import fib, gen_p, gen_q, gen_s, gen_r, gen_K, n_linear_denominator

Y_EXPANSION = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-4), Fraction(8))
YN_CONSTANT = 64


@dataclass
class IdentityReport:
    identity: str
    checked: str
    passed: bool
    witness: str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"identity": self.identity, "checked": self.checked, "passed": self.passed,
                "witness": self.witness, "details": self.details}


def _xn_ratfunc():
    return RatFunc(Poly([2, 1], "n"), n_linear_denominator())


def verify_eq2(d_max: int, p=gen_p) -> IdentityReport:
    """p_d(x_n) == (-1)^(d-1) / (n^2+3n+1)^d over Q(n) for d = 0..d_max."""
    xn = _xn_ratfunc()
    den = n_linear_denominator()
    for d in range(d_max + 1):
        value = p(d)(xn)
        target = RatFunc(-1 if d % 2 == 0 else 1, den ** d)
        if value != target:
            return IdentityReport("eq2", f"d=0..{d_max}", False,
                                  f"d={d}: residual {value - target!r}")
    return IdentityReport("eq2", f"d=0..{d_max}", True)


def verify_q_congruence(d_max: int, q=gen_q) -> IdentityReport:
    """K_n divides q_d - q_{d-2} q_2 and q_d - q_2^(d/2) for even d <= d_max."""
    K = gen_K()
    q2 = q(2)
    quotients = {}
    for d in range(2, d_max + 1, 2):
        quo, rem = divmod(q(d) - q(d - 2) * q2, K)
        if rem:
            return IdentityReport("qcong", f"even d=2..{d_max}", False,
                                  f"d={d}: q_d - q_(d-2) q_2 mod K = {rem}")
        quotients[d] = str(quo)
        _, rem = divmod(q(d) - q2 ** (d // 2), K)
        if rem:
            return IdentityReport("qcong", f"even d=2..{d_max}", False,
                                  f"d={d}: q_d - q_2^(d/2) mod K = {rem}")
    return IdentityReport("qcong", f"even d=2..{d_max}", True,
                          details={"quotient_d4": quotients.get(4)})


def verify_leading_coeffs(d_max: int, p=gen_p, s=gen_s, r=gen_r) -> IdentityReport:
    """Leading x-coefficients: F_d n + F_{d-2} for p, 1 for s and r, plus the Fibonacci identity."""
    checked = f"d=1..{d_max}"
    for d in range(1, d_max + 1):
        expect = Poly([fib(d - 2), fib(d)], "n")
        got = p(d).lc
        if got != expect:
            return IdentityReport("leading", checked, False, f"p_{d}: lc {got}, expected {expect}")
    for d in range(2, d_max + 1):
        sign = -1 if d % 2 == 0 else 1
        fid = sign * (fib(d - 1) * fib(d - 2) - fib(d) * fib(d - 3))
        if fid != 1:
            return IdentityReport("leading", checked, False, f"Fibonacci identity at d={d}: {fid}")
        sd = s(d)
        if sd.degree != d or sd.lc != 1:
            return IdentityReport("leading", checked, False, f"s_{d}: lc {sd.lc}")
    for D in range(4, d_max + 1):
        rd = r(D)
        if rd.degree != D or rd.lc != 1:
            return IdentityReport("leading", checked, False, f"r_{D}: lc {rd.lc}")
    return IdentityReport("leading", checked, True)


def _p_low(d):
    n = Poly.gen("n")
    return (-1, n - d + 2, (d - 1) * n - Fraction((d - 1) * (d - 2), 2))


def _q_low(d):
    n = Poly.gen("n")
    return (1, -n + Fraction(d, 2) - 2, (1 - Fraction(d, 2)) * n + Fraction(d * d - 2 * d + 8, 8))


def verify_low_order(d_max: int, p=gen_p, q=gen_q) -> IdentityReport:
    """Coefficients of 1, x, x^2 in p_d (d >= 1) and q_d (even d >= 2)."""
    checked = f"d=1..{d_max}"
    for d in range(1, d_max + 1):
        got = [p(d).coeff(k) for k in range(3)]
        for k, (g, e) in enumerate(zip(got, _p_low(d))):
            if g != e:
                return IdentityReport("loworder", checked, False, f"p_{d}, x^{k}: {g} != {e}")
    for d in range(2, d_max + 1, 2):
        got = [q(d).coeff(k) for k in range(3)]
        for k, (g, e) in enumerate(zip(got, _q_low(d))):
            if g != e:
                return IdentityReport("loworder", checked, False, f"q_{d}, x^{k}: {g} != {e}")
    return IdentityReport("loworder", checked, True)


def verify_r_structure(D_max: int, r=gen_r) -> IdentityReport:
    """r_D(0) = F_k^2 and disc_n(r_D) = -4 F_k^4 x^(2D-1) with k = floor((D-1)/2)."""
    checked = f"D=4..{D_max}"
    x = Poly.gen("x")
    for D in range(4, D_max + 1):
        k = (D - 1) // 2
        rd = r(D)
        c0 = rd.coeff(0)
        if c0 != fib(k) ** 2:
            return IdentityReport("rstruct", checked, False, f"r_{D}(0) = {c0}, expected {fib(k) ** 2}")
        parts = collect_in_n(rd)
        if len(parts) != 3:
            return IdentityReport("rstruct", checked, False,
                                  f"r_{D} has degree {len(parts) - 1} in n, expected 2")
        disc = discriminant_in_n(rd)
        expect = -4 * fib(k) ** 4 * x ** (2 * D - 1)
        if disc != expect:
            return IdentityReport("rstruct", checked, False,
                                  f"D={D}: B^2-4AC - expected = {disc - expect}")
    return IdentityReport("rstruct", checked, True)


def verify_r_at_xn(D_max: int, r=gen_r) -> IdentityReport:
    """r_D(x_n) = F_k^2 / n^(2D-3) + O(n^-(2D-2)): lower terms vanish, leading coefficient exact."""
    checked = f"D=4..{D_max}"
    xn = _xn_ratfunc()
    for D in range(4, D_max + 1):
        k = (D - 1) // 2
        series = series_inverse_n(r(D)(xn), 2 * D - 3)
        lower = [series.constant] + list(series.coeffs[:-1])
        if any(lower) or series.coeffs[-1] != fib(k) ** 2:
            return IdentityReport("rvalue", checked, False,
                                  f"D={D}: expansion {[str(c) for c in series.coeffs]}")
    return IdentityReport("rvalue", checked, True)


def verify_xn_expansion(K: int) -> IdentityReport:
    """Coefficient of 1/n^k in x_n equals -(-1)^k F_{2k-3}."""
    series = series_inverse_n(_xn_ratfunc(), K)
    if series.constant:
        return IdentityReport("xn", f"k=1..{K}", False, f"constant term {series.constant}")
    for k, c in enumerate(series.coeffs, start=1):
        expect = -(-1) ** k * fib(2 * k - 3)
        if c != expect:
            return IdentityReport("xn", f"k=1..{K}", False, f"k={k}: {c} != {expect}")
    return IdentityReport("xn", f"k=1..{K}", True, details={"coeffs": [int(c) for c in series.coeffs]})


def verify_yn_expansion(n_grid=(10, 100, 1000, 10000), terms: int = 5,
                        constant: int = YN_CONSTANT) -> IdentityReport:
    """|y_n - truncated expansion| <= constant / n^6 on a grid of n.

    y_n is the root of K_n near 1/n, taken from a certified root disk at
    256 bits; the disk radius is added to the residual.
    """
    from .roots import find_roots

    checked = f"n in {list(n_grid)}"
    coeffs = Y_EXPANSION[:terms]
    fitted = {}
    for n in n_grid:
        if n < 2:
            raise ValueError("n must be >= 2")
        rs = find_roots(gen_K().instantiate(n), 256)
        disk = min(rs.disks, key=lambda dk: abs(dk.re - Fraction(1, n)))
        approx = sum(c / Fraction(n) ** (k + 1) for k, c in enumerate(coeffs))
        resid = abs(disk.re - approx) + abs(disk.im) + disk.radius
        fitted[n] = float(resid * n ** 6)
        if resid * n ** 6 > constant:
            return IdentityReport("yn", checked, False,
                                  f"n={n}: residual * n^6 = {float(resid * n ** 6):.6g} > {constant}",
                                  {"constant": constant, "fitted": fitted})
    return IdentityReport("yn", checked, True, details={"constant": constant, "fitted": fitted})


SUITES = ("eq2", "qcong", "leading", "loworder", "rstruct", "rvalue", "xn", "yn")


def run_suite(name: str, d_max: int = 12, D_max: int = 25, families: dict | None = None):
    """Run one named check (or ``all``) and return the list of reports."""
    fam = families or {}
    p, q, s, r = (fam.get(k) for k in ("p", "q", "s", "r"))
    p, q, s, r = p or gen_p, q or gen_q, s or gen_s, r or gen_r
    q_max = d_max - d_max % 2
    table = {
        "eq2": lambda: verify_eq2(d_max, p=p),
        "qcong": lambda: verify_q_congruence(max(q_max, 4), q=q),
        "leading": lambda: verify_leading_coeffs(d_max, p=p, s=s, r=r),
        "loworder": lambda: verify_low_order(max(d_max, 2), p=p, q=q),
        "rstruct": lambda: verify_r_structure(D_max, r=r),
        "rvalue": lambda: verify_r_at_xn(D_max, r=r),
        "xn": lambda: verify_xn_expansion(d_max),
        "yn": lambda: verify_yn_expansion(),
    }
    if name == "all":
        return [table[k]() for k in SUITES]
    if name not in table:
        raise ValueError(f"unknown suite {name!r}")
    return [table[name]()]


def mutated_p(d: int) -> Poly:
    """The p recursion with x^2 replaced by x^3; a negative control that must fail eq2."""
    x = Poly.gen("x")
    if d < 2:
        return gen_p(d)
    return (1 + x) * mutated_p(d - 1) + x ** 3 * mutated_p(d - 2)


def z_point(d: int, n: int) -> Fraction:
    """x_n + (-1)^d / (n (n^2+3n+1)^d), the far end of the bracket around the root near x_n."""
    N = n * n + 3 * n + 1
    return Fraction(n + 2, N) + Fraction((-1) ** d, n * N ** d)


@dataclass
class Bracket:
    d: int
    n: int
    sign_at_xn: int
    sign_at_z: int

    @property
    def brackets_root(self) -> bool:
        return self.sign_at_xn * self.sign_at_z < 0


def bracket_check(d: int, n: int, p=gen_p) -> Bracket:
    """Signs of p_{d,n} at x_n and z_{d,n}, by exact rational evaluation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    poly = p(d).instantiate(n)
    xn = Fraction(n + 2, n * n + 3 * n + 1)

    def sign(v):
        return (v > 0) - (v < 0)
    return Bracket(d, n, sign(poly(xn)), sign(poly(z_point(d, n))))
