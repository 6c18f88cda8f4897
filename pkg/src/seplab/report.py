"""(d, n) sweeps, cluster reports and their CSV / JSON rendering."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, localcontext, ROUND_HALF_EVEN
from fractions import Fraction

from .algebra import height
from .families import gen_P, gen_Q, gen_r, gen_cluster_P, gen_cluster_Q, cluster_shape, FamilyRangeError
from .roots import (DEFAULT_PRECISION, RootError, find_roots, separation, e_value,
                    cluster_product, log_ratio_bounds, precision_cap)

CSV_HEADER = ["family", "d", "n", "degree", "height", "sep_lo", "sep_hi", "e_lo", "e_hi",
              "target", "bound_satisfied", "precision_bits"]
SWEEP_FAMILIES = ("P", "Q", "r")


def fmt_real(q: Fraction) -> str:
    """17 significant digits, scientific notation."""
    if q == 0:
        return "0.0000000000000000e+00"
    with localcontext() as ctx:
        ctx.prec = 17
        ctx.rounding = ROUND_HALF_EVEN
        v = Decimal(q.numerator) / Decimal(q.denominator)
    mant, exp = f"{v:.16e}".split("e")
    # printf style exponent: sign and at least two digits
    return f"{mant}e{int(exp):+03d}"


def hex_dyadic(q: Fraction) -> str:
    """Exact hexadecimal floating-point text for a dyadic rational (float.fromhex syntax)."""
    den = q.denominator
    if den & (den - 1):
        raise ValueError("not a dyadic rational")
    if q == 0:
        return "0x0p+0"
    sign = "-" if q < 0 else ""
    m = abs(q.numerator)
    e = -(den.bit_length() - 1)
    nbits = m.bit_length() - 1
    frac = m - (1 << nbits)
    pad = (-nbits) % 4
    digits = (nbits + pad) // 4
    body = format(frac << pad, "x").rjust(digits, "0").rstrip("0") if digits else ""
    exp = e + nbits
    return f"{sign}0x1{'.' + body if body else ''}p{exp:+d}"


def family_target(family: str, d: int) -> Fraction:
    if family == "P":
        return Fraction(2 * d - 1, 3)
    if family == "Q":
        return Fraction(2 * d - 3, 3) if d % 2 == 0 else Fraction(2 * d - 5, 3)
    if family == "r":
        return Fraction(2 * d - 1, 4)
    raise FamilyRangeError(f"no sweep target for family {family!r}")


def family_poly(family: str, d: int, n: int):
    if family == "P":
        return gen_P(d).instantiate(n)
    if family == "Q":
        return gen_Q(d).instantiate(n)
    if family == "r":
        return gen_r(d).instantiate(n)
    raise FamilyRangeError(f"family {family!r} cannot be swept")


def bound_satisfied(family: str, d: int, n: int, sep_hi: Fraction) -> bool:
    """Compare the certified upper end of sep against the family's closed-form bound."""
    if family == "P":
        return sep_hi <= Fraction(1, n * (n * n + 3 * n + 1) ** (d - 1))
    if family == "Q":
        e = 2 * d - 3 if d % 2 == 0 else 2 * d - 5
        return sep_hi <= Fraction(2, n ** e)
    if family == "r":
        # conjugate pair at distance about 2 n^-(d - 1/2); allow a factor 2
        return sep_hi * sep_hi <= Fraction(16, n ** (2 * d - 1))
    raise FamilyRangeError(family)


@dataclass
class ReportRow:
    family: str
    d: int
    n: int
    degree: int
    height: int
    sep_lo: Fraction | None
    sep_hi: Fraction | None
    e_lo: Fraction | None
    e_hi: Fraction | None
    target: Fraction
    bound_satisfied: bool | None
    precision_bits: int | None
    error: str | None = None

    def csv_fields(self) -> list[str]:
        def r(v):
            return "" if v is None else fmt_real(v)
        flag = f"error:{self.error}" if self.error else str(self.bound_satisfied).lower()
        return [self.family, str(self.d), str(self.n), str(self.degree), str(self.height),
                r(self.sep_lo), r(self.sep_hi), r(self.e_lo), r(self.e_hi), fmt_real(self.target),
                flag, "" if self.precision_bits is None else str(self.precision_bits)]

    def to_json(self) -> dict:
        def h(v):
            return None if v is None else hex_dyadic(v)
        return {"family": self.family, "d": self.d, "n": self.n, "degree": self.degree,
                "height": str(self.height), "sep_lo": h(self.sep_lo), "sep_hi": h(self.sep_hi),
                "e_lo": h(self.e_lo), "e_hi": h(self.e_hi),
                "target": f"{self.target.numerator}/{self.target.denominator}",
                "bound_satisfied": self.bound_satisfied, "precision_bits": self.precision_bits,
                "error": self.error}


def measure(family: str, d: int, n: int, prec: int = DEFAULT_PRECISION,
            cap: int | None = None) -> ReportRow:
    p = family_poly(family, d, n)
    target = family_target(family, d)
    row = ReportRow(family, d, n, p.degree, height(p), None, None, None, None, target, None, None)
    try:
        rs = find_roots(p, prec, cap)
        sep = separation(p, roots=rs)
        row.sep_lo, row.sep_hi = sep
        row.e_lo, row.e_hi = e_value(p, sep=sep)
        row.bound_satisfied = bound_satisfied(family, d, n, sep[1])
        row.precision_bits = rs.precision
    except RootError as exc:
        row.error = type(exc).__name__
    return row


def parse_grid(text: str) -> list[int]:
    """``"10,100,1000"`` or geometric ``"start:factor:count"``."""
    text = text.strip()
    if not text:
        raise ValueError("empty n grid")
    if ":" in text:
        start, factor, count = (int(t) for t in text.split(":"))
        if count < 1:
            raise ValueError("empty n grid")
        return [start * factor ** i for i in range(count)]
    return [int(t) for t in text.split(",") if t.strip()]


@dataclass
class SweepConfig:
    family: str
    degrees: list
    n_grid: list
    prec: int = DEFAULT_PRECISION
    cap: int = field(default_factory=precision_cap)
    output: str | None = None
    format: str = "csv"
    workers: int = 1

    def validate(self):
        if self.family not in SWEEP_FAMILIES:
            raise ValueError(f"family must be one of {SWEEP_FAMILIES}")
        if not self.degrees or not self.n_grid:
            raise ValueError("degree list and n grid must be non-empty")
        if self.prec > self.cap:
            raise ValueError("precision start exceeds cap")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        for d in self.degrees:
            family_poly(self.family, d, 2)  # parameter range check
        return self


def _measure_args(args):
    return measure(*args)


def run_sweep(cfg: SweepConfig) -> list[ReportRow]:
    cfg.validate()
    jobs = [(cfg.family, d, n, cfg.prec, cfg.cap) for d in cfg.degrees for n in cfg.n_grid]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            return list(pool.map(_measure_args, jobs))
    return [_measure_args(j) for j in jobs]


def render_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.csv_fields())
    return buf.getvalue()


def render_json(rows) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2) + "\n"


# -- clusters ------------------------------------------------------------------

@dataclass
class ClusterReport:
    delta: int
    h: int
    n: int
    k: int
    monic: bool
    pad: int
    degree: int
    height: int
    product_lo: Fraction
    product_hi: Fraction
    exponent_lo: Fraction
    exponent_hi: Fraction
    c: Fraction
    target: Fraction
    predicted_exponent: Fraction
    exhaustive: bool
    precision_bits: int

    def to_json(self) -> dict:
        return {
            "delta": self.delta, "h": self.h, "n": self.n, "k": self.k, "monic": self.monic,
            "pad": self.pad, "degree": self.degree, "height": str(self.height),
            "product_lo": hex_dyadic(self.product_lo), "product_hi": hex_dyadic(self.product_hi),
            "exponent_lo": fmt_real(self.exponent_lo), "exponent_hi": fmt_real(self.exponent_hi),
            "exponent_lo_hex": hex_dyadic(self.exponent_lo),
            "exponent_hi_hex": hex_dyadic(self.exponent_hi),
            "c": f"{self.c.numerator}/{self.c.denominator}",
            "target": f"{self.target.numerator}/{self.target.denominator}",
            "predicted_exponent": f"{self.predicted_exponent.numerator}/{self.predicted_exponent.denominator}",
            "exhaustive": self.exhaustive, "precision_bits": self.precision_bits,
        }


def cluster_report(delta: int, h: int, n: int, k: int | None = None, monic: bool = False,
                   pad: int = 0, prec: int = DEFAULT_PRECISION, cap: int | None = None) -> ClusterReport:
    """Measure the exponent log_H(1/product) of the tightest k-root cluster.

    The reported ``c`` comes from the construction: anchor-to-member and
    member-to-member distances scale like fixed powers of 1/n and the height
    like n^(h+4), which fixes the limiting exponent.  ``target`` is
    k/(k+1) * degree - c.
    """
    if k is None:
        k = h + 3
    if k != h + 3:
        raise ValueError("cluster size k must equal h + 3")
    shape = cluster_shape(delta, h, monic, pad)
    poly = (gen_cluster_Q(delta, h, pad) if monic else gen_cluster_P(delta, h, pad)).instantiate(n)
    if pad:
        # x**pad repeats the root 0; the cluster lives in the squarefree part
        measured = poly.__class__(poly.coeffs[pad:], poly.var)
    else:
        measured = poly
    rs = find_roots(measured, prec, cap)
    res = cluster_product(measured, k, roots=rs)
    H = height(poly)
    e_lo, e_hi = log_ratio_bounds(res.lo, res.hi, H)
    return ClusterReport(delta, h, n, k, monic, pad, poly.degree, H, res.lo, res.hi, e_lo, e_hi,
                         shape.c, shape.target - shape.c, shape.predicted_exponent,
                         res.exhaustive, rs.precision)
