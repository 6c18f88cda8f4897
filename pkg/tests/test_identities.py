import pytest

from seplab.algebra import Poly, X
from seplab.families import gen_p, gen_q, gen_s, gen_r
from seplab.identities import (SUITES, bracket_check, mutated_p, run_suite, verify_eq2,
                               verify_leading_coeffs, verify_low_order, verify_q_congruence,
                               verify_r_at_xn, verify_r_structure, verify_xn_expansion,
                               verify_yn_expansion, z_point)


def test_eq2_small_and_full():
    assert verify_eq2(0).passed
    assert verify_eq2(1).passed
    assert verify_eq2(12).passed


def test_eq2_negative_control():
    rep = verify_eq2(3, p=mutated_p)
    assert not rep.passed
    # x^3 in place of x^2 first bites at d=2
    assert rep.witness.startswith("d=2: residual")


def test_q_congruence():
    rep = verify_q_congruence(4)
    assert rep.passed
    assert rep.details["quotient_d4"] == str(X())
    assert verify_q_congruence(12).passed


def test_q_congruence_negative_control():
    def bad_q(d):
        return gen_q(d) + (X() if d == 6 else 0)
    rep = verify_q_congruence(8, q=bad_q)
    assert not rep.passed and "d=6" in rep.witness


def test_leading_coeffs():
    assert verify_leading_coeffs(12).passed


def test_leading_coeffs_negative_control():
    def bad_s(d):
        return gen_s(d) * 2 if d == 5 else gen_s(d)
    assert not verify_leading_coeffs(8, s=bad_s).passed


def test_low_order():
    assert verify_low_order(12).passed
    assert verify_low_order(2).passed


def test_low_order_negative_control():
    def bad_p(d):
        return gen_p(d) + Poly([0, 0, 1]) if d == 4 else gen_p(d)
    rep = verify_low_order(6, p=bad_p)
    assert not rep.passed and "p_4" in rep.witness


def test_r_structure():
    assert verify_r_structure(25).passed


def test_r_structure_negative_control():
    def bad_r(D):
        return gen_r(D) + (X() ** 3 if D == 9 else 0)
    rep = verify_r_structure(10, r=bad_r)
    assert not rep.passed and "D=9" in rep.witness


def test_r_value_at_xn():
    assert verify_r_at_xn(12).passed


def test_xn_expansion():
    rep = verify_xn_expansion(12)
    assert rep.passed
    coeffs = rep.details["coeffs"]
    assert coeffs[:6] == [1, -1, 2, -5, 13, -34]
    assert coeffs[3] == -5 and coeffs[5] == -34 and coeffs[0] == 1


def test_yn_expansion():
    rep = verify_yn_expansion((10, 100))
    assert rep.passed
    assert all(v <= 64 for v in rep.details["fitted"].values())


def test_yn_wrong_truncation_detected():
    rep = verify_yn_expansion((100,), terms=1)
    assert not rep.passed
    assert "n=100" in rep.witness


def test_yn_rejects_small_n():
    with pytest.raises(ValueError):
        verify_yn_expansion((1,))


def test_run_suite_all():
    reports = run_suite("all", d_max=8, D_max=12)
    assert [r.identity for r in reports] == list(SUITES)
    assert all(r.passed for r in reports)
    assert reports[0].to_json()["passed"] is True


def test_run_suite_fault_injection():
    reps = run_suite("eq2", d_max=5, families={"p": mutated_p})
    assert not reps[0].passed
    with pytest.raises(ValueError):
        run_suite("nope")


@pytest.mark.parametrize("d", [3, 4, 5, 6])
@pytest.mark.parametrize("n", [32, 100, 1000])
def test_bracket_signs(d, n):
    b = bracket_check(d, n)
    assert b.brackets_root
    # (-1)^(d-1) p(x_n) > 0 and the opposite sign at z
    assert (-1) ** (d - 1) * b.sign_at_xn > 0
    assert (-1) ** (d - 1) * b.sign_at_z < 0


def test_z_point_side():
    from fractions import Fraction
    n = 10
    xn = Fraction(12, 131)
    assert z_point(3, n) < xn < z_point(4, n)
