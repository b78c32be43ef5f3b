"""
test_arctan.py — closed forms for integrals of arctan powers
"""
import mpmath as mp

from src import arctan
from src.catalogue import run_check
from src.checks.arctan import ARCTAN_POWERS
from src.constants import catalan, parse_form

DIGITS = 25
TOL = mp.mpf(10) ** -(DIGITS - 8)


def test_small_powers_are_symbolic_matches():
    for p in (1, 2):
        assert arctan.arctan_power_integral(p) == parse_form(ARCTAN_POWERS[p])
    assert arctan.arctan_power_integral(0) == parse_form("1")


def test_cot_moment_degree_one():
    assert arctan.cot_moment(1, "pi/2") == parse_form("1/2*pi*log2")
    assert arctan.cot_moment(1, "pi/4") == parse_form("1/8*pi*log2 + 1/2*G")
    for upper in arctan.UPPER_LIMITS:
        for p in (1, 2, 3):
            assert arctan.verify_cot_moment(p, upper, DIGITS) <= TOL, (p, upper)


def test_cot_moment_quarter_limit_at_thirty_digits():
    for p in range(1, 5):
        assert arctan.verify_cot_moment(p, "pi/4", 30) <= mp.mpf(10) ** -25, p


def test_arctan_powers_against_quadrature():
    for p in range(1, 5):
        assert arctan.verify_arctan_power(p, DIGITS) <= TOL, p


def test_recursion_starts_from_A():
    for p in range(0, 4):
        assert arctan.xn_arctan_recursive(1, p) == arctan.arctan_power_integral(p)
    assert arctan.xn_exponents(2, 1, "oe") == (4, 2)
    assert arctan.xn_exponents(1, 2, "eo") == (1, 3)


def test_xn_identities_small():
    for variant in arctan.VARIANTS:
        assert arctan.verify_xn_arctan(1, 1, variant, DIGITS) <= TOL, variant
    assert arctan.verify_xn_arctan(2, 1, "oe", DIGITS) <= TOL


def test_arctan_over_x():
    amtv, closed = arctan.arctan_over_x(1)
    assert closed == catalan()
    assert arctan.verify_arctan_over_x(2, DIGITS) <= TOL
    assert arctan.arctan_over_x(6)[1] is None


def test_bad_arguments():
    for call in (lambda: arctan.cot_moment(1, "pi/3"), lambda: arctan.xn_arctan(1, 1, "xx"),
                 lambda: arctan.amtv_amsv_form(1, "mixed")):
        try:
            call()
        except ValueError:
            continue
        raise AssertionError("bad argument accepted")


def test_catalogue_checks():
    for check_id in ("xn-recursive", "S(2,b1)", "T/S-even-1", "alternating-S"):
        result = run_check(check_id, DIGITS)
        assert result.passed, (check_id, result.detail)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
