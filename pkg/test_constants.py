"""
test_constants.py — closed-form parsing and symbolic arithmetic
"""
from fractions import Fraction

from src.constants import (catalan, family_value, form_weight, mul, mvalue, parse_form, pi, polylog_part, power,
                           split_coefficient, split_terms, zeta)
from src.core import parse_index


def test_split_terms_respects_parentheses():
    assert split_terms("-2*G + pi*log2") == [(-1, "2*G"), (1, "pi*log2")]
    assert split_terms("8*ImLi3((1+I)/2) - M(b2,c1)") == [(1, "8*ImLi3((1+I)/2)"), (-1, "M(b2,c1)")]
    assert split_coefficient("7/2*zeta(3)") == (Fraction(7, 2), "zeta(3)")
    assert split_coefficient("pi*G") == (Fraction(1), "pi*G")


def test_parse_form_builds_monomials():
    form = parse_form("pi*G - 7/2*zeta(3)")
    assert form == mul(pi(), catalan()) - zeta(3) * Fraction(7, 2)
    assert form_weight(form) == {3}
    assert parse_form("pi^2") == power(pi(), 2)
    assert parse_form("1/2*Z(b3,1)") == mvalue(parse_index("M(b3,1)"), Fraction(1, 2) * 2 ** 2)
    assert parse_form("ImLi3((1+I)/2)") == polylog_part(3, complex(0.5, 0.5), "im")


def test_family_value_scaling():
    assert family_value("t(b1)") == mvalue(parse_index("M(cb1)"), Fraction(1, 2))
    assert family_value("M(c2)") == mvalue(parse_index("M(c2)"))


def test_parse_form_errors():
    for text in ("pi*foo", "2*G +", "zeta(3) + + pi"):
        try:
            parse_form(text)
        except ValueError:
            continue
        raise AssertionError(f"{text!r} parsed")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
