"""
test_core.py — index parsing, measures, family specialization and T/S harmonic sums
"""
from fractions import Fraction
from itertools import product

from src.core import (FamilyIndex, HarmonicSumSpec, Index, IndexSyntaxError, LinComb, all_indices, family_indices,
                      format_index, harmonic_sum, parse_family, parse_index, parse_symbol, specialize)


# -----------------------------------
# Parsing
# -----------------------------------
def test_parse_decorations():
    i = parse_index("M(b2,3,cb4)")
    assert i == Index.of((2, -1, 1), (3, 1, 1), (4, -1, -1))
    assert (i.weight, i.depth) == (9, 3)
    assert str(i) == "M(b2,3,cb4)"


def test_parse_empty_and_inadmissible():
    empty = parse_index("M()")
    assert empty.comps == () and empty.weight == 0 and empty.admissible
    odd_lead = parse_index("M(c1,b1)")
    assert not odd_lead.admissible
    assert parse_index("M(b1)").admissible


def test_parse_errors_carry_position():
    for text, pos in (("M(2,,3)", 4), ("M(0)", 2), ("Q(2)", 0), ("T(c2)", 2)):
        try:
            parse_index(text) if text[0] == "M" else parse_family(text)
        except IndexSyntaxError as e:
            assert e.position == pos, (text, e.position)
        else:
            raise AssertionError(f"{text} parsed")


def test_round_trip_up_to_weight_five():
    for w in range(1, 6):
        for i in all_indices(w, admissible=False):
            assert parse_index(format_index(i)) == i


def test_enumeration_counts():
    assert len(all_indices(1, admissible=False)) == 4
    assert len(all_indices(1)) == 2
    assert len(all_indices(2)) == 12
    assert all(a.sort_key() < b.sort_key() for a, b in zip(all_indices(3), all_indices(3)[1:]))


# -----------------------------------
# Families
# -----------------------------------
def test_specialize_coefficients():
    assert specialize(parse_family("T(2,1)")) == (Fraction(1), Index.of((2, 1, 1), (1, 1, -1)))
    assert specialize(parse_family("S(2)")) == (Fraction(1), Index.of((2, 1, 1)))
    assert specialize(parse_family("Z(2)")) == (Fraction(2), Index.of((2, 1, 1)))
    c, i = specialize(parse_family("t(b2,1,3)"))
    assert c == Fraction(1, 8) and i.eps == (-1, -1, -1)
    c, i = specialize(parse_family("Z(3,b1)"))
    assert c == Fraction(2) ** (4 - 2) and i.eps == (1, 1)


def test_parse_symbol_dispatch():
    assert parse_symbol("M(c2)") == (Fraction(1), Index.of((2, 1, -1)))
    assert parse_symbol("S(2,b1)") == (Fraction(1), Index.of((2, 1, -1), (1, -1, 1)))


def test_family_indices_are_admissible():
    for family in ("Z", "t", "T", "S"):
        specs = family_indices(family, 3)
        assert specs and all(s.admissible for s in specs)
    assert len(family_indices("Z", 2)) == 4


# -----------------------------------
# Harmonic sums
# -----------------------------------
def _brute(family: str, k, sigma, n: int) -> Fraction:
    """Plain nested loops: odd denominators up to n, even ones strictly below n."""
    if not k:
        return Fraction(1)
    odd = (family == "T") == (len(k) % 2 == 1)
    total = Fraction(0)
    for m in range(1, n + 1 if odd else n):
        d = 2 * m - 1 if odd else 2 * m
        total += Fraction(2 * sigma[0] ** m, d ** k[0]) * _brute(family, k[1:], sigma[1:], m)
    return total


def test_harmonic_sum_small_values():
    assert harmonic_sum(FamilyIndex("T", (2,), (1,)), 1) == 2
    assert harmonic_sum(FamilyIndex("T", (), ()), 5) == 1
    assert harmonic_sum(FamilyIndex("S", (1, 1), (1, 1)), 1) == 0
    assert harmonic_sum(HarmonicSumSpec("S", (1,), (-1,)), 2) == -1
    assert HarmonicSumSpec("T", (2,), (1,)) == FamilyIndex("T", (2,), (1,))


def test_harmonic_sum_matches_enumeration():
    for family in ("T", "S"):
        for r in (1, 2, 3):
            for k in product((1, 2, 3), repeat=r):
                for sigma in ((1,) * r, (-1,) + (1,) * (r - 1)):
                    spec = FamilyIndex(family, k, sigma)
                    for n in range(0, 7):
                        assert harmonic_sum(spec, n) == _brute(family, k, sigma, n), (spec, n)


def test_lincomb_arithmetic():
    a = LinComb.of("x", 2) + LinComb.of("y", Fraction(1, 3))
    assert (a - a) == LinComb() and not (a - a)
    assert (a * 3).coeff("y") == 1
    assert (a / 2).coeff("x") == 1
    assert len(a + LinComb.of("x", -2)) == 1


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
