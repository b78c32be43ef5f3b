"""
test_regularization.py — regularized values, rho and regularized double shuffle relations
"""
from fractions import Fraction

import mpmath as mp

from src.algebra import normalize, stuffle
from src.catalogue import SUITES, run_check
from src.checks import index_comb
from src.constants import ConstantId, Monomial
from src.core import Index, LinComb, parse_index
from src.numerics import eval_index, truncated_oracle
from src.regularization import (LOG2, RegularizationError, TPoly, constant_to_index, even_expansion, expand_terms,
                                reg_dbsf, rho, shift_log2, shuffle_reg, stuffle_reg, stuffle_reg_lincomb)
from src.relations import validate_relation
from src.words import parse_word

M = parse_index
ZETA2 = Monomial.of((ConstantId("zeta", (2,)), 1))
DIGITS = 20
TOL = mp.mpf(10) ** -12


def test_divergent_letter_and_component_values():
    assert shuffle_reg(parse_word("w+1^+1")) == TPoly.T() - TPoly.term(LOG2)
    assert shuffle_reg(parse_word("w+1^-1")) == TPoly.T() + TPoly.term(LOG2)
    assert stuffle_reg(Index.of((1, 1, 1))) == TPoly.T()
    assert stuffle_reg(Index.of((1, 1, -1))) == TPoly.T() + TPoly.term(LOG2, coeff=2)


def test_worked_weight_three_example():
    reg = stuffle_reg(M("M(c1,b2)"))
    assert reg == TPoly.term(index=M("M(b2)"), degree=1) + TPoly.term(LOG2, M("M(b2)"), 2) \
        - TPoly.term(index=M("M(b2,c1)"))
    expected = TPoly.term(index=M("M(b2)"), degree=1) + TPoly.term(LOG2, M("M(b2)")) \
        - TPoly.term(index=M("M(c2,b1)")) - TPoly.term(index=M("M(cb2,cb1)"))
    assert shuffle_reg(parse_word("w+1^-1 w0 w-1^+1")) == expected
    assert rho(reg) == TPoly.term(index=M("M(b2)"), degree=1) + TPoly.term(LOG2, M("M(b2)")) \
        - TPoly.term(index=M("M(b2,c1)"))


def test_rho_small_powers():
    assert rho(TPoly.one()) == TPoly.one()
    assert rho(TPoly.T() + TPoly.term(LOG2, coeff=2)) == TPoly.T() + TPoly.term(LOG2)
    square = TPoly.T() * TPoly.T()
    expected = (TPoly.term(degree=2) + TPoly.term(LOG2, coeff=-2, degree=1)
                + TPoly.term(Monomial.of((ConstantId("log2"), 2))) + TPoly.term(ZETA2))
    assert rho(square) == expected
    assert rho(square).degree == 2


def test_shuffle_reg_rejects_trailing_w0():
    try:
        shuffle_reg(parse_word("w+1^+1 w0"))
    except RegularizationError:
        return
    raise AssertionError("word ending in w0 regularized")


def test_constant_to_index():
    assert constant_to_index(LOG2) == LinComb.of(M("M(b1)"), -1)
    assert constant_to_index(ZETA2) == LinComb.of(M("M(2)"), 2)
    both = Monomial.of((ConstantId("log2"), 1), (ConstantId("zeta", (2,)), 1))
    assert constant_to_index(both) == LinComb.of(M("M(b1)"), -1).product(LinComb.of(M("M(2)"), 2), stuffle)
    try:
        constant_to_index(both, max_weight=2)
    except RegularizationError:
        pass
    else:
        raise AssertionError("weight cap ignored")


# ────────────────────────────────────────────────
# Mixed divergent prefixes
# ────────────────────────────────────────────────
def _coefficient_values(p: TPoly) -> dict:
    """Numeric value of each T-coefficient once constants are rewritten as M-values."""
    out = {}
    with mp.workdps(DIGITS + 10):
        for d, lc in p.coeffs.items():
            terms = expand_terms(lc)
            out[d] = mp.fsum(mp.mpf(c.numerator) / c.denominator * _index_value(i) for i, c in terms.items())
    return out


def _index_value(i: Index):
    return mp.mpf(1) if not i.comps else eval_index(i, DIGITS).value


def _same_values(p: TPoly, q: TPoly) -> bool:
    a, b = _coefficient_values(p), _coefficient_values(q)
    with mp.workdps(DIGITS + 10):
        return all(abs(a.get(d, 0) - b.get(d, 0)) <= TOL for d in set(a) | set(b))


def test_mixed_prefix_index_is_regularized():
    reg = stuffle_reg(M("M(1,c1,b2)"))
    assert reg.degree == 2
    assert reg[2] == TPoly.term(index=M("M(b2)"), coeff=Fraction(1, 2), degree=2)[2]
    assert stuffle_reg(M("M(c1,1)")).degree == 2


def test_mixed_prefix_word_is_regularized():
    reg = shuffle_reg(parse_word("w+1^+1 w+1^-1 w0 w-1^+1"))
    assert reg.degree == 2
    assert shuffle_reg(parse_word("w+1^-1 w+1^+1")).degree == 2


def test_even_expansion_agrees_with_uniform_runs():
    for text in ("M(1)", "M(c1)", "M(1,1)", "M(c1,c1)"):
        u = M(text)
        via_even = shift_log2(stuffle_reg_lincomb(even_expansion(u)))
        assert _same_values(via_even, stuffle_reg(u)), text
    try:
        even_expansion(M("M(1,2)"))
    except RegularizationError:
        pass
    else:
        raise AssertionError("convergent component expanded")


def test_mixed_run_is_a_stuffle_homomorphism():
    i, j = M("M(1)"), M("M(c1,b2)")
    left = stuffle_reg(i) * stuffle_reg(j)
    right = stuffle_reg_lincomb(stuffle(i, j))
    assert _same_values(left, right)
    pair = stuffle_reg_lincomb(stuffle(M("M(1)"), M("M(c1)")))
    assert _same_values(stuffle_reg(M("M(1)")) * stuffle_reg(M("M(c1)")), pair)


def test_mixed_run_matches_truncated_sums():
    n = 4000
    idx = M("M(1,c1)")
    coeffs = _coefficient_values(stuffle_reg(idx))
    exact = truncated_oracle(idx, n)
    with mp.workdps(DIGITS + 10):
        t = mp.log(n // 2) + mp.euler
        approx = mp.fsum(v * t ** d for d, v in coeffs.items())
        assert abs(approx - mp.mpf(exact.numerator) / exact.denominator) < mp.mpf("0.02")


def test_reg_dbsf_on_mixed_prefix_validates():
    rels = reg_dbsf(M("M(1,c1)"), M("M(b2)"))
    assert rels
    for rel in rels:
        assert rel.weight == 4
        validate_relation(rel, DIGITS)


def test_reg_dbsf_weight_three_identity():
    rels = reg_dbsf(M("M(c1)"), M("M(b2)"))
    target = normalize(index_comb("M(c2,b1) + M(cb2,cb1) - M(b2,c1)"))
    assert any(r.terms == target for r in rels)
    assert all(r.provenance == "reg-dbsf" and r.weight == 3 for r in rels)


def test_reg_dbsf_admissible_falls_back_to_finite():
    rels = reg_dbsf(M("M(c2)"), M("M(cb1)"))
    assert len(rels) == 1 and rels[0].provenance == "finite-dbsf"


def test_regularization_catalogue():
    for check_id in SUITES["regularization"]:
        result = run_check(check_id, 20)
        assert result.passed, (check_id, result.detail)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
