from fractions import Fraction

import mpmath as mp

from src.algebra import normalize, stuffle
from src.constants import ConstantId, Monomial
from src.core import Index, all_indices, parse_index
from src.numerics import eval_index
from src.regularization import LOG2, TPoly, constant_to_index, reg_dbsf, rho, shuffle_reg, stuffle_reg
from src.relations import Echelon, RelationRejected, validate_relation
from src.words import p_map
from src.checks import CheckResult, combine, index_comb, tolerance

ANCHOR = "-0.7739912"
ANCHOR_LEFT = "M(c2,b1) + M(cb2,cb1)"
ANCHOR_RIGHT = "M(b2,c1)"


def _m(text: str) -> Index:
    return parse_index(text)


def _poly_check(check_id: str, got: TPoly, want: TPoly) -> CheckResult:
    if got != want:
        return CheckResult(check_id, False, "", f"got {got!r}, want {want!r}")
    return CheckResult(check_id, True, "0", repr(want))


def _value(text: str, digits: int):
    lc = index_comb(text)
    return mp.fsum(mp.mpf(c.numerator) / c.denominator * eval_index(i, digits).value for i, c in lc.items())


def check_anchor(digits: int = 20, slack: int = 5) -> CheckResult:
    """Both sides of the weight-3 relation print as -0.7739912 and agree with each other."""
    with mp.workdps(digits + 10):
        left, right = _value(ANCHOR_LEFT, digits), _value(ANCHOR_RIGHT, digits)
        res = abs(left - right)
        printed = max(abs(left - mp.mpf(ANCHOR)), abs(right - mp.mpf(ANCHOR)))
        ok = res <= tolerance(digits, slack) and printed <= mp.mpf("1e-6")
        return CheckResult("reg-w3", bool(ok), mp.nstr(res, 3), f"{mp.nstr(left, 7)} (printed {ANCHOR})")


def check_anchor_relation(digits: int = None) -> CheckResult:
    """reg_dbsf of (1 odd) and (2 negative) produces the anchor relation."""
    target = normalize(index_comb(f"{ANCHOR_LEFT} - {ANCHOR_RIGHT}"))
    rels = reg_dbsf(_m("M(c1)"), _m("M(b2)"))
    if any(rel.terms == target for rel in rels):
        return CheckResult("reg-w3-relation", True, "0", f"among {len(rels)} relations")
    return CheckResult("reg-w3-relation", False, "", f"not among {[str(r) for r in rels]}")


def check_shuffle_reg_example(digits: int = None) -> CheckResult:
    sign, w = p_map(_m("M(c1,b2)"), allow_divergent=True)
    b2 = _m("M(b2)")
    want = (TPoly.term(index=b2, degree=1) + TPoly.term(LOG2, b2)
            - TPoly.term(index=_m("M(c2,b1)")) - TPoly.term(index=_m("M(cb2,cb1)")))
    return _poly_check("shuffle-reg", shuffle_reg(w) * sign, want)


def check_stuffle_reg_example(digits: int = None) -> CheckResult:
    b2 = _m("M(b2)")
    want = TPoly.term(index=b2, degree=1) + TPoly.term(LOG2, b2, coeff=2) - TPoly.term(index=_m("M(b2,c1)"))
    return _poly_check("stuffle-reg", stuffle_reg(_m("M(c1,b2)")), want)


def check_rho(digits: int = None) -> CheckResult:
    shifted = rho(TPoly.T() + TPoly.term(LOG2, coeff=2))
    first = _poly_check("rho(T+2log2)", shifted, TPoly.T() + TPoly.term(LOG2))
    minus = TPoly.T() - TPoly.term(LOG2)
    zeta2 = Monomial.of((ConstantId("zeta", (2,)), 1))
    second = _poly_check("rho(T^2)", rho(TPoly.T() * TPoly.T()), minus * minus + TPoly.term(zeta2))
    return combine("rho", [first, second, _poly_check("rho(1)", rho(TPoly.one()), TPoly.one())])


def check_euler(digits: int = None) -> CheckResult:
    """zeta(2,1) = zeta(3), i.e. M(2,1) = 2 M(3), from the regularized relations of (1) and (2)."""
    ech = Echelon()
    for rel in reg_dbsf(_m("M(1)"), _m("M(2)")):
        ech.add(rel.terms)
    left = ech.reduce(dict(index_comb("M(2,1) - 2*M(3)").items()))
    if left:
        return CheckResult("euler", False, "", f"remainder {left}")
    return CheckResult("euler", True, "0", f"rank {ech.rank}")


def check_admissible_degree_zero(digits: int = None, max_weight: int = 4) -> CheckResult:
    for w in range(1, max_weight + 1):
        for i in all_indices(w):
            sign, word = p_map(i)
            if stuffle_reg(i) != TPoly.term(index=i) or shuffle_reg(word) * sign != TPoly.term(index=i):
                return CheckResult("admissible-reg", False, "", f"{i} is not fixed")
    return CheckResult("admissible-reg", True, "0", f"weights 1..{max_weight}")


def check_constant_to_index(digits: int = None) -> CheckResult:
    zeta2 = ConstantId("zeta", (2,))
    log2 = ConstantId("log2")
    cases = [
        ("log2", Monomial.of((log2, 1)), index_comb("-M(b1)")),
        ("zeta(2)", Monomial.of((zeta2, 1)), index_comb("2*M(2)")),
        ("log2*zeta(2)", Monomial.of((log2, 1), (zeta2, 1)), stuffle(_m("M(b1)"), _m("M(2)")) * Fraction(-2)),
    ]
    parts = []
    for label, mono, want in cases:
        got = constant_to_index(mono)
        parts.append(CheckResult(label, got == want, "0" if got == want else "", f"{got!r}"))
    return combine("constant-to-index", parts)


def check_mixed_prefix(digits: int = 20) -> CheckResult:
    """Relations from a carrier whose divergent prefix mixes even and odd (1) all hold numerically."""
    rels = reg_dbsf(_m("M(1,c1)"), _m("M(b2)"))
    if not rels:
        return CheckResult("mixed-reg", False, "", "no relations from M(1,c1) | M(b2)")
    worst = mp.mpf(0)
    for rel in rels:
        try:
            checked = validate_relation(rel, digits)
        except RelationRejected as e:
            return CheckResult("mixed-reg", False, "", str(e))
        worst = max(worst, mp.mpf(checked.residual))
    return CheckResult("mixed-reg", True, mp.nstr(worst, 3), f"{len(rels)} relations at weight 4")


CHECKS = {
    "reg-w3": check_anchor,
    "reg-w3-relation": check_anchor_relation,
    "shuffle-reg": check_shuffle_reg_example,
    "stuffle-reg": check_stuffle_reg_example,
    "rho": check_rho,
    "euler": check_euler,
    "admissible-reg": check_admissible_degree_zero,
    "constant-to-index": check_constant_to_index,
    "mixed-reg": check_mixed_prefix,
}
