from functools import partial

from src.core import parse_index
from src.words import dual_word, p_map, q_image
from src.checks import combine, index_comb, index_form, numeric, symbolic

IDENTITIES = {
    "D1": ("M(cb2,c1,cb1)",
           "M(c2,c1,c1) + M(c2,1,c1) + M(2,cb1,cb1) + M(b2,b1,c1) + M(cb2,c1,cb1)"
           " - M(2,1,c1) - M(c2,cb1,cb1) - M(2,c1,c1) - M(cb2,cb1,c1)"),
    "D2": ("M(2,c1,cb2)", "M(cb1,b1,c3) + M(cb1,b1,c1,c2) + M(b1,cb1,1,c2)"),
    "D3": ("M(b2,b3,cb1)", "-M(b1,cb2,1,c1,c1) - M(cb1,b2,c1,1,c1) + M(b1,cb2,1,cb1,cb1)"),
    "D4": ("M(cb3,c1,b2,c1)", "M(3,cb1,b1,1,c1) + M(c3,b1,cb1,1,c1) - M(3,cb1,1,b1,c1)"),
}


def dual_image(text: str):
    """M(i) rewritten through the involution t -> (1-t)/(1+t)."""
    sign, w = p_map(parse_index(text))
    return q_image(dual_word(w)) * sign


def check_duality(label: str, digits: int = 20, slack: int = 8):
    lhs, rhs = IDENTITIES[label]
    expected = index_comb(rhs)
    parts = [
        symbolic("word expansion", dual_image(lhs), expected),
        numeric("values", index_form(index_comb(lhs)), index_form(expected), digits, slack),
    ]
    return combine(label, parts)


CHECKS = {label: partial(check_duality, label) for label in IDENTITIES}
