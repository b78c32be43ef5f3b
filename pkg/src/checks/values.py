"""
Explicit evaluations of alternating T-, S- and t-type values, and of a few
weight-four M-values, in terms of classical constants. Values written
M(c..) with every component odd are the all-odd t-type sums.
"""
from functools import partial

from src.checks import identity

EVALUATIONS = {
    "T(b1,2)": "pi*G - 7/2*zeta(3)",
    "S(b1,1)": "-2*G + pi*log2",
    "S(b1,b1)": "-2*G + 1/2*pi*log2",
    "T(b1,2,1)": "-1/4*G*pi^2 + 6*beta(4) - 7/8*pi*zeta(3)",
    "T(b1,1,2)": "-6*beta(4) + 7/4*pi*zeta(3)",
    "S(b1,1,1)": "1/4*pi^2*log2 - 21/16*zeta(3)",
    "S(b1,1,b1)": "1/8*pi^2*log2 - 7/8*zeta(3)",
    "T(b1,1,1,2)": "pi*beta(4) + 7/16*pi^2*zeta(3) - 31/4*zeta(5)",
    "T(b1,1,2,1)": "-3*pi*beta(4) - 7/32*pi^2*zeta(3) + 93/8*zeta(5)",
    "S(b1,1,1,1)": "-2*beta(4) - 1/24*pi^3*log2 + 3/4*pi*zeta(3)",
    "S(b1,1,1,b1)": "-2*beta(4) - 1/48*pi^3*log2 + 21/32*pi*zeta(3)",
    "T(b3,1,b1)": "-1/8*pi^3*G - 7/32*pi^2*zeta(3) + 93/16*zeta(5)",
    "T(b2,1,b1)": "-4*G^2 + 1/32*pi^4",
    "S(b2,1,1)": "-2*G^2 - 53/1440*pi^4 + 2*G*pi*log2 - 1/6*pi^2*log2^2 + 1/6*log2^4 + 4*Li4(1/2)",
    "S(b2,1,b1)": "-2*G^2 - 61/5760*pi^4 + G*pi*log2 - 1/12*pi^2*log2^2 + 1/12*log2^4 + 2*Li4(1/2)",
    "Li4(1/2)": "1/2*Z(b3,1) + 1/96*pi^4 + 1/24*pi^2*log2^2 - 1/24*log2^4 - 7/8*log2*zeta(3)",
    "M(cb2,cb1)": "1/4*pi^2*log2 - 7/4*zeta(3)",
    "M(cb1,c1,cb1)": "-G*pi + 21/8*zeta(3)",
    "M(cb1,cb1,cb1)": "-G*pi - 1/8*pi^2*log2 + 35/16*zeta(3)",
    "T(b2,b1)": "-3/16*pi^3 + 8*ImLi3((1+I)/2) + 4*G*log2 - 1/4*pi*log2^2",
    "T(b1,1,1,b1)": "-1/4*G*pi^2 + 2*beta(4)",
    "T(b1,1,b1,b1)": "-1/4*G*pi^2 + 6*beta(4) - 7/8*pi*zeta(3)",
    "S(b1,2)": "11/96*pi^3 - 4*ImLi3((1+I)/2) - 2*G*log2 + 1/8*pi*log2^2",
    "M(b2,b1,c1)": "91/1920*pi^4 + 1/4*pi^2*log2^2 - 1/4*log2^4 - 6*Li4(1/2) - 7/2*log2*zeta(3)",
    "M(cb1,1,b1,c1)": "-1/12*G*pi^2 - 2*beta(4) + 1/16*pi^3*log2 + 7/16*pi*zeta(3)",
    "M(cb1,c1,b1,c1)": "1/3*G*pi^2 + 2*beta(4) - 1/16*pi^3*log2 - 7/8*pi*zeta(3)",
}

# reductions to lower depth that precede some of the evaluations above
REDUCTIONS = {
    "M(cb2,cb1)": "-1/2*M(c3) + 1/2*M(c2,c1)",
    "T(b2,b1)": "-2*T(b3) + 2*T(2,b1)",
    "T(b1,1,1,b1)": "1/2*T(b4) + 3/2*T(b3,b1)",
    "S(b1,2)": "-2/3*S(b2,b1) + 1/3*S(b2,1)",
    "M(b2,b1,c1)": "-11/8*M(4) - 12*M(b3,1) - 4*M(3,b1)",
}


def check_evaluation(symbol: str, digits: int = 20, slack: int = 10):
    return identity(symbol, symbol, EVALUATIONS[symbol], digits, slack)


def check_reduction(symbol: str, digits: int = 20, slack: int = 10):
    return identity(f"{symbol} reduction", symbol, REDUCTIONS[symbol], digits, slack)


CHECKS = {
    **{symbol: partial(check_evaluation, symbol) for symbol in EVALUATIONS},
    **{f"{symbol} reduction": partial(check_reduction, symbol) for symbol in REDUCTIONS},
}
