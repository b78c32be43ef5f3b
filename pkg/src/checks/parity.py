from functools import partial

from src.checks import identity

# depth-three values reduced to depth two and classical constants
IDENTITIES = {
    "parity-1": ("M(cb1,2,b2)",
                 "-1/12*pi^2*M(2,cb1) - 1/2*pi*M(2,b2) + M(2,cb3) + 2*M(3,cb2) + 3*M(4,cb1)"
                 " + M(b4,cb1) + 7/4*G*zeta(3)"),
    "parity-2": ("M(b1,c2,c1)",
                 "-2*log2*M(c2,b1) - 1/2*pi*M(2,cb1) + M(c3,b1) - 2*M(c3,c1) - M(c2,c2)"
                 " + 35/4*log2*zeta(3) - 1/2*pi^2*log2^2 - 1/16*pi^4"),
    "parity-3": ("M(b1,b2,c1)",
                 "-2*log2*M(b2,b1) - M(b2,c2) - 2*M(b3,c1) - M(3,c1) - 27/8*log2*zeta(3) + 1/4*pi^2*log2^2"),
    "parity-4": ("M(2,c2,cb1)",
                 "1/8*pi^2*M(c2,cb1) + 1/2*pi*M(2,c2) + log2*M(cb2,2) + M(c2,cb3) + M(cb3,2) + 2*M(c3,cb2)"
                 " + 3*M(c4,cb1) + 7*G*zeta(3) + 7/2*pi*log2*zeta(3) - 6*log2*beta(4)"
                 " - 1/12*pi^2*log2*G - 1/24*pi^5"),
}


def check_parity(label: str, digits: int = 20, slack: int = 10):
    lhs, rhs = IDENTITIES[label]
    return identity(label, lhs, rhs, digits, slack)


CHECKS = {label: partial(check_parity, label) for label in IDENTITIES}
