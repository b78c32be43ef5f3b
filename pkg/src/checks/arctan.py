from functools import partial

import mpmath as mp

from src import arctan
from src.constants import family_value, parse_form
from src.checks import CheckResult, combine, identity, numeric, symbolic, tolerance

# A(p) as printed; A(1) and A(2) are classical
ARCTAN_POWERS = {
    1: "1/4*pi - 1/2*log2",
    2: "1/16*pi^2 + 1/4*pi*log2 - G",
    3: "1/64*pi^3 + 3/32*pi^2*log2 - 3/4*pi*G + 63/64*zeta(3)",
    4: "1/256*pi^4 + 1/32*pi^3*log2 - 3/8*pi^2*G - 9/64*pi*zeta(3) + 3*beta(4)",
}

# (family value, closed form, slack)
CLOSED_FORMS = {
    "S(2,b1)": ("7/2*zeta(3) - pi*G - 1/4*pi^2*log2", 8),
    "T(2,1,b1)": ("-6*beta(4) + 3*zeta(2)*G", 8),
    "S(2,1,1,b1)": ("31/4*zeta(5) - 15/8*zeta(4)*log2 - 63/32*zeta(2)*zeta(3) - pi*beta(4)", 12),
    "T(2,1,1,1,b1)": ("15/4*zeta(4)*G + 3*zeta(2)*beta(4) - 10*beta(6)", 12),
}


def _residual_result(check_id: str, res, digits: int, slack: int) -> CheckResult:
    return CheckResult(check_id, bool(res <= tolerance(digits, slack)), mp.nstr(res, 3))


def check_arctan_powers(digits: int = 30, slack: int = 5) -> CheckResult:
    """A(1)..A(4) against quadrature and against their printed forms."""
    parts = []
    for p, printed in ARCTAN_POWERS.items():
        parts.append(_residual_result(f"A{p} quadrature", arctan.verify_arctan_power(p, digits), digits, slack))
        parts.append(numeric(f"A{p} printed", arctan.arctan_power_integral(p), parse_form(printed), digits, slack))
    return combine("A1..A4", parts)


def check_arctan_over_x(digits: int = 30, slack: int = 5) -> CheckResult:
    parts = [_residual_result(f"r={r}", arctan.verify_arctan_over_x(r, digits), digits, slack) for r in range(1, 5)]
    return combine("arctan^r/x", parts)


def check_cot_moments(digits: int = 30, slack: int = 5) -> CheckResult:
    parts = [
        _residual_result(f"p={p} {upper}", arctan.verify_cot_moment(p, upper, digits), digits, slack)
        for upper in arctan.UPPER_LIMITS
        for p in range(1, 5)
    ]
    return combine("cot-moments", parts)


def check_arctan_mvalues(digits: int = 30, slack: int = 10) -> CheckResult:
    parts = [
        numeric(f"p={p}", arctan.arctan_moment_mvalues(p), arctan.arctan_power_integral(p), digits, slack)
        for p in range(1, 5)
    ]
    return combine("arctan-mvalues", parts)


def check_xn_variant(variant: str, digits: int = 30, slack: int = 10, top: int = 3) -> CheckResult:
    parts = [
        _residual_result(f"n={n} m={m}", arctan.verify_xn_arctan(n, m, variant, digits), digits, slack)
        for n in range(1, top + 1)
        for m in range(1, top + 1)
    ]
    return combine(f"xn-{variant}", parts)


def check_xn_recursive(digits: int = None, top: int = 3) -> CheckResult:
    """Harmonic-sum closed forms agree exactly with the recursion in p."""
    parts = []
    for variant in arctan.VARIANTS:
        for n in range(1, top + 1):
            for m in range(1, top + 1):
                k, p = arctan.xn_exponents(n, m, variant)
                parts.append(symbolic(f"{variant} n={n} m={m}", arctan.xn_arctan(n, m, variant),
                                      arctan.xn_arctan_recursive(k, p)))
    return combine("xn-recursive", parts)


def check_amtv_amsv(parity: str, m: int, digits: int = 30, slack: int = 12) -> CheckResult:
    res = arctan.verify_amtv_amsv_relation(m, parity, digits)
    return _residual_result(f"T/S-{parity}-{m}", res, digits, slack)


def check_closed_form(symbol: str, digits: int = 20) -> CheckResult:
    form, slack = CLOSED_FORMS[symbol]
    return identity(symbol, symbol, form, digits, slack)


def check_alternating_t(digits: int = 20, slack: int = 8) -> CheckResult:
    parts = []
    for a, b in ((0, 0), (1, 0), (0, 1)):
        symbol = "T(" + ",".join(["b1"] + ["1"] * a + ["2"] + ["1"] * b) + ")"
        parts.append(numeric(symbol, arctan.alternating_t_form(a, b), family_value(symbol), digits, slack))
    return combine("alternating-T", parts)


def check_alternating_s(digits: int = 20, slack: int = 8) -> CheckResult:
    parts = []
    for m in range(3):
        symbol = "S(" + ",".join(["b1"] + ["1"] * m) + ")"
        parts.append(numeric(symbol, arctan.alternating_s_form(m), family_value(symbol), digits, slack))
    return combine("alternating-S", parts)


CHECKS = {
    "A1..A4": check_arctan_powers,
    "arctan^r/x": check_arctan_over_x,
    "cot-moments": check_cot_moments,
    "arctan-mvalues": check_arctan_mvalues,
    **{f"xn-{v}": partial(check_xn_variant, v) for v in arctan.VARIANTS},
    "xn-recursive": check_xn_recursive,
    **{f"T/S-{parity}-{m}": partial(check_amtv_amsv, parity, m) for parity in ("even", "odd") for m in (1, 2)},
    **{symbol: partial(check_closed_form, symbol) for symbol in CLOSED_FORMS},
    "alternating-T": check_alternating_t,
    "alternating-S": check_alternating_s,
}
