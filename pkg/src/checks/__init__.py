"""
Verification checks, one module per suite. Every check is a callable
taking the working digits and returning a CheckResult.
"""
from dataclasses import dataclass

import mpmath as mp

from src.constants import mvalue, parse_form, split_coefficient, split_terms
from src.core import LinComb, parse_index
from src.numerics import eval_form


@dataclass
class CheckResult:
    check_id: str
    passed: bool
    residual: str = ""
    detail: str = ""


def tolerance(digits: int, slack: int):
    return mp.mpf(10) ** (-(digits - slack))


def index_comb(text: str) -> LinComb:
    """``M(b2,3) + 2*M(c6)`` as a LinComb over indices."""
    out = LinComb()
    for sign, term in split_terms(text):
        coeff, rest = split_coefficient(term)
        out += LinComb.of(parse_index(rest), sign * coeff)
    return out


def index_form(lc: LinComb) -> LinComb:
    """A LinComb over indices as a closed form in M-values."""
    out = LinComb()
    for i, c in lc.items():
        out += mvalue(i, c)
    return out


def symbolic(check_id: str, got: LinComb, want: LinComb) -> CheckResult:
    diff = got - want
    if diff:
        return CheckResult(check_id, False, "", f"differs by {diff!r}")
    return CheckResult(check_id, True, "0", f"{len(want)} terms")


def numeric(check_id: str, lhs: LinComb, rhs: LinComb, digits: int, slack: int) -> CheckResult:
    """Evaluate two closed forms and compare them within 10^-(digits - slack)."""
    a = eval_form(lhs, digits)
    b = eval_form(rhs, digits)
    with mp.workdps(digits + 10):
        res = abs(a.value - b.value)
        ok = res <= tolerance(digits, slack)
        return CheckResult(check_id, bool(ok), mp.nstr(res, 3), mp.nstr(a.value, min(digits, 15)))


def identity(check_id: str, lhs_text: str, rhs_text: str, digits: int, slack: int) -> CheckResult:
    return numeric(check_id, parse_form(lhs_text), parse_form(rhs_text), digits, slack)


def against_decimal(check_id: str, form: LinComb, expected: str, places: int, digits: int) -> CheckResult:
    """Compare with a printed decimal known to ``places`` places."""
    v = eval_form(form, digits)
    with mp.workdps(digits + 10):
        res = abs(v.value - mp.mpf(expected))
        ok = res <= mp.mpf(10) ** (-places) / 2 + v.err
        return CheckResult(check_id, bool(ok), mp.nstr(res, 3), mp.nstr(v.value, min(digits, 15)))


def combine(check_id: str, parts) -> CheckResult:
    """Fold several partial results into one."""
    parts = list(parts)
    failed = [p for p in parts if not p.passed]
    worst = max((mp.mpf(p.residual) for p in parts if p.residual), default=mp.mpf(0))
    detail = "; ".join(f"{p.check_id}: {p.detail}" for p in failed) or f"{len(parts)} parts"
    return CheckResult(check_id, not failed, mp.nstr(worst, 3), detail)

