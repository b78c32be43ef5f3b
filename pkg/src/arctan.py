# src/arctan.py
"""
Closed forms for integrals of powers of arctan over [0, 1].

    A(p)            = int_0^1 arctan(x)^p dx
    X(k, p)         = int_0^1 x^(k-1) arctan(x)^p dx
    arctan_over_x   = int_0^1 arctan(x)^r / x dx

Everything is assembled symbolically as a ClosedForm and only turned into
numbers by the verify_* helpers, which compare against quadrature.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Optional, Tuple

import mpmath as mp

from src.constants import ClosedForm, beta, catalan, family_value, log2, mul, mvalue, one, pi, zeta
from src.core import FamilyIndex, Index, harmonic_sum
from src.numerics import eval_form, quadrature_1d

logger = logging.getLogger("ammv")

UPPER_LIMITS = ("pi/2", "pi/4")
VARIANTS = ("ee", "eo", "oe", "oo")


def _pi_term(power: int, coeff) -> ClosedForm:
    return pi(power) * Fraction(coeff)


def t_bar_one(k: int) -> ClosedForm:
    """t(1b)^k = (-pi/4)^k."""
    return _pi_term(k, Fraction(-1, 4) ** k)


# ────────────────────────────────────────────────
# Cotangent moments
# ────────────────────────────────────────────────
@lru_cache(maxsize=None)
def cot_moment(p: int, upper: str = "pi/2") -> ClosedForm:
    """int_0^upper x^p cot(x) dx for upper pi/2 or pi/4."""
    if p < 1:
        raise ValueError("p must be positive")
    if upper not in UPPER_LIMITS:
        raise ValueError(f"upper limit must be one of {UPPER_LIMITS}")
    fp = factorial(p)
    if upper == "pi/2":
        # (pi/2)^p { log2 + sum_k ... zeta(2k+1) }
        out = mul(_pi_term(p, Fraction(1, 2 ** p)), log2())
        for k in range(1, p // 2 + 1):
            c = Fraction(fp * (-1) ** k * (4 ** k - 1), factorial(p - 2 * k) * 2 ** (p + 2 * k))
            out += mul(_pi_term(p - 2 * k, c), zeta(2 * k + 1))
    else:
        # (1/2)(pi/4)^p { log2 + zeta part - beta part }
        out = mul(_pi_term(p, Fraction(1, 2 * 4 ** p)), log2())
        for k in range(1, p // 2 + 1):
            c = Fraction(fp * (-1) ** k * (4 ** k - 1), factorial(p - 2 * k) * 2 * 4 ** p * 2 ** (2 * k))
            out += mul(_pi_term(p - 2 * k, c), zeta(2 * k + 1))
        for k in range(1, (p + 1) // 2 + 1):
            c = -Fraction(fp * (-4) ** k, factorial(p + 1 - 2 * k) * 2 * 4 ** p)
            out += mul(_pi_term(p + 1 - 2 * k, c), beta(2 * k))
    if p % 2 == 0:
        out += zeta(p + 1) * Fraction(fp * (-1) ** (p // 2), 2 ** p)
    return out


def cot_moment_between(p: int) -> ClosedForm:
    """int_{pi/4}^{pi/2} x^p cot(x) dx."""
    return cot_moment(p, "pi/2") - cot_moment(p, "pi/4")


@lru_cache(maxsize=None)
def arctan_power_integral(p: int) -> ClosedForm:
    """A(p), after x = tan(t), integration by parts and u = pi/2 - t."""
    if p < 0:
        raise ValueError("p must be non-negative")
    if p == 0:
        return one()
    out = _pi_term(p, Fraction(1, 4 ** p))
    out -= mul(_pi_term(p - 1, Fraction(p, 2 ** p)), log2())
    for k in range(1, p):
        c = Fraction(p * (-1) ** k * comb(p - 1, k), 2 ** (p - 1 - k))
        out -= mul(_pi_term(p - 1 - k, c), cot_moment_between(k))
    return out


def arctan_moment_mvalues(p: int) -> ClosedForm:
    """A(p) as a rational combination of depth-p M-values with every s equal to 1."""
    if p < 1:
        raise ValueError("p must be positive")

    def m_of(eps) -> ClosedForm:
        sigma = (-1,) + (1,) * (len(eps) - 1)
        return mvalue(Index.of(*((1, sg, e) for sg, e in zip(sigma, eps))))

    scale = Fraction(factorial(p), 2 ** p)
    if p % 2 == 0:
        q = p // 2
        inner = m_of((1, -1) * q) + m_of((-1, -1) + (1, -1) * (q - 1))
        return inner * (scale * (-1) ** q)
    q = (p - 1) // 2
    inner = m_of((-1,) + (1, -1) * q) - m_of((1,) + (1, -1) * q)
    return inner * (scale * (-1) ** ((p + 1) // 2))


# ────────────────────────────────────────────────
# x^k arctan^p
# ────────────────────────────────────────────────
def _harmonic(family: str, n: int, ones: int, bar: bool = False) -> Fraction:
    """T_n or S_n of ({1}_ones) or ({1}_ones, 1b)."""
    if ones < 0:
        return Fraction(0)
    k = (1,) * (ones + bar)
    sigma = (1,) * ones + ((-1,) if bar else ())
    return harmonic_sum(FamilyIndex(family, k, sigma), n)


def _A(p: int) -> ClosedForm:
    return arctan_power_integral(p)


def _xn_ee(n: int, m: int) -> ClosedForm:
    T = lambda ones, bar=False: _harmonic("T", n, ones, bar)
    S = lambda ones, bar=False: _harmonic("S", n, ones, bar)
    sn = (-1) ** n
    f = Fraction(factorial(2 * m), 2 * n - 1)
    out = t_bar_one(2 * m) * Fraction(1 + sn, 2 * n - 1)
    out += one(sn * (-1) ** m * f / 4 ** m * T(2 * m - 1, True))
    for u in range(m):
        c = -sn * f * (-1) ** u * T(2 * u) / (factorial(2 * m - 2 * u) * 4 ** u)
        out += _A(2 * m - 2 * u) * c
    for v in range(1, m):
        c = sn * f * (-1) ** v / (4 ** v * factorial(2 * m - 2 * v)) * (T(2 * v) + T(2 * v - 1, True))
        out += t_bar_one(2 * m - 2 * v) * c
    for v in range(m):
        c = sn * f * (-1) ** v / (2 ** (2 * v + 1) * factorial(2 * m - 2 * v - 1)) * (S(2 * v + 1) - S(2 * v, True))
        out += t_bar_one(2 * m - 2 * v - 1) * c
    return out


def _xn_eo(n: int, m: int) -> ClosedForm:
    T = lambda ones, bar=False: _harmonic("T", n, ones, bar)
    S = lambda ones, bar=False: _harmonic("S", n, ones, bar)
    sn = (-1) ** n
    f = Fraction(factorial(2 * m - 1), 2 * n - 1)
    out = t_bar_one(2 * m - 1) * -Fraction(1 + sn, 2 * n - 1)
    out += one(-sn * (-1) ** m * f / 2 ** (2 * m - 1) * S(2 * m - 2, True))
    for u in range(m):
        c = -sn * f * (-1) ** u * T(2 * u) / (factorial(2 * m - 2 * u - 1) * 4 ** u)
        out += _A(2 * m - 2 * u - 1) * c
    for v in range(1, m):
        c = sn * f * (-1) ** (v + 1) / (4 ** v * factorial(2 * m - 2 * v - 1)) * (T(2 * v) + T(2 * v - 1, True))
        out += t_bar_one(2 * m - 2 * v - 1) * c
        c = sn * f * (-1) ** v / (2 ** (2 * v - 1) * factorial(2 * m - 2 * v)) * (S(2 * v - 1) - S(2 * v - 2, True))
        out += t_bar_one(2 * m - 2 * v) * c
    return out


def _xn_oe(n: int, m: int) -> ClosedForm:
    T = lambda ones, bar=False: _harmonic("T", n, ones, bar)
    S = lambda ones, bar=False: _harmonic("S", n, ones, bar)
    sn = (-1) ** n
    f = Fraction(factorial(2 * m), 2 * n)
    out = t_bar_one(2 * m) * Fraction(1 - sn, 2 * n)
    out += one(sn * (-1) ** m * f / 4 ** m * S(2 * m - 1, True))
    for u in range(m):
        c = sn * f * (-1) ** u * T(2 * u + 1) / (factorial(2 * m - 2 * u - 1) * 2 ** (2 * u + 1))
        out += _A(2 * m - 2 * u - 1) * c
    for v in range(m):
        c = sn * f * (-1) ** v / (2 ** (2 * v + 1) * factorial(2 * m - 2 * v - 1)) * (T(2 * v + 1) + T(2 * v, True))
        out += t_bar_one(2 * m - 2 * v - 1) * c
    for v in range(1, m):
        c = sn * f * (-1) ** (v + 1) / (4 ** v * factorial(2 * m - 2 * v)) * (S(2 * v) - S(2 * v - 1, True))
        out += t_bar_one(2 * m - 2 * v) * c
    return out


def _xn_oo(n: int, m: int) -> ClosedForm:
    T = lambda ones, bar=False: _harmonic("T", n, ones, bar)
    S = lambda ones, bar=False: _harmonic("S", n, ones, bar)
    sn = (-1) ** n
    f = Fraction(factorial(2 * m - 1), 2 * n)
    out = t_bar_one(2 * m - 1) * -Fraction(1 - sn, 2 * n)
    out += one(sn * (-1) ** m * f / 2 ** (2 * m - 1) * T(2 * m - 2, True))
    for u in range(1, m):
        c = -sn * f * (-1) ** u * T(2 * u - 1) / (factorial(2 * m - 2 * u) * 2 ** (2 * u - 1))
        out += _A(2 * m - 2 * u) * c
    for v in range(1, m):
        c = sn * f * (-1) ** v / (2 ** (2 * v - 1) * factorial(2 * m - 2 * v)) * (T(2 * v - 1) + T(2 * v - 2, True))
        out += t_bar_one(2 * m - 2 * v) * c
        c = sn * f * (-1) ** v / (4 ** v * factorial(2 * m - 2 * v - 1)) * (S(2 * v) - S(2 * v - 1, True))
        out += t_bar_one(2 * m - 2 * v - 1) * c
    return out


_XN_FORMS = {"ee": _xn_ee, "eo": _xn_eo, "oe": _xn_oe, "oo": _xn_oo}


def xn_exponents(n: int, m: int, variant: str) -> Tuple[int, int]:
    """(k, p) with the variant's integrand equal to x^(k-1) arctan^p."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    k = 2 * n - 1 if variant[0] == "e" else 2 * n
    p = 2 * m if variant[1] == "e" else 2 * m - 1
    return k, p


def xn_arctan(n: int, m: int, variant: str) -> ClosedForm:
    """Closed form of int_0^1 x^(k-1) arctan^p through T- and S-harmonic sums."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    return _XN_FORMS[variant](n, m)


@lru_cache(maxsize=None)
def xn_arctan_recursive(k: int, p: int) -> ClosedForm:
    """X(k, p) from the recursion in p, alternating between odd and even k."""
    if k < 1 or p < 0:
        raise ValueError("k must be positive and p non-negative")
    if p == 0:
        return one(Fraction(1, k))
    top = _pi_term(p, Fraction(1, 4 ** p))
    if k % 2 == 0:
        n = k // 2
        sn = (-1) ** n
        out = top * Fraction(1 - sn, k)
        for j in range(1, n + 1):
            out -= xn_arctan_recursive(2 * j - 1, p - 1) * Fraction(p * sn * (-1) ** j, k)
        return out
    n = (k + 1) // 2
    sn = (-1) ** n
    out = top * Fraction(1 + sn, k) - _A(p) * Fraction(sn, k)
    for j in range(1, n):
        out += xn_arctan_recursive(2 * j, p - 1) * Fraction(p * sn * (-1) ** j, k)
    return out


# ────────────────────────────────────────────────
# arctan^r / x and the T/S relation
# ────────────────────────────────────────────────
def _family(name: str, head: str, ones: int, bar_last: bool = False) -> ClosedForm:
    """family_value of e.g. T(2,{1}_ones,1b)."""
    parts = [head] + ["1"] * ones + (["b1"] if bar_last else [])
    return family_value(f"{name}({','.join(parts)})")


_ARCTAN_OVER_X = {
    1: lambda: catalan(),
    2: lambda: mul(pi(), catalan()) * Fraction(1, 2) - zeta(3) * Fraction(7, 8),
    3: lambda: mul(zeta(2), catalan()) * Fraction(9, 8) - beta(4) * Fraction(3, 2),
    4: lambda: zeta(5) * Fraction(93, 32) - mul(pi(), beta(4)) * Fraction(3, 2)
               + mul(pi(3), catalan()) * Fraction(1, 16),
}


def arctan_over_x(r: int) -> Tuple[ClosedForm, Optional[ClosedForm]]:
    """(T(2b,{1}_(r-1)) form, known closed form or None) of int_0^1 arctan^r / x."""
    if r < 1:
        raise ValueError("r must be positive")
    c = Fraction((-1) ** ((r + 1) // 2) * factorial(r), 2 ** r)
    amtv = _family("T", "b2", r - 1) * c
    closed = _ARCTAN_OVER_X[r]() if r in _ARCTAN_OVER_X else None
    return amtv, closed


def _arctan_over_x_best(r: int) -> ClosedForm:
    amtv, closed = arctan_over_x(r)
    return closed if closed is not None else amtv


def amtv_amsv_form(m: int, parity: str) -> ClosedForm:
    """Right-hand side for int arctan^(2m)/x ("even") or arctan^(2m+1)/x ("odd")."""
    if m < 1:
        raise ValueError("m must be positive")
    T2 = lambda ones, bar=False: _family("T", "2", ones, bar)
    S2 = lambda ones, bar=False: _family("S", "2", ones, bar)
    t2b_plus_t2 = pi(2) * Fraction(1, 8) - catalan()

    if parity == "even":
        f = factorial(2 * m - 1)
        out = mul(t_bar_one(2 * m - 1), t2b_plus_t2)
        out += S2(2 * m - 2, True) * Fraction((-1) ** m * f, 4 ** m)
        for u in range(m):
            c = Fraction(f * (-1) ** u, factorial(2 * m - 2 * u - 1) * 2 ** (2 * u + 1))
            out += mul(_A(2 * m - 2 * u - 1), T2(2 * u)) * c
        for v in range(1, m):
            c = -Fraction(f * (-1) ** (v + 1), 2 ** (2 * v + 1) * factorial(2 * m - 2 * v - 1))
            out += mul(t_bar_one(2 * m - 2 * v - 1), T2(2 * v) + T2(2 * v - 1, True)) * c
            c = -Fraction(f * (-1) ** v, 4 ** v * factorial(2 * m - 2 * v))
            out += mul(t_bar_one(2 * m - 2 * v), S2(2 * v - 1) - S2(2 * v - 2, True)) * c
        return out
    if parity == "odd":
        f = factorial(2 * m)
        out = -mul(t_bar_one(2 * m), t2b_plus_t2)
        out -= T2(2 * m - 1, True) * Fraction((-1) ** m * f, 2 ** (2 * m + 1))
        for u in range(m):
            c = Fraction(f * (-1) ** u, factorial(2 * m - 2 * u) * 2 ** (2 * u + 1))
            out += mul(_A(2 * m - 2 * u), T2(2 * u)) * c
        for v in range(1, m):
            c = -Fraction(f * (-1) ** v, 2 ** (2 * v + 1) * factorial(2 * m - 2 * v))
            out += mul(t_bar_one(2 * m - 2 * v), T2(2 * v) + T2(2 * v - 1, True)) * c
        for v in range(m):
            c = -Fraction(f * (-1) ** v, 2 ** (2 * v + 2) * factorial(2 * m - 2 * v - 1))
            out += mul(t_bar_one(2 * m - 2 * v - 1), S2(2 * v + 1) - S2(2 * v, True)) * c
        return out
    raise ValueError("parity must be 'even' or 'odd'")


def alternating_t_form(a: int, b: int) -> ClosedForm:
    """T(1b,{1}_a,2,{1}_b) through integrals of arctan powers over x."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be non-negative")
    c = Fraction(2 ** (a + b + 2) * (-1) ** ((3 * (a + b)) // 2 + 1), factorial(a + 1) * factorial(b + 1))
    out = ClosedForm()
    for k in range(a + 2):
        term = _pi_term(a + 1 - k, Fraction(comb(a + 1, k) * (-1) ** k, 4 ** (a + 1 - k)))
        out += mul(term, _arctan_over_x_best(k + b + 1))
    return out * c


def alternating_s_form(m: int) -> ClosedForm:
    """S(1b,{1}_m) through A(1..m+1)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    c = (-1) ** ((m + 1) // 2 + 1) * 2 ** (m + 1)
    out = ClosedForm()
    for k in range(m + 1):
        weight = _pi_term(m - k, Fraction((-1) ** k, 4 ** (m - k) * factorial(k + 1) * factorial(m - k)))
        inner = _pi_term(k + 1, Fraction(1, 4 ** (k + 1))) - _A(k + 1)
        out += mul(weight, inner)
    return out * c


# ────────────────────────────────────────────────
# Numeric certification
# ────────────────────────────────────────────────
def _residual(lhs, rhs) -> mp.mpf:
    return abs(lhs.value - rhs.value)


def verify_cot_moment(p: int, upper: str, digits: int = 30) -> mp.mpf:
    lhs = quadrature_1d(("x^a*cot", p), ("0", upper), digits)
    return _residual(lhs, eval_form(cot_moment(p, upper), digits))


def verify_arctan_power(p: int, digits: int = 30) -> mp.mpf:
    lhs = quadrature_1d(("x^a*atan^b", 0, p), ("0", "1"), digits)
    return _residual(lhs, eval_form(arctan_power_integral(p), digits))


def verify_xn_arctan(n: int, m: int, variant: str, digits: int = 30) -> mp.mpf:
    """|quadrature - closed form| for one of the four x^k arctan^p identities."""
    k, p = xn_exponents(n, m, variant)
    lhs = quadrature_1d(("x^a*atan^b", k - 1, p), ("0", "1"), digits)
    res = _residual(lhs, eval_form(xn_arctan(n, m, variant), digits))
    logger.info(f"xn_arctan {variant} n={n} m={m}: residual {mp.nstr(res, 3)}")
    return res


def verify_arctan_over_x(r: int, digits: int = 30) -> mp.mpf:
    """Largest gap among quadrature, the T(2b,...) form and the closed form."""
    lhs = quadrature_1d(("atan^b/x", r), ("0", "1"), digits)
    amtv, closed = arctan_over_x(r)
    res = _residual(lhs, eval_form(amtv, digits))
    if closed is not None:
        res = max(res, _residual(lhs, eval_form(closed, digits)))
    return res


def verify_amtv_amsv_relation(m: int, parity: str, digits: int = 30) -> mp.mpf:
    r = 2 * m if parity == "even" else 2 * m + 1
    lhs = quadrature_1d(("atan^b/x", r), ("0", "1"), digits)
    res = _residual(lhs, eval_form(amtv_amsv_form(m, parity), digits))
    logger.info(f"amtv/amsv relation {parity} m={m}: residual {mp.nstr(res, 3)}")
    return res
