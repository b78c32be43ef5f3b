# src/numerics.py
"""
Arbitrary precision evaluation.

Depth-one values use closed forms. Deeper sums are summed term by term with
nested partial sums; partial sums at multiples of four are fitted by
u^k * log(N)^l (u = N_ref/N) and the constant term is read off. The
truncation point doubles until two levels agree to the requested digits.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Tuple

import mpmath as mp

from src import config
from src.core import Index, LinComb
from src.words import CmzvIndex, Word, q_map

logger = logging.getLogger("ammv")

SAMPLE_RATIO = 16
MAX_FIT_TERMS = 64


class BudgetExceeded(RuntimeError):
    pass


class PrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class PrecReal:
    value: mp.mpf
    err: mp.mpf
    digits: int

    @property
    def ok(self) -> bool:
        return self.err <= mp.mpf(10) ** (-self.digits)

    def __str__(self):
        return f"{mp.nstr(self.value, self.digits)} +- {mp.nstr(self.err, 3)}"


@dataclass(frozen=True)
class PrecComplex:
    real: PrecReal
    imag: PrecReal

    def __str__(self):
        return f"({self.real}) + I*({self.imag})"


def check_budget(digits: int, allow_high_precision: bool = False):
    if digits < 1:
        raise ValueError("digits must be positive")
    if digits > config.MAX_DIGITS and not (allow_high_precision or config.ALLOW_HIGH_PRECISION):
        raise BudgetExceeded(
            f"{digits} digits requested, ceiling is {config.MAX_DIGITS}; pass the high precision override"
        )


def _exact(value, digits: int) -> PrecReal:
    return PrecReal(+value, mp.mpf(10) ** (-(digits + 10)), digits)


def working_dps(digits: int, log_power: int) -> int:
    return 2 * digits + 20 + 10 * log_power


# ────────────────────────────────────────────────
# Constants
# ────────────────────────────────────────────────
def dirichlet_beta(s: int):
    if s == 1:
        return mp.pi / 4
    return (mp.zeta(s, mp.mpf(1) / 4) - mp.zeta(s, mp.mpf(3) / 4)) / mp.mpf(4) ** s


def eta(s: int):
    return mp.log(2) if s == 1 else mp.altzeta(s)


def _depth_one(c) -> mp.mpf:
    s, sigma, eps = c.s, c.sigma, c.eps
    if eps == 1:
        if sigma == 1:
            return mp.mpf(2) ** (1 - s) * mp.zeta(s)
        return -mp.mpf(2) ** (1 - s) * eta(s)
    if sigma == 1:
        return 2 * (1 - mp.mpf(2) ** (-s)) * mp.zeta(s)
    return -2 * dirichlet_beta(s)


def eval_constant(cid, digits: int) -> PrecReal:
    """Value of a ConstantId (see constants.py)."""
    if cid.name == "M":
        return eval_index(cid.args[0], digits)
    with mp.workdps(digits + 15):
        if cid.name == "pi":
            v = mp.pi
        elif cid.name == "log2":
            v = mp.log(2)
        elif cid.name == "catalan":
            v = mp.catalan
        elif cid.name == "zeta":
            v = mp.zeta(cid.args[0])
        elif cid.name == "beta":
            v = dirichlet_beta(cid.args[0])
        elif cid.name == "li":
            k, re_z, im_z, part = cid.args
            z = mp.polylog(k, mp.mpc(mp.mpf(re_z.numerator) / re_z.denominator,
                                     mp.mpf(im_z.numerator) / im_z.denominator))
            v = mp.re(z) if part == "re" else mp.im(z)
        else:
            raise ValueError(f"no evaluator for {cid}")
        return _exact(v, digits)


def eval_form(form: LinComb, digits: int) -> PrecReal:
    """Evaluate a closed form; the error is propagated from every atom."""
    total = mp.mpf(0)
    err = mp.mpf(0)
    with mp.workdps(digits + 15):
        for mono, coeff in form.items():
            c = mp.mpf(coeff.numerator) / coeff.denominator
            value, upper = mp.mpf(1), mp.mpf(1)
            for atom, e in mono.factors:
                a = eval_constant(atom, digits)
                value *= a.value ** e
                upper *= (abs(a.value) + a.err) ** e
            total += c * value
            err += abs(c) * (upper - abs(value))
        return PrecReal(+total, err + mp.mpf(10) ** (-(digits + 10)), digits)


# ────────────────────────────────────────────────
# Partial sums
# ────────────────────────────────────────────────
def _mmv_weights(c):
    """Multiplier of 1/m^s for m = 0, 1, 2, 3 mod 4."""
    table = []
    for r in range(4):
        if (r % 2 == 0) != (c.eps == 1):
            table.append(0)
            continue
        if c.sigma == 1:
            table.append(2)
        else:
            # sigma^((2m+1-eps)/4) with sigma = -1
            table.append(-2 if r in (1, 2) else 2)
    return table


_PHASES = (1, 1j, -1, -1j)


def _cmzv_weights(e: int):
    return [_PHASES[(e * r) % 4] for r in range(4)]


class _Sweep:
    """Nested partial sums advanced one summation variable at a time."""

    def __init__(self, weights, exponents, complex_valued: bool = False):
        self.exponents = exponents
        if complex_valued:
            self.weights = [[mp.mpc(w) if w else 0 for w in row] for row in weights]
            zero = mp.mpc(0)
        else:
            self.weights = [[mp.mpf(w) if w else 0 for w in row] for row in weights]
            zero = mp.mpf(0)
        self.state = [zero] * len(exponents) + [mp.mpf(1)]
        self.m = 0
        self.samples = {}

    def advance(self, n_top: int):
        S = self.state
        r = len(self.exponents)
        weights, exps = self.weights, self.exponents
        for m in range(self.m + 1, n_top + 1):
            k = m % 4
            for j in range(r):
                w = weights[j][k]
                if w:
                    S[j] += w * S[j + 1] / m ** exps[j]
            if k == 0:
                self.samples[m] = S[0]
        self.m = n_top


def _pick_samples(n_top: int, wanted: int):
    lo = max(4, n_top // SAMPLE_RATIO)
    lo += (-lo) % 4
    candidates = list(range(lo, n_top + 1, 4))
    if len(candidates) <= wanted:
        return candidates
    ratio = mp.mpf(n_top) / lo
    picked = []
    pos = 0
    for i in range(wanted):
        target = lo * ratio ** (mp.mpf(i) / (wanted - 1))
        while pos < len(candidates) and (candidates[pos] < target - 2 or (picked and candidates[pos] <= picked[-1])):
            pos += 1
        if pos >= len(candidates):
            return candidates[-wanted:]
        picked.append(candidates[pos])
    return picked


def _fit_constant(points, values, log_power: int):
    """Constant term of the least-degree u^k log^l model through the points."""
    n_ref = mp.mpf(points[0])
    rows = []
    K = (len(points) - 1) // (log_power + 1)
    for N in points:
        u = n_ref / N
        lam = mp.log(N / n_ref)
        row = [mp.mpf(1)]
        for k in range(1, K + 1):
            uk = u ** k
            for l in range(log_power + 1):
                row.append(uk * lam ** l)
        rows.append(row)
    A = mp.matrix(rows)
    b = mp.matrix([[v] for v in values])
    return mp.lu_solve(A, b)[0]


def _extrapolate(sweep: _Sweep, digits: int, log_power: int, complex_valued: bool,
                 label: str, n0: int = None, max_level: int = None):
    n0 = n0 or config.N0
    max_level = config.MAX_LEVEL if max_level is None else max_level
    K = max(6, (2 * digits) // 3 + 4)
    wanted = min(MAX_FIT_TERMS, 1 + K * (log_power + 1))
    target = mp.mpf(10) ** (-digits)
    prev = best = None
    best_err = mp.inf
    level = 0
    for level in range(max_level + 1):
        n_top = n0 * 2 ** level
        sweep.advance(n_top)
        points = _pick_samples(n_top, wanted)
        usable = 1 + ((len(points) - 1) // (log_power + 1)) * (log_power + 1)
        if usable < log_power + 2:
            continue
        points = points[len(points) - usable:]
        values = [sweep.samples[N] for N in points]
        if complex_valued:
            v = mp.mpc(
                _fit_constant(points, [mp.re(x) for x in values], log_power),
                _fit_constant(points, [mp.im(x) for x in values], log_power),
            )
        else:
            v = _fit_constant(points, values, log_power)
        if prev is not None:
            err = 10 * abs(v - prev)
            if err < best_err:
                best, best_err = v, err
            if err <= target:
                break
        prev = v
    if best is None:
        best, best_err = prev, mp.inf
    if best_err > target:
        logger.warning(f"{label}: reached {mp.nstr(best_err, 3)} after level {level}, wanted 1e-{digits}")
    else:
        logger.info(f"{label}: level {level}, err {mp.nstr(best_err, 3)}")
    return best, best_err


# ────────────────────────────────────────────────
# Public evaluators
# ────────────────────────────────────────────────
@lru_cache(maxsize=100_000)
def _eval_index(i: Index, digits: int) -> PrecReal:
    if not i.comps:
        return _exact(mp.mpf(1), digits)
    if i.depth == 1:
        with mp.workdps(digits + 15):
            return _exact(_depth_one(i.comps[0]), digits)
    L = i.log_power()
    with mp.workdps(working_dps(digits, L)):
        sweep = _Sweep([_mmv_weights(c) for c in i.comps], [c.s for c in i.comps])
        value, err = _extrapolate(sweep, digits, L, False, str(i))
        return PrecReal(value, err, digits)


def eval_index(i: Index, digits: int = None, allow_high_precision: bool = False) -> PrecReal:
    digits = digits or config.DEFAULT_DIGITS
    check_budget(digits, allow_high_precision)
    if not i.admissible:
        raise ValueError(f"{i} is not admissible; regularize it first")
    return _eval_index(i, digits)


def eval_word(w: Word, digits: int = None, allow_high_precision: bool = False) -> PrecReal:
    sign, idx = q_map(w)
    v = eval_index(idx, digits, allow_high_precision)
    return PrecReal(sign * v.value, v.err, v.digits)


def _cmzv_depth_one(k: int, e: int):
    if e == 0:
        return mp.mpc(mp.zeta(k))
    if e == 2:
        return mp.mpc(-eta(k))
    im = dirichlet_beta(k)
    return mp.mpc(-mp.mpf(2) ** (-k) * eta(k), im if e == 1 else -im)


@lru_cache(maxsize=100_000)
def _eval_cmzv(ci: CmzvIndex, digits: int) -> PrecComplex:
    tiny = mp.mpf(10) ** (-(digits + 10))
    if len(ci.k) == 1:
        with mp.workdps(digits + 15):
            v = _cmzv_depth_one(ci.k[0], ci.z[0])
            return PrecComplex(PrecReal(mp.re(v), tiny, digits), PrecReal(mp.im(v), tiny, digits))
    L = sum(1 for k, e in zip(ci.k[1:], ci.z[1:]) if k == 1 and e == 0)
    with mp.workdps(working_dps(digits, L)):
        sweep = _Sweep([_cmzv_weights(e) for e in ci.z], list(ci.k), complex_valued=True)
        value, err = _extrapolate(sweep, digits, L, True, str(ci))
        return PrecComplex(PrecReal(mp.re(value), err, digits), PrecReal(mp.im(value), err, digits))


def eval_cmzv(ci: CmzvIndex, digits: int = None, allow_high_precision: bool = False) -> PrecComplex:
    digits = digits or config.DEFAULT_DIGITS
    check_budget(digits, allow_high_precision)
    if ci.k[0] == 1 and ci.z[0] == 0:
        raise ValueError(f"{ci} diverges")
    return _eval_cmzv(ci, digits)


def eval_cmzv_combination(comb, digits: int = None) -> PrecReal:
    """Real value of sum (a + b*I) * Li over a CmzvCombination."""
    digits = digits or config.DEFAULT_DIGITS
    total, err = mp.mpf(0), mp.mpf(0)
    with mp.workdps(digits + 15):
        for part, lc in (("re", comb.real), ("im", comb.imag)):
            for ci, c in lc.items():
                v = eval_cmzv(ci, digits)
                x = v.real if part == "re" else v.imag
                q = mp.mpf(c.numerator) / c.denominator
                total += q * x.value if part == "re" else -q * x.value
                err += abs(q) * x.err
        return PrecReal(+total, err, digits)


class IntegrandError(ValueError):
    pass


# name -> (exponent names, builder of the integrand for those exponents)
INTEGRANDS = {
    "x^a*atan^b": (("a", "b"), lambda a, b: lambda x: x ** a * mp.atan(x) ** b),
    "atan^b/x": (("b",), lambda b: lambda x: mp.atan(x) ** b / x),
    "x^a*cot": (("a",), lambda a: lambda x: x ** a * mp.cot(x)),
}
# last exponent must reach this for the integrand to stay bounded at 0
_MIN_LAST_EXPONENT = {"atan^b/x": 1, "x^a*cot": 1}

# endpoint tags in increasing order, resolved inside the working precision
LIMITS = {
    "0": lambda: mp.mpf(0),
    "pi/4": lambda: mp.pi / 4,
    "1": lambda: mp.mpf(1),
    "pi/2": lambda: mp.pi / 2,
}


def integrand(spec: Tuple) -> Callable:
    """Build a catalogue integrand from ``(name, *exponents)``."""
    name, exponents = spec[0], tuple(spec[1:])
    if name not in INTEGRANDS:
        raise IntegrandError(f"non-catalogue integrand {name!r}; known: {', '.join(INTEGRANDS)}")
    params, build = INTEGRANDS[name]
    if len(exponents) != len(params) or any(not isinstance(e, int) or e < 0 for e in exponents):
        raise IntegrandError(f"{name} takes nonnegative integer exponents ({', '.join(params)}), got {exponents}")
    if exponents[-1] < _MIN_LAST_EXPONENT.get(name, 0):
        raise IntegrandError(f"{name} is unbounded at 0 with {params[-1]}={exponents[-1]}")
    return build(*exponents)


def quadrature_1d(spec: Tuple, interval: Tuple[str, str] = ("0", "1"), digits: int = None) -> PrecReal:
    """Tanh-sinh quadrature of a catalogue integrand over a subinterval of [0, pi/2].

    Raises IntegrandError for anything outside the catalogue and PrecisionError
    when mpmath's error estimate stays above 10^-digits.
    """
    digits = digits or config.DEFAULT_DIGITS
    check_budget(digits)
    f = integrand(spec)
    lower, upper = interval
    for tag in interval:
        if tag not in LIMITS:
            raise IntegrandError(f"unknown endpoint {tag!r}; expected one of {', '.join(LIMITS)}")
    if list(LIMITS).index(lower) >= list(LIMITS).index(upper):
        raise IntegrandError(f"empty interval [{lower}, {upper}]")
    with mp.workdps(digits + 15):
        a, b = LIMITS[lower](), LIMITS[upper]()
        value, err = mp.quad(f, [a, b], method="tanh-sinh", error=True)
        if err > mp.mpf(10) ** (-digits):
            raise PrecisionError(f"quadrature of {spec[0]} on [{lower}, {upper}] stalled at error {mp.nstr(err, 3)}")
        return PrecReal(+value, max(mp.mpf(err), mp.mpf(10) ** (-(digits + 10))), digits)


# ────────────────────────────────────────────────
# Oracles
# ────────────────────────────────────────────────
def truncated_oracle(i: Index, n: int) -> Fraction:
    """Exact partial sum of M(i) over m_1 <= n."""
    weights = [_mmv_weights(c) for c in i.comps]
    S = [Fraction(0)] * i.depth + [Fraction(1)]
    for m in range(1, n + 1):
        for j, c in enumerate(i.comps):
            w = weights[j][m % 4]
            if w:
                S[j] += w * S[j + 1] / Fraction(m) ** c.s
    return S[0]


def tail_bound(i: Index, n: int) -> Optional[mp.mpf]:
    """Upper bound on |M(i) - partial sum at n| when s_1 >= 2, else None."""
    if not i.comps or i.comps[0].s < 2 or n < 3:
        return None
    s1 = i.comps[0].s
    a = sum(1 for c in i.comps[1:] if c.s == 1)
    if mp.log(n) + 1 <= mp.mpf(a) / s1:
        return None
    const = mp.mpf(2) ** (a + 1)
    for c in i.comps[1:]:
        if c.s >= 2:
            const *= 2 * mp.zeta(c.s)
    Y = mp.log(n)
    integral = mp.exp(-(s1 - 1) * Y) * mp.fsum(
        mp.factorial(a) / mp.factorial(a - k) * (1 + Y) ** (a - k) / mp.mpf(s1 - 1) ** (k + 1)
        for k in range(a + 1)
    )
    return const * integral
