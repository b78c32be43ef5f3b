# src/constants.py
"""
Symbolic constants and closed forms.

A closed form is a LinComb over Monomials; a Monomial is a product of
powers of ConstantIds (pi, log 2, Catalan's constant, zeta(n), beta(n),
real or imaginary parts of Li_k(z), and M-values).
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from src.core import Index, LinComb, parse_symbol

_ORDER = {"pi": 0, "log2": 1, "catalan": 2, "zeta": 3, "beta": 4, "li": 5, "M": 6}


@dataclass(frozen=True)
class ConstantId:
    name: str
    args: tuple = ()

    def __post_init__(self):
        if self.name not in _ORDER:
            raise ValueError(f"unknown constant {self.name!r}")

    @property
    def weight(self) -> int:
        if self.name in ("pi", "log2"):
            return 1
        if self.name == "catalan":
            return 2
        if self.name in ("zeta", "beta", "li"):
            return self.args[0]
        return self.args[0].weight

    def sort_key(self):
        return (_ORDER[self.name], self.args[0].sort_key() if self.name == "M" else tuple(map(str, self.args)))

    def __str__(self):
        if self.name == "catalan":
            return "G"
        if self.name in ("pi", "log2"):
            return self.name
        if self.name in ("zeta", "beta"):
            return f"{self.name}({self.args[0]})"
        if self.name == "li":
            k, re_z, im_z, part = self.args
            return f"{part.capitalize()}Li{k}({re_z}{'+' if im_z >= 0 else '-'}{abs(im_z)}*I)"
        return str(self.args[0])


@dataclass(frozen=True)
class Monomial:
    factors: Tuple[Tuple[ConstantId, int], ...] = ()

    @classmethod
    def of(cls, *pairs) -> "Monomial":
        merged = {}
        for atom, e in pairs:
            merged[atom] = merged.get(atom, 0) + e
        return cls(tuple(sorted(((a, e) for a, e in merged.items() if e), key=lambda p: p[0].sort_key())))

    @property
    def weight(self) -> int:
        return sum(a.weight * e for a, e in self.factors)

    @property
    def is_one(self) -> bool:
        return not self.factors

    def sort_key(self):
        return (self.weight, tuple((a.sort_key(), e) for a, e in self.factors))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial.of(*(self.factors + other.factors))

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(str(a) if e == 1 else f"{a}^{e}" for a, e in self.factors)


ONE_MONOMIAL = Monomial()

# rational combination of Monomials
ClosedForm = LinComb


# ────────────────────────────────────────────────
# Closed-form builders
# ────────────────────────────────────────────────
def constant(name: str, *args, coeff=1) -> LinComb:
    return LinComb.of(Monomial.of((ConstantId(name, args), 1)), coeff)


def one(coeff=1) -> LinComb:
    return LinComb.of(ONE_MONOMIAL, coeff)


def pi(power: int = 1) -> LinComb:
    return LinComb.of(Monomial.of((ConstantId("pi"), power))) if power else one()


def log2() -> LinComb:
    return constant("log2")


def catalan() -> LinComb:
    return constant("catalan")


def zeta(n: int) -> LinComb:
    if n < 2:
        raise ValueError("zeta(n) needs n >= 2")
    return constant("zeta", n)


def beta(n: int) -> LinComb:
    """Dirichlet beta; beta(1) = pi/4 and beta(2) is Catalan's constant."""
    if n == 1:
        return pi() * Fraction(1, 4)
    if n == 2:
        return catalan()
    return constant("beta", n)


def polylog_part(k: int, z: complex, part: str) -> LinComb:
    """Real or imaginary part of Li_k(z) for a Gaussian rational z."""
    re_z, im_z = (Fraction(z.real).limit_denominator(10 ** 6), Fraction(z.imag).limit_denominator(10 ** 6)) \
        if isinstance(z, complex) else (Fraction(z), Fraction(0))
    if part not in ("re", "im"):
        raise ValueError("part must be 're' or 'im'")
    return constant("li", k, re_z, im_z, part)


def mvalue(i: Index, coeff=1) -> LinComb:
    if not i.comps:
        return one(coeff)
    return constant("M", i, coeff=coeff)


def family_value(text: str) -> LinComb:
    """An M or family symbol as a closed form, with its specialization factor."""
    c, idx = parse_symbol(text)
    return mvalue(idx, c)


def mul(a: LinComb, b: LinComb) -> LinComb:
    return a.product(b, lambda m1, m2: LinComb.of(m1 * m2))


def power(a: LinComb, n: int) -> LinComb:
    out = one()
    for _ in range(n):
        out = mul(out, a)
    return out


def form_weight(form: LinComb) -> set:
    return {m.weight for m in form.basis()}


def form_atoms(form: LinComb) -> set:
    return {a for m in form.basis() for a, _ in m.factors}


# ────────────────────────────────────────────────
# Text
# ────────────────────────────────────────────────
_ATOM = re.compile(
    r"(?P<pi>pi)|(?P<log2>log2)|(?P<catalan>G|catalan)"
    r"|(?P<zeta>zeta)\((?P<zn>\d+)\)|(?P<beta>beta)\((?P<bn>\d+)\)"
    r"|(?P<part>Re|Im)?Li(?P<lk>\d+)\((?P<larg>1/2|\(1\+I\)/2)\)"
    r"|(?P<sym>[MZtTS]\([^()]*\))"
)
_RATIONAL = re.compile(r"\d+(/\d+)?")


def split_terms(text: str):
    """Split at top-level + and -; yields (sign, term_text)."""
    depth, start, sign = 0, 0, 1
    body = text.strip()
    out = []
    for pos, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            chunk = body[start:pos].strip()
            if chunk:
                out.append((sign, chunk))
            elif pos > 0 and body[:pos].strip():
                raise ValueError(f"dangling operator at position {pos}: {text!r}")
            sign = 1 if ch == "+" else -1
            start = pos + 1
    chunk = body[start:].strip()
    if not chunk:
        raise ValueError(f"empty term in {text!r}")
    out.append((sign, chunk))
    return out


def split_coefficient(term: str):
    """``7/2*zeta(3)`` -> (Fraction(7, 2), "zeta(3)"); a bare rational gives (q, "")."""
    head, _, rest = term.partition("*")
    if _RATIONAL.fullmatch(head.strip()):
        return Fraction(head.strip()), rest.strip()
    return Fraction(1), term.strip()


def parse_form(text: str) -> LinComb:
    """Parse sums such as ``pi*G - 7/2*zeta(3)`` into a closed form."""
    form = LinComb()
    for sign, term in split_terms(text):
        coeff, rest = split_coefficient(term)
        form += (parse_monomial(rest) if rest else one()) * (sign * coeff)
    return form


def parse_monomial(text: str) -> LinComb:
    """Parse products such as ``pi^2*log2`` or ``zeta(3)*M(b1)``."""
    form = one()
    for factor in text.split("*"):
        factor = factor.strip()
        base, _, exp = factor.partition("^")
        m = _ATOM.fullmatch(base.strip())
        if not m:
            raise ValueError(f"unknown constant {factor!r}")
        if m.group("pi"):
            atom = pi()
        elif m.group("log2"):
            atom = log2()
        elif m.group("catalan"):
            atom = catalan()
        elif m.group("zeta"):
            atom = zeta(int(m.group("zn")))
        elif m.group("beta"):
            atom = beta(int(m.group("bn")))
        elif m.group("lk"):
            z = Fraction(1, 2) if m.group("larg") == "1/2" else complex(0.5, 0.5)
            atom = polylog_part(int(m.group("lk")), z, (m.group("part") or "re").lower())
        else:
            atom = family_value(m.group("sym"))
        form = mul(form, power(atom, int(exp) if exp else 1))
    return form
