# src/regularization.py
"""
Regularized values of divergent words and indices as polynomials in T,
the comparison map rho between the two regularizations, and the
regularized double shuffle relations they produce.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List

from src.algebra import Relation, finite_dbsf, make_relation, shuffle, stuffle, stuffle_lincomb
from src.constants import ONE_MONOMIAL, ConstantId, Monomial
from src.core import Component, Index, LinComb
from src.words import Letter, Word, p_map, q_map

logger = logging.getLogger("ammv")

LOG2 = Monomial.of((ConstantId("log2"), 1))


class RegularizationError(ValueError):
    pass


@dataclass(frozen=True)
class RegTerm:
    """A constant monomial times an M-value."""
    const: Monomial
    index: Index

    @property
    def weight(self) -> int:
        return self.const.weight + self.index.weight

    def sort_key(self):
        return (self.weight, self.const.sort_key(), self.index.sort_key())

    def __str__(self):
        if self.const.is_one:
            return str(self.index) if self.index.comps else "1"
        if not self.index.comps:
            return str(self.const)
        return f"{self.const}*{self.index}"


def _term_product(a: RegTerm, b: RegTerm) -> LinComb:
    const = a.const * b.const
    return LinComb([(RegTerm(const, i), c) for i, c in stuffle(a.index, b.index).items()])


class TPoly:
    """Polynomial in T with RegTerm combinations as coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, LinComb] = None):
        self.coeffs = {d: lc for d, lc in (coeffs or {}).items() if lc}

    @classmethod
    def term(cls, const: Monomial = ONE_MONOMIAL, index: Index = Index(), coeff=1, degree: int = 0):
        return cls({degree: LinComb.of(RegTerm(const, index), coeff)})

    @classmethod
    def one(cls):
        return cls.term()

    @classmethod
    def T(cls):
        return cls.term(degree=1)

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def __getitem__(self, d: int) -> LinComb:
        return self.coeffs.get(d, LinComb())

    def __add__(self, other: "TPoly") -> "TPoly":
        out = dict(self.coeffs)
        for d, lc in other.coeffs.items():
            out[d] = out.get(d, LinComb()) + lc
        return TPoly(out)

    def __neg__(self) -> "TPoly":
        return TPoly({d: -lc for d, lc in self.coeffs.items()})

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def __mul__(self, other) -> "TPoly":
        if not isinstance(other, TPoly):
            return TPoly({d: lc * other for d, lc in self.coeffs.items()})
        out: Dict[int, LinComb] = {}
        for d1, a in self.coeffs.items():
            for d2, b in other.coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, LinComb()) + a.product(b, _term_product)
        return TPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TPoly) and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs, reverse=True):
            lead = "" if d == 0 else ("T" if d == 1 else f"T^{d}")
            parts.append(f"{lead}*({self.coeffs[d]!r})" if lead else f"({self.coeffs[d]!r})")
        return " + ".join(parts)


def _t_shift(c: int) -> TPoly:
    """T + c*log2."""
    return TPoly.T() + TPoly.term(LOG2, coeff=c)


def letter_value(a: Letter) -> TPoly:
    if a == Letter(1, 1):
        return _t_shift(-1)
    if a == Letter(1, -1):
        return _t_shift(1)
    raise RegularizationError(f"{a} is not a divergent letter")


def component_value(c: Component) -> TPoly:
    if not c.divergent:
        raise RegularizationError(f"{c} is not a divergent component")
    return TPoly.T() if c.eps == 1 else _t_shift(2)


# ────────────────────────────────────────────────
# Regularized evaluations
# ────────────────────────────────────────────────
@lru_cache(maxsize=None)
def shuffle_reg(w: Word) -> TPoly:
    """Shuffle-regularized value of a word that does not end in w0."""
    if not w.letters:
        return TPoly.one()
    if w.letters[-1].is_zero:
        raise RegularizationError(f"{w} ends in w0")
    k = w.divergent_prefix()
    if k == 0:
        sign, idx = q_map(w)
        return TPoly.term(index=idx, coeff=sign)
    y = w.letters[0]
    if any(a != y for a in w.letters[1:k]):
        return _split_shuffle_reg(w, k)
    rest = Word(w.letters[1:])
    out = letter_value(y) * shuffle_reg(rest)
    for w2, c in (shuffle(Word((y,)), rest) - LinComb.of(w, k)).items():
        assert w2.divergent_prefix() < k, f"no progress on {w2}"
        out = out - shuffle_reg(w2) * c
    return out * Fraction(1, k)


@lru_cache(maxsize=None)
def stuffle_reg(i: Index) -> TPoly:
    """Stuffle-regularized value of any index."""
    k = i.divergent_prefix()
    if k == 0:
        return TPoly.term(index=i)
    a = i.comps[0]
    if any(c != a for c in i.comps[1:k]):
        return _split_stuffle_reg(i, k)
    rest = Index(i.comps[1:])
    out = component_value(a) * stuffle_reg(rest)
    for i2, c in (stuffle(Index((a,)), rest) - LinComb.of(i, k)).items():
        assert i2.divergent_prefix() < k, f"no progress on {i2}"
        out = out - stuffle_reg(i2) * c
    return out * Fraction(1, k)


# ────────────────────────────────────────────────
# Mixed divergent prefixes
# ────────────────────────────────────────────────
def shift_log2(p: TPoly, c: int = 1) -> TPoly:
    """p with T replaced by T + c*log2."""
    step = _t_shift(c)
    out = TPoly()
    for d, lc in p.coeffs.items():
        term = TPoly({0: lc})
        for _ in range(d):
            term = term * step
        out = out + term
    return out


def even_expansion(u: Index) -> LinComb:
    """
    A run of divergent components rewritten with all-even components.

    On every m the divergent weight (1 + eps (-1)^m)/m splits into 1/m and
    eps (-1)^m/m. Sums over all m are all-even M-values of the same depth,
    so the run becomes a combination of indices built from (1) and (b1)
    whose only divergent component is the even one.
    """
    out = LinComb.of(Index())
    for c in u.comps:
        if not c.divergent:
            raise RegularizationError(f"{c} is not a divergent component")
        slot = LinComb([(Index.of((1, 1, 1)), 1), (Index.of((1, -1, 1)), c.eps)])
        out = out.product(slot, lambda a, b: LinComb.of(a + b))
    return out


@lru_cache(maxsize=None)
def _pure_stuffle_reg(u: Index) -> TPoly:
    # truncation at N in m is truncation at 2N for the all-even indices, so T moves by log2
    out = TPoly()
    for v, c in even_expansion(u).items():
        out = out + stuffle_reg(v) * c
    return shift_log2(out)


def _split_stuffle_reg(i: Index, k: int) -> TPoly:
    """Stuffle-regularize a mixed divergent run u, then attach the tail t through u * t."""
    u, t = Index(i.comps[:k]), Index(i.comps[k:])
    if not t.comps:
        return _pure_stuffle_reg(u)
    out = _pure_stuffle_reg(u) * TPoly.term(index=t)
    for i2, c in (stuffle(u, t) - LinComb.of(i)).items():
        assert i2.divergent_prefix() < k, f"no progress on {i2}"
        out = out - stuffle_reg(i2) * c
    return out


def _split_shuffle_reg(w: Word, k: int) -> TPoly:
    """Same split for words; a bare mixed run is read through rho from its index."""
    u, t = Word(w.letters[:k]), Word(w.letters[k:])
    if not t.letters:
        sign, idx = q_map(w, allow_divergent=True)
        return rho(stuffle_reg(idx)) * sign
    out = shuffle_reg(u) * shuffle_reg(t)
    for w2, c in (shuffle(u, t) - LinComb.of(w)).items():
        assert w2.divergent_prefix() < k, f"no progress on {w2}"
        out = out - shuffle_reg(w2) * c
    return out


def shuffle_reg_lincomb(lc: LinComb) -> TPoly:
    out = TPoly()
    for w, c in lc.items():
        out = out + shuffle_reg(w) * c
    return out


def stuffle_reg_lincomb(lc: LinComb) -> TPoly:
    out = TPoly()
    for i, c in lc.items():
        out = out + stuffle_reg(i) * c
    return out


# ────────────────────────────────────────────────
# rho
# ────────────────────────────────────────────────
@lru_cache(maxsize=None)
def _gamma_coeff(j: int) -> LinComb:
    """u^j coefficient of exp(sum_{n>=2} (-1)^n zeta(n) u^n / n)."""
    if j == 0:
        return LinComb.of(ONE_MONOMIAL)
    out = LinComb()
    for n in range(2, j + 1):
        z = LinComb.of(Monomial.of((ConstantId("zeta", (n,)), 1)), Fraction((-1) ** n, j))
        out = out + z.product(_gamma_coeff(j - n), lambda a, b: LinComb.of(a * b))
    return out


@lru_cache(maxsize=None)
def rho_power(n: int) -> TPoly:
    """rho(T^n) = n! sum_j a_j (T - log2)^(n-j) / (n-j)!."""
    out = TPoly()
    for j in range(n + 1):
        a = _gamma_coeff(j)
        if not a:
            continue
        m = n - j
        scale = Fraction(factorial(n), factorial(m))
        shifted = TPoly()
        for l in range(m + 1):
            log_part = Monomial.of((ConstantId("log2"), m - l)) if m > l else ONE_MONOMIAL
            shifted = shifted + TPoly.term(log_part, coeff=comb(m, l) * (-1) ** (m - l), degree=l)
        coeff = TPoly({0: LinComb([(RegTerm(mono, Index()), c) for mono, c in a.items()])})
        out = out + coeff * shifted * scale
    return out


def rho(p: TPoly) -> TPoly:
    out = TPoly()
    for d, lc in p.coeffs.items():
        out = out + rho_power(d) * TPoly({0: lc})
    return out


# ────────────────────────────────────────────────
# Relations
# ────────────────────────────────────────────────
def constant_to_index(const: Monomial, max_weight: int = None) -> LinComb:
    """log2 -> -M(b1), zeta(n) -> 2^(n-1) M(n), products by stuffle."""
    if max_weight is not None and const.weight > max_weight:
        raise RegularizationError(f"{const} exceeds weight {max_weight}")
    out = LinComb.of(Index())
    for atom, e in const.factors:
        if atom.name == "log2":
            factor = LinComb.of(Index.of((1, -1, 1)), -1)
        elif atom.name == "zeta":
            n = atom.args[0]
            factor = LinComb.of(Index.of((n, 1, 1)), 2 ** (n - 1))
        else:
            raise RegularizationError(f"{atom} has no index expansion")
        for _ in range(e):
            out = stuffle_lincomb(out, factor)
    return out


def expand_terms(lc: LinComb, max_weight: int = None) -> LinComb:
    out = LinComb()
    for term, c in lc.items():
        out = out + stuffle_lincomb(constant_to_index(term.const, max_weight), LinComb.of(term.index)) * c
    return out


def _words_of(lc: LinComb) -> LinComb:
    out = LinComb()
    for i, c in lc.items():
        sign, w = p_map(i, allow_divergent=True)
        out = out + LinComb.of(w, sign * c)
    return out


def _emit(poly: TPoly, weight: int, label: str) -> List[Relation]:
    out = []
    for d in sorted(poly.coeffs):
        terms = expand_terms(poly[d], weight)
        if terms:
            out.append(make_relation(terms, "reg-dbsf", note=f"{label} T^{d}"))
    return out


def reg_dbsf(i: Index, j: Index) -> List[Relation]:
    """Relations from comparing both regularizations on carriers built from i and j."""
    weight = i.weight + j.weight
    if weight < 2:
        raise ValueError("combined weight must be at least 2")
    if i.admissible:
        rel = finite_dbsf(i, j)
        return [rel] if rel.terms else []
    if j.comps and not j.admissible:
        raise ValueError(f"{j} must be admissible")

    carriers = {"concat": lambda: _concat_carrier(i + j)}
    if j.comps:
        carriers["product"] = lambda: _product_carrier(i, j)
        carriers["cross"] = lambda: _cross_carrier(i, j)

    seen, out = set(), []
    for name, build in carriers.items():
        try:
            poly = build()
        except RegularizationError as e:
            logger.warning(f"reg-dbsf {i} | {j} ({name}) skipped: {e}")
            continue
        for rel in _emit(poly, weight, f"{i} | {j} {name}"):
            if rel.key() not in seen:
                seen.add(rel.key())
                out.append(rel)
    return out


def _concat_carrier(c: Index) -> TPoly:
    sign, w = p_map(c, allow_divergent=True)
    return shuffle_reg(w) * sign - rho(stuffle_reg(c))


def _shuffled_words(i: Index, j: Index) -> LinComb:
    si, wi = p_map(i, allow_divergent=True)
    sj, wj = p_map(j, allow_divergent=True)
    return shuffle(wi, wj) * (si * sj)


def _product_carrier(i: Index, j: Index) -> TPoly:
    return shuffle_reg_lincomb(_shuffled_words(i, j)) - rho(stuffle_reg_lincomb(stuffle(i, j)))


def _cross_carrier(i: Index, j: Index) -> TPoly:
    return shuffle_reg_lincomb(_shuffled_words(i, j)) - shuffle_reg_lincomb(_words_of(stuffle(i, j)))
