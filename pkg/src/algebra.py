# src/algebra.py
"""Shuffle and stuffle products, finite double shuffle relations."""
import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Tuple

from src.core import Component, Index, LinComb, parse_index
from src.words import Word, p_map, q_image

PROVENANCES = ("finite-dbsf", "reg-dbsf", "duality", "product-expansion", "pslq")


# ────────────────────────────────────────────────
# Products
# ────────────────────────────────────────────────
@lru_cache(maxsize=200_000)
def _shuffle_words(u: Tuple, v: Tuple) -> LinComb:
    if not u:
        return LinComb.of(Word(v))
    if not v:
        return LinComb.of(Word(u))
    left = _shuffle_words(u[1:], v).map(lambda w: LinComb.of(Word((u[0],) + w.letters)))
    right = _shuffle_words(u, v[1:]).map(lambda w: LinComb.of(Word((v[0],) + w.letters)))
    return left + right


def shuffle(u: Word, v: Word) -> LinComb:
    return _shuffle_words(u.letters, v.letters)


def shuffle_lincomb(a: LinComb, b: LinComb) -> LinComb:
    return a.product(b, shuffle)


def _merge(a: Component, b: Component) -> Component:
    return Component(a.s + b.s, a.sigma * b.sigma, a.eps)


@lru_cache(maxsize=200_000)
def _stuffle_comps(u: Tuple, v: Tuple) -> LinComb:
    if not u:
        return LinComb.of(Index(v))
    if not v:
        return LinComb.of(Index(u))
    out = _stuffle_comps(u[1:], v).map(lambda i: LinComb.of(Index((u[0],) + i.comps)))
    out += _stuffle_comps(u, v[1:]).map(lambda i: LinComb.of(Index((v[0],) + i.comps)))
    if u[0].eps == v[0].eps:
        head = _merge(u[0], v[0])
        out += 2 * _stuffle_comps(u[1:], v[1:]).map(lambda i: LinComb.of(Index((head,) + i.comps)))
    return out


def stuffle(i: Index, j: Index) -> LinComb:
    """Series product: merging needs equal parity and carries the factor 2."""
    return _stuffle_comps(i.comps, j.comps)


def stuffle_lincomb(a: LinComb, b: LinComb) -> LinComb:
    return a.product(b, stuffle)


def word_of(i: Index, allow_divergent: bool = False) -> LinComb:
    """p_map as a signed combination."""
    sign, w = p_map(i, allow_divergent)
    return LinComb.of(w, sign)


def shuffle_indices(i: Index, j: Index) -> LinComb:
    """Shuffle product of two indices, read back as indices through q."""
    return q_image(shuffle_lincomb(word_of(i), word_of(j)))


# ────────────────────────────────────────────────
# Relations
# ────────────────────────────────────────────────
@dataclass(frozen=True)
class Relation:
    weight: int
    terms: LinComb
    provenance: str
    residual: str = ""
    digits: int = 0
    note: str = ""

    def key(self) -> str:
        return json.dumps([[str(c), str(i)] for i, c in self.terms.sorted_items()])

    def to_record(self) -> dict:
        return {
            "weight": self.weight,
            "terms": [{"coeff": str(c), "index": str(i)} for i, c in self.terms.sorted_items()],
            "provenance": self.provenance,
            "residual": self.residual,
            "digits": self.digits,
            "note": self.note,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Relation":
        terms = LinComb([(parse_index(t["index"]), Fraction(t["coeff"])) for t in rec["terms"]])
        return cls(rec["weight"], terms, rec["provenance"], rec.get("residual", ""),
                   rec.get("digits", 0), rec.get("note", ""))

    def with_residual(self, residual: str, digits: int) -> "Relation":
        return replace(self, residual=residual, digits=digits)

    def __str__(self):
        return f"{self.terms!r} = 0"


def normalize(terms: LinComb) -> LinComb:
    """Scale to a primitive integer vector whose first term is positive."""
    if not terms:
        return terms
    items = terms.sorted_items()
    denom = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for _, c in items), 1)
    ints = [int(c * denom) for _, c in items]
    g = reduce(math.gcd, (abs(n) for n in ints))
    if ints[0] < 0:
        g = -g
    return LinComb([(i, Fraction(n, g)) for (i, _), n in zip(items, ints)])


def make_relation(terms: LinComb, provenance: str, note: str = "") -> Relation:
    if provenance not in PROVENANCES:
        raise ValueError(f"unknown provenance {provenance!r}")
    weights = {i.weight for i in terms.basis()}
    if len(weights) > 1:
        raise ValueError(f"relation is not homogeneous: weights {sorted(weights)}")
    if any(not i.admissible for i in terms.basis()):
        raise ValueError("relation contains an inadmissible index")
    weight = weights.pop() if weights else 0
    return Relation(weight, normalize(terms), provenance, note=note)


def finite_dbsf(i: Index, j: Index) -> Relation:
    """Shuffle minus stuffle of two admissible indices."""
    if not i.comps or not j.comps:
        return Relation(i.weight + j.weight, LinComb(), "finite-dbsf", note=f"{i} x {j}")
    terms = shuffle_indices(i, j) - stuffle(i, j)
    return make_relation(terms, "finite-dbsf", note=f"{i} x {j}")
