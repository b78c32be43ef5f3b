# src/relations.py
"""
Relation harvesting, numeric validation, exact elimination and dimension
bounds, plus integer relation detection.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence

import mpmath as mp

from src import config, db
from src.algebra import PROVENANCES, Relation, finite_dbsf, make_relation
from src.constants import catalan, family_value, log2, mul, pi, polylog_part, power, zeta
from src.core import Index, LinComb, all_indices, family_indices, parse_index, specialize
from src.numerics import BudgetExceeded, PrecReal, PrecisionError, eval_form, eval_index
from src.regularization import RegularizationError, reg_dbsf
from src.words import dual_word, p_map, q_image

logger = logging.getLogger("ammv")

SOURCES = ("finite-dbsf", "reg-dbsf", "duality")
PRECISION_RATIO = 0.75
FAMILY_NAMES = {"Z": "AMZV", "t": "AMtV", "T": "AMTV", "S": "AMSV"}


class RelationRejected(ValueError):
    """A candidate relation whose residual is above the validation threshold."""


def check_weight(weight: int, allow_large_weight: bool = False):
    if weight < 0:
        raise ValueError("weight must be non-negative")
    if weight > config.MAX_WEIGHT and not (allow_large_weight or config.ALLOW_LARGE_WEIGHT):
        raise BudgetExceeded(
            f"weight {weight} is above the ceiling {config.MAX_WEIGHT}; pass the large weight override"
        )


# ────────────────────────────────────────────────
# Evaluation with the sqlite cache
# ────────────────────────────────────────────────
def evaluate(i: Index, digits: int, cache_url: str = None) -> PrecReal:
    text = str(i)
    if cache_url:
        row = db.cache_get(text, digits, cache_url)
        if row:
            with mp.workdps(digits + 15):
                return PrecReal(mp.mpf(row[0]), mp.mpf(row[1]), digits)
    v = eval_index(i, digits)
    if cache_url:
        db.cache_put(text, digits, mp.nstr(v.value, digits + 10), mp.nstr(v.err, 5), cache_url)
    return v


def _eval_text(text: str, digits: int):
    """Worker entry point; returns strings so results cross process boundaries."""
    v = eval_index(parse_index(text), digits)
    return text, mp.nstr(v.value, digits + 10), mp.nstr(v.err, 5)


def evaluate_many(indices: Iterable[Index], digits: int, jobs: int = 1,
                  cache_url: str = None) -> Dict[Index, PrecReal]:
    todo = sorted(set(indices), key=Index.sort_key)
    if jobs <= 1 or len(todo) < 2:
        return {i: evaluate(i, digits, cache_url) for i in todo}
    out = {}
    missing = []
    for i in todo:
        row = db.cache_get(str(i), digits, cache_url) if cache_url else None
        if row:
            with mp.workdps(digits + 15):
                out[i] = PrecReal(mp.mpf(row[0]), mp.mpf(row[1]), digits)
        else:
            missing.append(str(i))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for text, value, err in pool.map(_eval_text, missing, [digits] * len(missing)):
            if cache_url:
                db.cache_put(text, digits, value, err, cache_url)
            with mp.workdps(digits + 15):
                out[parse_index(text)] = PrecReal(mp.mpf(value), mp.mpf(err), digits)
    return out


# ────────────────────────────────────────────────
# Validation
# ────────────────────────────────────────────────
def threshold(digits: int, slack: int = None) -> mp.mpf:
    slack = config.RESIDUAL_SLACK if slack is None else slack
    return mp.mpf(10) ** (-(digits - slack))


def residual_of(rel: Relation, values: Dict[Index, PrecReal], digits: int) -> mp.mpf:
    with mp.workdps(digits + 15):
        return abs(mp.fsum(mp.mpf(c.numerator) / c.denominator * values[i].value for i, c in rel.terms.items()))


def validate_relation(rel: Relation, digits: int, values: Dict[Index, PrecReal] = None,
                      slack: int = None) -> Relation:
    """Return rel with its residual recorded; raise RelationRejected if it is above the threshold."""
    if values is None:
        values = {i: eval_index(i, digits) for i in rel.terms.basis()}
    res = residual_of(rel, values, digits)
    checked = rel.with_residual(mp.nstr(res, 3), digits)
    if res > threshold(digits, slack):
        raise RelationRejected(f"relation {rel} has residual {mp.nstr(res, 3)}")
    return checked


# ────────────────────────────────────────────────
# Store
# ────────────────────────────────────────────────
class RelationStore:
    """Validated relations per weight, optionally backed by the sqlite store."""

    def __init__(self, url: str = None):
        self.url = url
        self.relations: Dict[int, List[Relation]] = {}
        self._keys = set()
        self._echelons: Dict[int, "Echelon"] = {}
        if url:
            db.init_db(url)
            for rec in db.list_relations(url=url):
                self._remember(Relation.from_record(rec))

    def _remember(self, rel: Relation) -> bool:
        if rel.key() in self._keys:
            return False
        self._keys.add(rel.key())
        self.relations.setdefault(rel.weight, []).append(rel)
        self._echelons.pop(rel.weight, None)
        return True

    def add(self, rel: Relation) -> bool:
        if not rel.residual:
            raise ValueError("only validated relations can be stored")
        if not self._remember(rel):
            return False
        if self.url:
            db.insert_relation(rel.to_record(), self.url)
        return True

    def by_weight(self, weight: int) -> List[Relation]:
        return list(self.relations.get(weight, []))

    def echelon(self, weight: int) -> "Echelon":
        if weight not in self._echelons:
            ech = Echelon()
            for rel in self.relations.get(weight, []):
                ech.add(rel.terms)
            self._echelons[weight] = ech
        return self._echelons[weight]

    def __len__(self):
        return sum(len(v) for v in self.relations.values())


# ────────────────────────────────────────────────
# Generators
# ────────────────────────────────────────────────
def _split_pairs(weight: int, left_admissible: bool) -> Iterator:
    for w1 in range(1, weight + 1):
        lefts = [i for i in all_indices(w1, admissible=False) if i.admissible == left_admissible]
        rights = all_indices(weight - w1) if weight > w1 else [Index()]
        for i in lefts:
            for j in rights:
                yield i, j


def finite_dbsf_relations(weight: int) -> Iterator[Relation]:
    for w1 in range(1, weight // 2 + 1):
        lefts = all_indices(w1)
        rights = all_indices(weight - w1)
        for i in lefts:
            for j in rights:
                if w1 == weight - w1 and j.sort_key() < i.sort_key():
                    continue
                rel = finite_dbsf(i, j)
                if rel.terms:
                    yield rel


def reg_dbsf_relations(weight: int) -> Iterator[Relation]:
    if weight < 2:
        return
    for i, j in _split_pairs(weight, left_admissible=False):
        try:
            yield from reg_dbsf(i, j)
        except (RegularizationError, ValueError) as e:
            logger.warning(f"reg-dbsf {i} | {j} skipped: {e}")


def duality_relations(weight: int) -> Iterator[Relation]:
    for i in all_indices(weight):
        if i.comps[-1].eps != -1:
            continue
        sign, w = p_map(i)
        terms = LinComb.of(i, sign) - q_image(dual_word(w))
        if terms:
            yield make_relation(terms, "duality", note=f"dual of {i}")


_GENERATORS = {
    "finite-dbsf": finite_dbsf_relations,
    "reg-dbsf": reg_dbsf_relations,
    "duality": duality_relations,
}


def generate(weight: int, sources: Sequence[str] = SOURCES) -> List[Relation]:
    seen, out = set(), []
    for source in sources:
        if source not in _GENERATORS:
            raise ValueError(f"unknown source {source!r}; choose from {SOURCES}")
        for rel in _GENERATORS[source](weight):
            if rel.key() not in seen:
                seen.add(rel.key())
                out.append(rel)
    return out


def harvest(weight: int, store: RelationStore, sources: Sequence[str] = SOURCES, digits: int = None,
            jobs: int = None, cache_url: str = None, allow_large_weight: bool = False) -> List[Relation]:
    """Generate, validate and store relations of one weight; returns the ones newly stored."""
    check_weight(weight, allow_large_weight)
    digits = digits or config.DEFAULT_DIGITS
    jobs = jobs or config.JOBS
    candidates = generate(weight, sources)
    symbols = {i for rel in candidates for i in rel.terms.basis()}
    logger.info(f"harvest weight {weight}: {len(candidates)} candidates over {len(symbols)} symbols")
    values = evaluate_many(symbols, digits, jobs, cache_url)
    for i, v in values.items():
        if not v.ok:
            logger.warning(f"{i} reached only {mp.nstr(v.err, 3)} at {digits} digits")

    added = []
    for rel in candidates:
        try:
            checked = validate_relation(rel, digits, values)
        except RelationRejected as e:
            logger.warning(f"rejected {rel.provenance} ({rel.note}): {e}")
            continue
        if store.add(checked):
            added.append(checked)
    logger.info(f"harvest weight {weight}: stored {len(added)} of {len(candidates)}")
    return added


# ────────────────────────────────────────────────
# Exact elimination
# ────────────────────────────────────────────────
class Echelon:
    """Rows in reduced form keyed by their pivot, the canonically greatest symbol."""

    def __init__(self):
        self.rows: Dict[Index, Dict[Index, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Dict[Index, Fraction]) -> Dict[Index, Fraction]:
        vec = {k: v for k, v in vec.items() if v}
        while vec:
            top = max(vec, key=Index.sort_key)
            row = self.rows.get(top)
            if row is None:
                break
            c = vec[top]
            for k, v in row.items():
                nv = vec.get(k, Fraction(0)) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return vec

    def add(self, terms) -> bool:
        """Insert a LinComb or dict; returns True if the rank grew."""
        vec = dict(terms.items()) if isinstance(terms, LinComb) else dict(terms)
        vec = self.reduce(vec)
        if not vec:
            return False
        top = max(vec, key=Index.sort_key)
        c = vec[top]
        self.rows[top] = {k: v / c for k, v in vec.items()}
        return True

    def copy(self) -> "Echelon":
        out = Echelon()
        out.rows = dict(self.rows)
        return out


# ────────────────────────────────────────────────
# Dimensions
# ────────────────────────────────────────────────
def _fibonacci(w: int) -> int:
    a, b = 1, 1
    for _ in range(w):
        a, b = b, a + b
    return a


def _tribonacci(w: int) -> int:
    d = [1, 1, 2]
    while len(d) <= w:
        d.append(d[-1] + d[-2] + d[-3])
    return d[w]


def _amsv(w: int) -> int:
    if w <= 1:
        return 1
    d = 3
    for n in range(3, w + 1):
        d = 2 * d - 2 * ((n + 1) // 2) + 4
    return d


def conjectured_dims(weight: int) -> Dict[str, int]:
    return {
        "AMMV": 2 ** weight,
        "AMZV": _fibonacci(weight),
        "AMtV": 1 if weight < 2 else 3 * 2 ** (weight - 2),
        "AMTV": _tribonacci(weight),
        "AMSV": _amsv(weight),
    }


@dataclass
class DimReport:
    weight: int
    symbols: int
    rank: int
    family_bounds: Dict[str, int] = field(default_factory=dict)
    conjectured: Dict[str, int] = field(default_factory=dict)

    @property
    def bound(self) -> int:
        return self.symbols - self.rank

    @property
    def sound(self) -> bool:
        """No bound fell below the conjectured value."""
        bounds = dict(self.family_bounds, AMMV=self.bound)
        return all(bounds[k] >= self.conjectured[k] for k in bounds if k in self.conjectured)

    def rows(self):
        """(space, validated upper bound, conjectured, gap)."""
        out = [("AMMV", self.bound, self.conjectured.get("AMMV"))]
        out += [(k, v, self.conjectured.get(k)) for k, v in self.family_bounds.items()]
        return [(k, b, c, b - c if c is not None else None) for k, b, c in out]


def _family_symbols(family: str, weight: int) -> List[Index]:
    return sorted({specialize(spec)[1] for spec in family_indices(family, weight)}, key=Index.sort_key)


def rank_and_dims(weight: int, store: RelationStore, allow_large_weight: bool = False) -> DimReport:
    check_weight(weight, allow_large_weight)
    if weight == 0:
        return DimReport(0, 1, 0, {name: 1 for name in FAMILY_NAMES.values()}, conjectured_dims(0))
    symbols = all_indices(weight)
    ech = store.echelon(weight)
    families = {}
    for fam, name in FAMILY_NAMES.items():
        span = ech.copy()
        families[name] = sum(1 for i in _family_symbols(fam, weight) if span.add({i: Fraction(1)}))
    report = DimReport(weight, len(symbols), ech.rank, families, conjectured_dims(weight))
    if not report.sound:
        logger.error(f"weight {weight}: a bound fell below its conjectured value {report.rows()}")
    return report


# ────────────────────────────────────────────────
# Bases
# ────────────────────────────────────────────────
BASES = {
    "MB": {
        1: ["M(b1)", "M(cb1)"],
        2: ["M(2)", "M(cb2)", "M(b1,1)", "M(cb1,1)"],
        3: ["M(3)", "M(cb3)", "M(2,b1)", "M(2,cb1)", "M(b2,c1)", "M(cb2,1)", "M(b1,1,1)", "M(cb1,1,1)"],
    },
    "tB": {
        1: ["t(b1)"],
        2: ["t(2)", "t(b2)", "t(b1,1)"],
        3: ["t(3)", "t(b3)", "t(2,1)", "t(2,b1)", "t(b1,b2)", "t(b1,1,1)"],
    },
    "TB": {
        1: ["T(b1)"],
        2: ["T(2)", "T(b2)"],
        3: ["T(3)", "T(b3)", "T(2,b1)", "T(b2,1)"],
    },
    "SB": {
        1: ["S(b1)"],
        2: ["S(2)", "S(b1,1)", "S(b1,b1)"],
        3: ["S(3)", "S(2,1)", "S(2,b1)", "S(b2,1)", "S(b2,b1)", "S(b1,b2)"],
    },
}


def constant_basis(weight: int) -> List[LinComb]:
    """Products of classical constants spanning the M-values of weight <= 3."""
    p, l2, g = pi(), log2(), catalan()
    if weight == 1:
        return [p, l2]
    if weight == 2:
        return [g, pi(2), mul(p, l2), power(l2, 2)]
    if weight == 3:
        return [zeta(3), polylog_part(3, complex(0.5, 0.5), "im"), mul(g, p), mul(g, l2),
                pi(3), mul(pi(2), l2), mul(p, power(l2, 2)), power(l2, 3)]
    raise ValueError("constant bases are listed for weights 1 to 3")


def basis_list(family: str, weight: int) -> List[str]:
    if family not in BASES:
        raise ValueError(f"family must be one of {sorted(BASES)}")
    if weight not in BASES[family]:
        raise ValueError(f"{family} is listed for weights {sorted(BASES[family])}")
    return list(BASES[family][weight])


# ────────────────────────────────────────────────
# Integer relations
# ────────────────────────────────────────────────
def pslq(values: Sequence[PrecReal], digits: int = None, max_coeff_bits: int = 20) -> Optional[List[int]]:
    """Small integer vector c with sum c_i v_i = 0, checked again by a direct dot product."""
    digits = digits or config.DEFAULT_DIGITS
    if len(values) < 2:
        raise ValueError("pslq needs at least two values")
    floor = mp.mpf(10) ** (-digits)
    for n, v in enumerate(values):
        if v.err > floor:
            raise PrecisionError(
                f"value {n} is known to {mp.nstr(v.err, 3)}, coarser than the requested 1e-{digits}"
            )
    with mp.workdps(digits):
        tol = mp.mpf(10) ** (-int(digits * PRECISION_RATIO))
        vec = mp.pslq([v.value for v in values], tol=tol, maxcoeff=2 ** max_coeff_bits, maxsteps=10 ** 6)
    if vec is None:
        return None
    with mp.workdps(digits + 10):
        dot = abs(mp.fsum(c * v.value for c, v in zip(vec, values)))
        if dot > mp.mpf(10) ** (-(digits // 2)):
            logger.warning(f"pslq vector {vec} failed the dot product check ({mp.nstr(dot, 3)})")
            return None
    lead = next(c for c in vec if c)
    return [int(c) if lead > 0 else -int(c) for c in vec]


def pslq_relation(indices: Sequence[Index], digits: int = None, max_coeff_bits: int = 20) -> Optional[Relation]:
    digits = digits or config.DEFAULT_DIGITS
    values = [eval_index(i, digits + 5) for i in indices]
    vec = pslq(values, digits, max_coeff_bits)
    if vec is None:
        return None
    rel = make_relation(LinComb(list(zip(indices, vec))), "pslq", note="integer relation search")
    return validate_relation(rel, digits, dict(zip(indices, values)))


@dataclass
class BasisReport:
    family: str
    weight: int
    members: List[str]
    relation: Optional[List[int]]

    @property
    def passed(self) -> bool:
        return self.relation is None


def basis_check(family: str, weight: int, digits: int = None, max_coeff_bits: int = 10) -> BasisReport:
    """Joint integer relation search over a listed basis; none should be found."""
    if weight > 3:
        raise BudgetExceeded("basis checks are limited to weight 3")
    digits = digits or config.DEFAULT_DIGITS
    members = basis_list(family, weight)
    if len(members) < 2:
        return BasisReport(family, weight, members, None)
    values = [eval_form(family_value(text), digits + 5) for text in members]
    vec = pslq(values, digits, max_coeff_bits)
    if vec is not None:
        logger.warning(f"{family}{weight}: unexpected relation {vec}")
    return BasisReport(family, weight, members, vec)


def provenance_counts(store: RelationStore) -> Dict[str, int]:
    counts = {p: 0 for p in PROVENANCES}
    for rels in store.relations.values():
        for rel in rels:
            counts[rel.provenance] += 1
    return counts
