import random
from functools import partial

import mpmath as mp

from src.algebra import normalize
from src.constants import pi, zeta
from src.numerics import eval_cmzv_combination, eval_form, eval_word
from src.relations import BASES, RelationStore, basis_check, harvest, pslq, pslq_relation, rank_and_dims
from src.words import p_map, word_to_cmzv
from src.checks import CheckResult, combine, index_comb, tolerance
from src.checks.products import SEED, random_index

CMZV_WORDS = 20


def check_pslq_regularized(digits: int = 25) -> CheckResult:
    """The weight-3 relation with coefficients (1, 1, -1) is found from values alone."""
    target = index_comb("M(c2,b1) + M(cb2,cb1) - M(b2,c1)")
    indices = [i for i, _ in target.sorted_items()]
    rel = pslq_relation(indices, digits)
    if rel is None:
        return CheckResult("pslq-reg-w3", False, "", "no relation found")
    ok = rel.terms == normalize(target)
    return CheckResult("pslq-reg-w3", ok, rel.residual, str(rel))


def check_pslq_zeta2(digits: int = 25) -> CheckResult:
    values = [eval_form(zeta(2), digits + 5), eval_form(pi(2), digits + 5)]
    vec = pslq(values, digits)
    return CheckResult("pslq-zeta2", vec == [6, -1], "0" if vec == [6, -1] else "", f"{vec}")


def check_cmzv_decomposition(digits: int = 20, words: int = CMZV_WORDS, slack: int = 5) -> CheckResult:
    """eval_word against the sum over its level-four colored expansion."""
    rng = random.Random(SEED + 3)
    worst = mp.mpf(0)
    for _ in range(words):
        _, w = p_map(random_index(rng, 4))
        direct = eval_word(w, digits)
        split = eval_cmzv_combination(word_to_cmzv(w), digits)
        with mp.workdps(digits + 10):
            res = abs(direct.value - split.value)
        worst = max(worst, res)
        if res > tolerance(digits, slack):
            return CheckResult("cmzv-decomposition", False, mp.nstr(res, 3), str(w))
    return CheckResult("cmzv-decomposition", True, mp.nstr(worst, 3), f"{words} words")


def check_dims(weight: int, digits: int = 25) -> CheckResult:
    """Harvest into a scratch store and compare the bounds with the conjectured table."""
    store = RelationStore()
    harvest(weight, store, digits=digits)
    report = rank_and_dims(weight, store)
    ok = report.sound and (weight != 1 or report.bound == 2)
    gaps = ", ".join(f"{space} {bound}/{conj}" for space, bound, conj, _ in report.rows())
    worst = max((mp.mpf(r.residual) for r in store.by_weight(weight)), default=mp.mpf(0))
    return CheckResult(f"dims-w{weight}", ok, mp.nstr(worst, 3), gaps)


def check_bases(digits: int = 30) -> CheckResult:
    """No integer relation among the members of any listed basis."""
    parts = []
    for family, by_weight in BASES.items():
        for weight in by_weight:
            report = basis_check(family, weight, digits)
            parts.append(CheckResult(f"{family}{weight}", report.passed, "", f"relation {report.relation}"))
    return combine("bases", parts)


CHECKS = {
    "pslq-reg-w3": check_pslq_regularized,
    "pslq-zeta2": check_pslq_zeta2,
    "cmzv-decomposition": check_cmzv_decomposition,
    **{f"dims-w{w}": partial(check_dims, w) for w in (1, 2, 3)},
    "bases": check_bases,
}
