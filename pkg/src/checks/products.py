import random
from functools import partial
from math import comb

import mpmath as mp

from src.algebra import shuffle, shuffle_indices, stuffle
from src.core import Component, Index, LinComb, all_indices, parse_index
from src.numerics import eval_index
from src.words import LETTERS, Word, p_map, q_map
from src.checks import CheckResult, index_comb, symbolic, tolerance

SEED = 20240531
HOMOMORPHISM_PAIRS = 100
ALGEBRA_TRIPLES = 200

# (kind, left, right, displayed expansion)
EXPANSIONS = {
    "P1": ("shuffle", "M(cb1)", "M(cb2)", "-M(b1,c2) - 2*M(b2,c1)"),
    "P2": ("shuffle", "M(b3)", "M(c2)",
           "M(cb3,cb2) + M(c2,b3) + 2*M(c3,b2) + 3*M(c4,b1) + 3*M(cb4,cb1)"),
    "P3": ("stuffle", "M(b2,3,cb4)", "M(cb2)",
           "M(b2,3,cb4,cb2) + M(b2,3,cb2,cb4) + M(b2,cb2,3,cb4) + M(cb2,b2,3,cb4) + 2*M(b2,3,c6)"),
    "P4": ("stuffle", "M(b1,cb2)", "M(3,cb2)",
           "M(b1,cb2,3,cb2) + M(3,cb2,b1,cb2) + 2*M(b1,3,cb2,cb2) + 2*M(3,b1,cb2,cb2)"
           " + 2*M(b1,3,c4) + 2*M(3,b1,c4) + 4*M(b4,cb2,cb2) + 4*M(b4,c4)"),
}


def random_index(rng: random.Random, max_weight: int) -> Index:
    """Uniform over components; admissible, weight between 1 and max_weight."""
    while True:
        weight = rng.randint(1, max_weight)
        comps = []
        left = weight
        while left:
            s = rng.randint(1, left)
            comps.append(Component(s, rng.choice((1, -1)), rng.choice((1, -1))))
            left -= s
        idx = Index(tuple(comps))
        if idx.admissible:
            return idx


def random_word(rng: random.Random, length: int) -> Word:
    return Word(tuple(rng.choice(LETTERS) for _ in range(length)))


def check_expansion(label: str, digits: int = None) -> CheckResult:
    kind, left, right, expected = EXPANSIONS[label]
    i, j = parse_index(left), parse_index(right)
    got = shuffle_indices(i, j) if kind == "shuffle" else stuffle(i, j)
    return symbolic(label, got, index_comb(expected))


def check_round_trip(digits: int = None, max_weight: int = 5) -> CheckResult:
    """q(p(i)) = i with matching signs for every admissible index."""
    count = 0
    for w in range(1, max_weight + 1):
        for i in all_indices(w):
            sign, word = p_map(i)
            back_sign, back = q_map(word)
            if back != i or sign * back_sign != 1:
                return CheckResult("round-trip q.p", False, "", f"{i} came back as {back_sign}*{back}")
            count += 1
    return CheckResult("round-trip q.p", True, "0", f"{count} indices to weight {max_weight}")


def check_shuffle_counts(digits: int = None, samples: int = 60) -> CheckResult:
    """Coefficients of u sh v add up to C(|u|+|v|, |u|)."""
    rng = random.Random(SEED)
    for _ in range(samples):
        a, b = rng.randint(0, 5), rng.randint(0, 5)
        u, v = random_word(rng, a), random_word(rng, b)
        total = sum(c for _, c in shuffle(u, v).items())
        if total != comb(a + b, a):
            return CheckResult("shuffle counts", False, "", f"{u} sh {v}: {total} != C({a + b},{a})")
    return CheckResult("shuffle counts", True, "0", f"{samples} word pairs")


def check_algebra_laws(digits: int = None, triples: int = ALGEBRA_TRIPLES) -> CheckResult:
    """Commutativity and associativity of both products on random indices."""
    rng = random.Random(SEED + 1)
    for _ in range(triples):
        i, j, k = (random_index(rng, 2) for _ in range(3))
        if stuffle(i, j) != stuffle(j, i):
            return CheckResult("algebra laws", False, "", f"stuffle not commutative on {i}, {j}")
        left = stuffle(i, j).product(LinComb.of(k), stuffle)
        right = LinComb.of(i).product(stuffle(j, k), stuffle)
        if left != right:
            return CheckResult("algebra laws", False, "", f"stuffle not associative on {i}, {j}, {k}")
        u, v = p_map(i)[1], p_map(j)[1]
        if shuffle(u, v) != shuffle(v, u):
            return CheckResult("algebra laws", False, "", f"shuffle not commutative on {u}, {v}")
    return CheckResult("algebra laws", True, "0", f"{triples} triples")


def _value(lc, digits: int):
    with mp.workdps(digits + 10):
        return mp.fsum(mp.mpf(c.numerator) / c.denominator * eval_index(i, digits).value for i, c in lc.items())


def check_homomorphism(digits: int = 20, pairs: int = HOMOMORPHISM_PAIRS, slack: int = 10) -> CheckResult:
    """M(i) M(j) against the shuffle and the stuffle expansion."""
    rng = random.Random(SEED + 2)
    worst = mp.mpf(0)
    for _ in range(pairs):
        i, j = random_index(rng, 3), random_index(rng, 3)
        with mp.workdps(digits + 10):
            prod = eval_index(i, digits).value * eval_index(j, digits).value
            for kind, expansion in (("shuffle", shuffle_indices(i, j)), ("stuffle", stuffle(i, j))):
                res = abs(prod - _value(expansion, digits))
                worst = max(worst, res)
                if res > tolerance(digits, slack):
                    return CheckResult("homomorphism", False, mp.nstr(res, 3), f"{kind} of {i}, {j}")
    return CheckResult("homomorphism", True, mp.nstr(worst, 3), f"{pairs} pairs")


CHECKS = {
    **{f"P{n}": partial(check_expansion, f"P{n}") for n in range(1, 5)},
    "round-trip": check_round_trip,
    "shuffle-counts": check_shuffle_counts,
    "algebra-laws": check_algebra_laws,
    "homomorphism": check_homomorphism,
}
