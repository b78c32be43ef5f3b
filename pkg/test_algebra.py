"""
test_algebra.py — shuffle, stuffle and finite double shuffle relations
"""
import random
from fractions import Fraction
from math import comb

from src.algebra import Relation, finite_dbsf, make_relation, normalize, shuffle, shuffle_indices, stuffle
from src.checks.products import EXPANSIONS, SEED, check_expansion, random_index, random_word
from src.core import Index, LinComb, parse_index
from src.words import Word

M = parse_index


def test_displayed_expansions():
    for label in EXPANSIONS:
        result = check_expansion(label)
        assert result.passed, result.detail


def test_units():
    u = random_word(random.Random(SEED), 4)
    assert shuffle(u, Word()) == LinComb.of(u)
    assert stuffle(M("M(b2,3,cb4)"), Index()) == LinComb.of(M("M(b2,3,cb4)"))


def test_shuffle_multiplicity_and_grading():
    rng = random.Random(SEED + 1)
    for _ in range(30):
        a, b = rng.randint(0, 4), rng.randint(0, 4)
        u, v = random_word(rng, a), random_word(rng, b)
        prod = shuffle(u, v)
        assert sum(c for _, c in prod.items()) == comb(a + b, a)
        assert all(w.weight == a + b for w, _ in prod.items())


def test_stuffle_grading_and_merge_rule():
    i, j = M("M(cb2,1)"), M("M(3)")
    prod = stuffle(i, j)
    assert all(k.weight == 6 and k.depth <= 3 for k, _ in prod.items())
    # parities differ in the leading slot, so only the second slot can merge
    assert prod.coeff(M("M(cb5,1)")) == 0
    assert prod.coeff(M("M(cb2,4)")) == 2
    assert stuffle(M("M(c1)"), M("M(cb2)")).coeff(M("M(cb3)")) == 2


def test_commutative_and_associative():
    rng = random.Random(SEED + 2)
    for _ in range(25):
        i, j, k = (random_index(rng, 3) for _ in range(3))
        assert stuffle(i, j) == stuffle(j, i)
        assert shuffle_indices(i, j) == shuffle_indices(j, i)
        left = LinComb.of(i).product(stuffle(j, k), stuffle)
        right = stuffle(i, j).product(LinComb.of(k), stuffle)
        assert left == right


def test_classical_square_of_zeta_two():
    # zeta(2)^2 = 2 zeta(2,2) + zeta(4) read through zeta(s) = 2^(w-r) M(s)
    assert stuffle(M("M(2)"), M("M(2)")) == LinComb([(M("M(2,2)"), 2), (M("M(4)"), 2)])


def test_finite_dbsf():
    rel = finite_dbsf(M("M(2)"), M("M(2)"))
    assert rel.weight == 4 and rel.provenance == "finite-dbsf"
    # zeta(4) = 4 zeta(3,1)
    assert rel.terms == LinComb([(M("M(4)"), 1), (M("M(3,1)"), -2)])
    assert finite_dbsf(M("M(c2)"), M("M(cb1)")).weight == 3
    assert not finite_dbsf(M("M(c2)"), Index()).terms


def test_normalize_primitive_positive_lead():
    lc = LinComb([(M("M(2)"), Fraction(-1, 2)), (M("M(b2)"), Fraction(3, 4))])
    assert normalize(lc) == LinComb([(M("M(2)"), 2), (M("M(b2)"), -3)])


def test_make_relation_rejects():
    for terms, provenance in (
        (LinComb([(M("M(2)"), 1), (M("M(3)"), 1)]), "duality"),
        (LinComb.of(M("M(2)")), "guess"),
        (LinComb.of(M("M(1,2)")), "duality"),
    ):
        try:
            make_relation(terms, provenance)
        except ValueError:
            continue
        raise AssertionError(f"{terms!r} accepted")


def test_relation_record():
    rel = make_relation(LinComb([(M("M(c2,b1)"), 1), (M("M(b2,c1)"), -1)]), "pslq", note="n")
    rec = rel.to_record()
    assert rec["terms"][0] == {"coeff": "1", "index": "M(c2,b1)"}
    assert Relation.from_record(rec) == rel


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
