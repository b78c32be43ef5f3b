"""
test_relations.py — harvesting, exact elimination, dimension bounds and integer relations
"""
import os
import tempfile
from fractions import Fraction

import mpmath as mp

from src.algebra import make_relation, normalize
from src.checks import index_comb
from src.constants import pi, zeta
from src.core import LinComb, parse_index
from src.numerics import BudgetExceeded, PrecReal, PrecisionError, eval_form, eval_index
from src.relations import (Echelon, RelationRejected, RelationStore, basis_check, check_weight, conjectured_dims,
                           generate, harvest, pslq, pslq_relation, rank_and_dims, validate_relation)

M = parse_index
DIGITS = 20


def _store_url(tmp: str) -> str:
    return "sqlite:///" + os.path.join(tmp, "store.db")


def test_pslq_small_vectors():
    x = eval_index(M("M(2)"), DIGITS + 5)
    two_x = PrecReal(2 * x.value, x.err, x.digits)
    assert pslq([x, two_x], DIGITS) == [2, -1]
    values = [eval_form(zeta(2), DIGITS + 5), eval_form(pi(2), DIGITS + 5)]
    assert pslq(values, DIGITS) == [6, -1]


def test_pslq_refuses_coarse_values():
    coarse = PrecReal(mp.mpf(1), mp.mpf("1e-5"), DIGITS)
    try:
        pslq([coarse, coarse], DIGITS)
    except PrecisionError:
        return
    raise AssertionError("coarse value accepted")


def test_pslq_finds_weight_three_relation():
    target = normalize(index_comb("M(c2,b1) + M(cb2,cb1) - M(b2,c1)"))
    rel = pslq_relation([i for i, _ in target.sorted_items()], DIGITS)
    assert rel is not None and rel.terms == target and rel.provenance == "pslq"


def test_validate_relation_rejects_false_relation():
    fake = make_relation(LinComb([(M("M(2)"), 1), (M("M(b2)"), 1)]), "pslq")
    try:
        validate_relation(fake, DIGITS)
    except RelationRejected:
        return
    raise AssertionError("false relation validated")


def test_echelon_rank():
    ech = Echelon()
    assert ech.add(index_comb("M(2) - M(b2)"))
    assert ech.add(index_comb("M(b2) - M(cb2)"))
    assert not ech.add(index_comb("M(2) - M(cb2)"))
    assert ech.rank == 2
    assert ech.reduce(dict(index_comb("M(cb2)").items()))
    assert not ech.reduce({M("M(2)"): Fraction(1), M("M(cb2)"): Fraction(-1)})


def test_weight_one():
    store = RelationStore()
    assert harvest(1, store, digits=DIGITS) == []
    report = rank_and_dims(1, store)
    assert (report.symbols, report.rank, report.bound) == (2, 0, 2)
    assert report.sound
    assert rank_and_dims(0, store).bound == 1


def test_duality_harvest_persists():
    with tempfile.TemporaryDirectory() as tmp:
        url = _store_url(tmp)
        store = RelationStore(url)
        added = harvest(2, store, ["duality"], DIGITS)
        assert added and all(r.provenance == "duality" for r in added)
        assert all(mp.mpf(r.residual) < mp.mpf(10) ** -(DIGITS - 8) for r in added)
        assert len(RelationStore(url)) == len(store)
        assert harvest(2, store, ["duality"], DIGITS) == []


def test_weight_three_harvest_contains_regularized_relation():
    store = RelationStore()
    harvest(3, store, digits=15)
    target = normalize(index_comb("M(c2,b1) + M(cb2,cb1) - M(b2,c1)"))
    assert any(r.terms == target for r in store.by_weight(3))
    report = rank_and_dims(3, store)
    assert report.sound and report.bound >= 8


def test_generate_rejects_unknown_source():
    try:
        generate(2, ["guesswork"])
    except ValueError:
        return
    raise AssertionError("unknown source accepted")


def test_conjectured_dims():
    dims = conjectured_dims(4)
    assert dims["AMMV"] == 16 and dims["AMZV"] == 5 and dims["AMtV"] == 12 and dims["AMTV"] == 7


def test_weight_ceiling():
    check_weight(4)
    check_weight(6, allow_large_weight=True)
    try:
        check_weight(5)
    except BudgetExceeded:
        return
    raise AssertionError("weight 5 allowed without override")


def test_bases_have_no_small_relation():
    for family, weight in (("TB", 2), ("SB", 2), ("MB", 1)):
        assert basis_check(family, weight, DIGITS).passed, family


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
