"""
test_words.py — letters, p/q maps, duality substitution and the level-four colored split
"""
from src.core import InadmissibleError, Index, LinComb, all_indices, parse_index
from src.words import (CmzvIndex, DualityDomainError, WordError, dual_word, p_map, parse_word, q_image,
                       q_map, word_to_cmzv)


def test_p_map_examples():
    assert p_map(parse_index("M(c3,b2)")) == (1, parse_word("w0 w0 w+1^-1 w0 w-1^+1"))
    sign, w = p_map(parse_index("M(b2,3,cb4)"))
    assert sign == -1
    assert str(w) == "w0 w-1^+1 w0 w0 w-1^-1 w0 w0 w0 w+1^-1"
    assert p_map(parse_index("M(cb1)")) == (1, parse_word("w-1^-1"))


def test_p_map_rejects_inadmissible():
    for text in ("M(1,2)", "M(c1)"):
        try:
            p_map(parse_index(text))
        except InadmissibleError:
            continue
        raise AssertionError(f"{text} mapped to a word")


def test_q_map_sign_rule():
    sign, idx = q_map(parse_word("w-1^+1 w-1^-1 w-1^-1 w+1^+1"))
    assert sign == -1
    assert idx == Index.of((1, -1, 1), (1, 1, 1), (1, 1, -1), (1, -1, 1))
    assert q_map(parse_word("w-1^-1")) == (1, parse_index("M(cb1)"))


def test_q_map_errors():
    for text, err in (("w0 w+1^-1 w0", WordError), ("w+1^+1 w-1^-1", InadmissibleError)):
        try:
            q_map(parse_word(text))
        except err:
            continue
        raise AssertionError(f"{text} accepted")


def test_round_trip_signs_cancel():
    for w in range(1, 6):
        for i in all_indices(w):
            sign, word = p_map(i)
            back_sign, back = q_map(word)
            assert back == i and sign * back_sign == 1, i


def test_parse_word_rejects_bad_letters():
    try:
        parse_word("w0 w2")
    except WordError:
        return
    raise AssertionError("w2 parsed")


def test_dual_word_self_dual_and_domain():
    w = parse_word("w0 w+1^-1")
    assert dual_word(w) == LinComb.of(w)
    for text in ("w0 w+1^+1", "w0 w-1^+1"):
        try:
            dual_word(parse_word(text))
        except DualityDomainError:
            continue
        raise AssertionError(f"{text} dualized")


def test_dual_word_is_an_involution():
    _, w = p_map(parse_index("M(2,c1,cb2)"))
    image = dual_word(w)
    assert all(u.weight == w.weight for u, _ in image.items())
    assert image.map(dual_word) == LinComb.of(w)


def test_dual_image_of_duality_example():
    sign, w = p_map(parse_index("M(2,c1,cb2)"))
    image = q_image(dual_word(w)) * sign
    assert image == LinComb([(parse_index(t), 1) for t in ("M(cb1,b1,c3)", "M(cb1,b1,c1,c2)", "M(b1,cb1,1,c2)")])


def test_word_to_cmzv_forms():
    comb = word_to_cmzv(parse_word("w0 w+1^-1"))
    assert comb.real == LinComb([(CmzvIndex((2,), (0,)), 1), (CmzvIndex((2,), (2,)), -1)])
    assert not comb.imag
    comb = word_to_cmzv(parse_word("w-1^-1"))
    assert not comb.real
    assert comb.imag == LinComb([(CmzvIndex((1,), (3,)), -1), (CmzvIndex((1,), (1,)), 1)])
    assert str(CmzvIndex((2, 1), (2, 1))) == "Li[2,1;-1,I]"


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
