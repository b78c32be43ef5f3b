# src/words.py
"""
Iterated-integral words over the five letters

    w0        = dt/t
    w(s, e)   = 2 t^((1+e)/2) dt / (1 - s t^2)      s, e in {+1, -1}

and the maps between words and indices.
"""
import re
from dataclasses import dataclass
from itertools import product
from typing import Tuple

from src.core import Component, InadmissibleError, Index, LinComb


class WordError(ValueError):
    pass


class DualityDomainError(ValueError):
    pass


@dataclass(frozen=True)
class Letter:
    sigma: int = 0  # 0 marks w0
    eps: int = 0

    @property
    def is_zero(self) -> bool:
        return self.sigma == 0

    @property
    def divergent(self) -> bool:
        """Letters singular at t = 1."""
        return self.sigma == 1

    def __str__(self):
        if self.is_zero:
            return "w0"
        return f"w{self.sigma:+d}^{self.eps:+d}"


W0 = Letter()
LETTERS = (W0, Letter(1, 1), Letter(1, -1), Letter(-1, 1), Letter(-1, -1))


@dataclass(frozen=True)
class Word:
    letters: Tuple[Letter, ...] = ()

    @property
    def weight(self) -> int:
        return len(self.letters)

    @property
    def admissible(self) -> bool:
        return (
            bool(self.letters)
            and not self.letters[0].divergent
            and not self.letters[-1].is_zero
        )

    def divergent_prefix(self) -> int:
        n = 0
        for a in self.letters:
            if not a.divergent:
                break
            n += 1
        return n

    def sort_key(self):
        order = {a: n for n, a in enumerate(LETTERS)}
        return (len(self.letters), tuple(order[a] for a in self.letters))

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __str__(self):
        return " ".join(str(a) for a in self.letters) if self.letters else "1"


_LETTER = re.compile(r"w0|w([+-]1)\^([+-]1)")


def parse_word(text: str) -> Word:
    """Parse space separated letters such as ``w0 w+1^-1``."""
    letters = []
    for pos, token in ((m.start(), m.group()) for m in re.finditer(r"\S+", text)):
        m = _LETTER.fullmatch(token)
        if not m:
            raise WordError(f"bad letter {token!r} at position {pos}")
        letters.append(W0 if token == "w0" else Letter(int(m.group(1)), int(m.group(2))))
    return Word(tuple(letters))


# ────────────────────────────────────────────────
# Index <-> word
# ────────────────────────────────────────────────
def p_map(i: Index, allow_divergent: bool = False) -> Tuple[int, Word]:
    """The integrand word of M(i) together with the sign it carries."""
    if not i.comps:
        raise ValueError("the empty index has no word")
    if not allow_divergent and not i.admissible:
        raise InadmissibleError(f"{i} is not admissible")
    letters = []
    sign = 1
    prefix = 1
    r = i.depth
    for j, c in enumerate(i.comps):
        prefix *= c.sigma
        letters.extend([W0] * (c.s - 1))
        if j < r - 1:
            nxt = i.comps[j + 1].eps
            letters.append(Letter(prefix, c.eps * nxt))
            if prefix == -1 and c.eps == 1 and nxt == -1:
                sign = -sign
        else:
            letters.append(Letter(prefix, c.eps))
    return sign, Word(tuple(letters))


def q_map(w: Word, allow_divergent: bool = False) -> Tuple[int, Index]:
    """Inverse of p_map: the signed index whose integral is w."""
    if not w.letters or w.letters[-1].is_zero:
        raise WordError(f"word {w} must be non-empty and end in a non-zero letter")
    if not allow_divergent and w.letters[0].divergent:
        raise InadmissibleError(f"word {w} starts with a letter singular at 1")
    s_list, marks = [], []
    run = 1
    for a in w.letters:
        if a.is_zero:
            run += 1
        else:
            s_list.append(run)
            marks.append(a)
            run = 1
    r = len(marks)
    tails = [1] * (r + 1)
    for j in range(r - 1, -1, -1):
        tails[j] = tails[j + 1] * marks[j].eps
    comps = []
    for j in range(r):
        sigma = marks[j].sigma * (marks[j - 1].sigma if j else 1)
        comps.append(Component(s_list[j], sigma, tails[j]))
    flips = sum(
        1 for j in range(r - 1)
        if marks[j].sigma == -1 and marks[j].eps == -1 and tails[j + 1] == -1
    )
    return (-1) ** flips, Index(tuple(comps))


def q_image(lc: LinComb, allow_divergent: bool = False) -> LinComb:
    """Push a combination of words to the combination of indices it integrates to."""
    def one(w):
        sign, idx = q_map(w, allow_divergent)
        return LinComb.of(idx, sign)
    return lc.map(one)


# ────────────────────────────────────────────────
# Duality
# ────────────────────────────────────────────────
_DUAL = {
    W0: LinComb.of(Word((Letter(1, -1),))),
    Letter(1, -1): LinComb.of(Word((W0,))),
    Letter(-1, -1): LinComb.of(Word((Letter(-1, -1),))),
    Letter(1, 1): LinComb([
        (Word((W0,)), 1), (Word((Letter(1, 1),)), 1), (Word((Letter(1, -1),)), -1),
    ]),
    Letter(-1, 1): LinComb([
        (Word((Letter(1, 1),)), 1), (Word((Letter(1, -1),)), -1), (Word((Letter(-1, 1),)), -1),
    ]),
}


def _concat(a: Word, b: Word) -> LinComb:
    return LinComb.of(a + b)


def dual_word(w: Word) -> LinComb:
    """Image of w under t -> (1-t)/(1+t); both sides have the same integral."""
    if not w.admissible or w.letters[-1].eps != -1:
        raise DualityDomainError(f"{w} must be admissible and end in w(+-1)^-1")
    out = LinComb.of(Word())
    for a in reversed(w.letters):
        out = out.product(_DUAL[a], _concat)
    return out


# ────────────────────────────────────────────────
# Colored multiple zeta values of level four
# ────────────────────────────────────────────────
@dataclass(frozen=True)
class CmzvIndex:
    """Li_{k}(z) at fourth roots of unity; z[j] stores the exponent e of i**e."""
    k: Tuple[int, ...]
    z: Tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.k)

    def sort_key(self):
        return (self.weight, len(self.k), self.k, self.z)

    def __str__(self):
        names = {0: "1", 1: "I", 2: "-1", 3: "-I"}
        return "Li[" + ",".join(map(str, self.k)) + ";" + ",".join(names[e] for e in self.z) + "]"


@dataclass
class CmzvCombination:
    """Gaussian-rational combination kept as real and imaginary coefficient parts."""
    real: LinComb
    imag: LinComb


# each form is a list of (i-power of the coefficient, i-power of the pole b) for dt/(b - t)
_FORMS = {
    Letter(1, -1): [(0, 0), (2, 2)],
    Letter(1, 1): [(0, 0), (0, 2)],
    Letter(-1, -1): [(3, 1), (1, 3)],
    Letter(-1, 1): [(0, 1), (0, 3)],
}


def word_to_cmzv(w: Word) -> CmzvCombination:
    if not w.admissible:
        raise InadmissibleError(f"word {w} is not admissible")
    blocks, run = [], 1
    for a in w.letters:
        if a.is_zero:
            run += 1
        else:
            blocks.append((run, _FORMS[a]))
            run = 1
    real, imag = LinComb(), LinComb()
    for choice in product(*(forms for _, forms in blocks)):
        phase = sum(c for c, _ in choice) % 4
        poles = [b for _, b in choice]
        z = tuple((-poles[0] if j == 0 else poles[j - 1] - poles[j]) % 4 for j in range(len(poles)))
        idx = CmzvIndex(tuple(k for k, _ in blocks), z)
        if phase == 0:
            real += LinComb.of(idx, 1)
        elif phase == 2:
            real += LinComb.of(idx, -1)
        elif phase == 1:
            imag += LinComb.of(idx, 1)
        else:
            imag += LinComb.of(idx, -1)
    return CmzvCombination(real, imag)
