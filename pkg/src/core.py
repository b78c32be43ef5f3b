# src/core.py
"""
Index objects for alternating multiple mixed values.

An index is a tuple of components (s, sigma, eps): a positive integer
exponent, a sign sigma and a parity flag eps (+1 selects even summation
variables, -1 odd ones). Text form is ``M(c2,b1,3)``: the prefix ``c``
marks an odd component, ``b`` a negative sign.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Tuple

logger = logging.getLogger("ammv")

FAMILIES = ("Z", "t", "T", "S")


class LinComb:
    """Finite rational linear combination of hashable basis elements."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for basis, coeff in items:
                self._add(basis, coeff)

    @classmethod
    def of(cls, basis, coeff=1) -> "LinComb":
        return cls([(basis, coeff)])

    def _add(self, basis, coeff):
        c = self._terms.get(basis, 0) + Fraction(coeff)
        if c:
            self._terms[basis] = c
        else:
            self._terms.pop(basis, None)

    def items(self):
        return self._terms.items()

    def basis(self):
        return self._terms.keys()

    def coeff(self, basis) -> Fraction:
        return self._terms.get(basis, Fraction(0))

    def sorted_items(self):
        def key(item):
            b = item[0]
            return b.sort_key() if hasattr(b, "sort_key") else (str(b),)
        return sorted(self._terms.items(), key=key)

    def map(self, fn) -> "LinComb":
        """Apply a linear map given on basis elements (fn returns a LinComb)."""
        out = LinComb()
        for b, c in self._terms.items():
            for b2, c2 in fn(b).items():
                out._add(b2, c * c2)
        return out

    def product(self, other: "LinComb", mul) -> "LinComb":
        """Bilinear extension of mul(basis, basis) -> LinComb."""
        out = LinComb()
        for b1, c1 in self._terms.items():
            for b2, c2 in other._terms.items():
                for b3, c3 in mul(b1, b2).items():
                    out._add(b3, c1 * c2 * c3)
        return out

    def __add__(self, other: "LinComb") -> "LinComb":
        out = LinComb(self._terms)
        for b, c in other._terms.items():
            out._add(b, c)
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __neg__(self) -> "LinComb":
        return LinComb({b: -c for b, c in self._terms.items()})

    def __mul__(self, scalar) -> "LinComb":
        if isinstance(scalar, LinComb):
            return NotImplemented
        return LinComb({b: c * scalar for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "LinComb":
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for b, c in self.sorted_items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign} {'' if mag == 1 else str(mag) + '*'}{b}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


class IndexSyntaxError(ValueError):
    """Malformed index text. ``position`` is the offending character offset."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class InadmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    s: int
    sigma: int = 1
    eps: int = 1

    def __post_init__(self):
        if self.s < 1:
            raise ValueError(f"exponent must be positive, got {self.s}")
        if self.sigma not in (1, -1) or self.eps not in (1, -1):
            raise ValueError(f"sign and parity must be +-1, got {self.sigma}, {self.eps}")

    @property
    def divergent(self) -> bool:
        return self.s == 1 and self.sigma == 1

    def __str__(self):
        return ("c" if self.eps == -1 else "") + ("b" if self.sigma == -1 else "") + str(self.s)


@dataclass(frozen=True)
class Index:
    comps: Tuple[Component, ...] = ()

    @classmethod
    def of(cls, *triples) -> "Index":
        """Build from (s, sigma, eps) triples."""
        return cls(tuple(Component(*t) for t in triples))

    @property
    def weight(self) -> int:
        return sum(c.s for c in self.comps)

    @property
    def depth(self) -> int:
        return len(self.comps)

    @property
    def admissible(self) -> bool:
        return not self.comps or not self.comps[0].divergent

    @property
    def s(self) -> Tuple[int, ...]:
        return tuple(c.s for c in self.comps)

    @property
    def sigma(self) -> Tuple[int, ...]:
        return tuple(c.sigma for c in self.comps)

    @property
    def eps(self) -> Tuple[int, ...]:
        return tuple(c.eps for c in self.comps)

    def divergent_prefix(self) -> int:
        """Length of the leading block of (1, +1, *) components."""
        n = 0
        for c in self.comps:
            if not c.divergent:
                break
            n += 1
        return n

    def log_power(self) -> int:
        """Inner (1, +1) components; each adds one power of log to the tail."""
        return sum(1 for c in self.comps[1:] if c.divergent)

    def sort_key(self):
        return (
            self.weight,
            self.depth,
            self.s,
            tuple(c.sigma == -1 for c in self.comps),
            tuple(c.eps == -1 for c in self.comps),
        )

    def __lt__(self, other: "Index"):
        return self.sort_key() < other.sort_key()

    def __add__(self, other: "Index") -> "Index":
        return Index(self.comps + other.comps)

    def __str__(self):
        return format_index(self)


@dataclass(frozen=True)
class FamilyIndex:
    family: str
    k: Tuple[int, ...]
    sigma: Tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if len(self.k) != len(self.sigma):
            raise ValueError("exponents and signs differ in length")

    @property
    def weight(self) -> int:
        return sum(self.k)

    @property
    def depth(self) -> int:
        return len(self.k)

    @property
    def admissible(self) -> bool:
        return not self.k or not (self.k[0] == 1 and self.sigma[0] == 1)

    def __str__(self):
        body = ",".join(("b" if sg == -1 else "") + str(k) for k, sg in zip(self.k, self.sigma))
        return f"{self.family}({body})"


# harmonic sums take the same (family, exponents, signs) triple
HarmonicSumSpec = FamilyIndex


# ────────────────────────────────────────────────
# Parsing and formatting
# ────────────────────────────────────────────────
_HEAD = re.compile(r"\s*([A-Za-z]+)\s*\(")
_COMP = re.compile(r"(c?)(b?)([0-9]+)$")


def _split_body(text: str):
    """Return (family, [(component_text, offset), ...])."""
    head = _HEAD.match(text)
    if not head:
        raise IndexSyntaxError("expected Family(...)", text, 0)
    family = head.group(1)
    if family not in ("M",) + FAMILIES:
        raise IndexSyntaxError(f"unknown family {family!r}", text, head.start(1))
    close = text.rfind(")")
    if close < head.end() - 1 or text[close + 1:].strip():
        raise IndexSyntaxError("missing closing parenthesis", text, len(text.rstrip()))
    body_start = head.end()
    body = text[body_start:close]
    parts = []
    offset = body_start
    if body.strip():
        for chunk in body.split(","):
            lead = len(chunk) - len(chunk.lstrip())
            parts.append((chunk.strip(), offset + lead))
            offset += len(chunk) + 1
    return family, parts


def _parse_components(text: str, parts, allow_parity: bool):
    out = []
    for chunk, pos in parts:
        m = _COMP.match(chunk)
        if not m:
            raise IndexSyntaxError(f"bad component {chunk!r}", text, pos)
        if m.group(1) and not allow_parity:
            raise IndexSyntaxError("parity prefix 'c' only allowed in M(...)", text, pos)
        s = int(m.group(3))
        if s < 1:
            raise IndexSyntaxError("exponent must be positive", text, pos + len(m.group(1) + m.group(2)))
        out.append((s, -1 if m.group(2) else 1, -1 if m.group(1) else 1))
    return out


def parse_index(text: str) -> Index:
    """Parse ``M(...)`` text. Inadmissible indices are accepted and reported."""
    family, parts = _split_body(text)
    if family != "M":
        raise IndexSyntaxError("expected M(...), use parse_family for family symbols", text, 0)
    idx = Index.of(*_parse_components(text, parts, allow_parity=True))
    if not idx.admissible:
        logger.warning(f"Parsed inadmissible index {idx}")
    return idx


def parse_family(text: str) -> FamilyIndex:
    family, parts = _split_body(text)
    if family == "M":
        raise IndexSyntaxError("expected a family symbol Z/t/T/S", text, 0)
    comps = _parse_components(text, parts, allow_parity=False)
    return FamilyIndex(family, tuple(c[0] for c in comps), tuple(c[1] for c in comps))


def parse_symbol(text: str) -> Tuple[Fraction, Index]:
    """Parse any index or family text into (coefficient, Index)."""
    family, _ = _split_body(text)
    if family == "M":
        return Fraction(1), parse_index(text)
    return specialize(parse_family(text))


def format_index(i: Index) -> str:
    return "M(" + ",".join(str(c) for c in i.comps) + ")"


# ────────────────────────────────────────────────
# Families
# ────────────────────────────────────────────────
def family_parities(family: str, depth: int) -> Tuple[int, ...]:
    if family == "Z":
        return (1,) * depth
    if family == "t":
        return (-1,) * depth
    if family == "T":
        return tuple((-1) ** (depth + 1 - j) for j in range(1, depth + 1))
    if family == "S":
        return tuple((-1) ** (depth - j) for j in range(1, depth + 1))
    raise ValueError(f"unknown family {family!r}")


def specialize(spec: FamilyIndex) -> Tuple[Fraction, Index]:
    """Express a family value as c * M(i)."""
    r, w = spec.depth, spec.weight
    eps = family_parities(spec.family, r)
    idx = Index.of(*zip(spec.k, spec.sigma, eps))
    if spec.family == "Z":
        c = Fraction(2) ** (w - r)
    elif spec.family == "t":
        c = Fraction(1, 2 ** r)
    else:
        c = Fraction(1)
    return c, idx


# ────────────────────────────────────────────────
# Enumeration
# ────────────────────────────────────────────────
def compositions(w: int) -> Iterator[Tuple[int, ...]]:
    if w == 0:
        yield ()
        return
    for first in range(1, w + 1):
        for rest in compositions(w - first):
            yield (first,) + rest


def all_indices(weight: int, admissible: bool = True) -> List[Index]:
    """Every index of the given weight in canonical order."""
    out = []
    for ks in compositions(weight):
        for signs in product((1, -1), repeat=len(ks)):
            for pars in product((1, -1), repeat=len(ks)):
                idx = Index.of(*zip(ks, signs, pars))
                if idx.admissible or not admissible:
                    out.append(idx)
    return sorted(out, key=Index.sort_key)


def family_indices(family: str, weight: int) -> List[FamilyIndex]:
    out = []
    for ks in compositions(weight):
        for signs in product((1, -1), repeat=len(ks)):
            spec = FamilyIndex(family, ks, signs)
            if spec.admissible:
                out.append(spec)
    return out


# ────────────────────────────────────────────────
# Harmonic sums of the T and S families
# ────────────────────────────────────────────────
@lru_cache(maxsize=None)
def _harmonic_table(family: str, k: Tuple[int, ...], sigma: Tuple[int, ...], n: int) -> Tuple[Fraction, ...]:
    """Values of the truncated sum at every upper bound 0..n."""
    if not k:
        return (Fraction(1),) * (n + 1)
    rest = _harmonic_table(family, k[1:], sigma[1:], n)
    r = len(k)
    # T at odd depth and S at even depth run over odd denominators up to n inclusive
    odd_kind = (family == "T") == (r % 2 == 1)
    values = [Fraction(0)] * (n + 1)
    acc = Fraction(0)
    for top in range(1, n + 1):
        if odd_kind:
            acc += 2 * rest[top] * sigma[0] ** top / Fraction(2 * top - 1) ** k[0]
            values[top] = acc
        else:
            values[top] = acc
            acc += 2 * rest[top] * sigma[0] ** top / Fraction(2 * top) ** k[0]
    return tuple(values)


def harmonic_sum(spec: HarmonicSumSpec, n: int) -> Fraction:
    """Exact T_n or S_n partial sum. The empty index gives 1."""
    if spec.family not in ("T", "S"):
        raise ValueError(f"harmonic sums are defined for T and S, not {spec.family!r}")
    if n < 0:
        raise ValueError("n must be non-negative")
    return _harmonic_table(spec.family, spec.k, spec.sigma, n)[n]
