"""Signed words in anticommuting generators e_1..e_n ("multiplying triplets").

A word is kept as a strictly increasing tuple of generator indices.  Products
are normalised by bubble-sorting the concatenated word, flipping the sign for
every exchange of two distinct generators, then collapsing each adjacent pair
e_k e_k into the scalar q_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .grading import DimensionError, GradeVec


@dataclass(frozen=True)
class SquareConvention:
    """Squares of the generators: e_k * e_k = q[k-1] * 1."""

    q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(self.q))
        if any(s not in (1, -1) for s in self.q):
            raise ValueError(f"generator squares must be +1 or -1, got {self.q}")

    @classmethod
    def positive(cls, n: int) -> "SquareConvention":
        return cls((1,) * n)

    def __len__(self):
        return len(self.q)

    def square(self, k: int) -> int:
        return self.q[k - 1]


@dataclass(frozen=True)
class SignedMonomial:
    sign: int
    word: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if any(b <= a for a, b in zip(self.word, self.word[1:])):
            raise ValueError(f"word must be strictly increasing, got {self.word}")
        if self.word and not (1 <= self.word[0] and self.word[-1] <= self.n):
            raise ValueError(f"generator index out of range 1..{self.n} in {self.word}")

    @classmethod
    def unit(cls, n: int) -> "SignedMonomial":
        return cls(1, (), n)

    @classmethod
    def from_grade(cls, g: GradeVec, sign: int = 1) -> "SignedMonomial":
        """Inverse of grade_of: the triplet notation (0,1_2,1_3) becomes +e[2,3]."""
        return cls(sign, tuple(c + 1 for c, b in enumerate(g.to_tuple()) if b), g.width)

    def __neg__(self):
        return SignedMonomial(-self.sign, self.word, self.n)

    def __mul__(self, other: "SignedMonomial") -> "SignedMonomial":
        return mono_mul(self, other)

    def __str__(self):
        s = "+" if self.sign > 0 else "-"
        if not self.word:
            return s + "1"
        return s + "e[" + ",".join(map(str, self.word)) + "]"


def bubble_normalize(letters: Sequence[int]) -> tuple[int, list[int]]:
    """Sort ``letters`` by adjacent transpositions; returns (exchange count, sorted list).

    Only exchanges of distinct generators are performed and counted, so equal
    letters end up adjacent without contributing a sign.
    """
    word = list(letters)
    swaps = 0
    changed = True
    while changed:
        changed = False
        for p in range(len(word) - 1):
            if word[p] > word[p + 1]:
                word[p], word[p + 1] = word[p + 1], word[p]
                swaps += 1
                changed = True
    return swaps, word


def mono_mul(a: SignedMonomial, b: SignedMonomial, conv: SquareConvention | None = None) -> SignedMonomial:
    if a.n != b.n:
        raise DimensionError(f"ambient generator counts differ: {a.n} vs {b.n}")
    if conv is None:
        conv = SquareConvention.positive(a.n)
    elif len(conv) != a.n:
        raise DimensionError(f"square convention has {len(conv)} entries for n={a.n}")

    swaps, word = bubble_normalize(a.word + b.word)
    sign = a.sign * b.sign * (-1 if swaps & 1 else 1)
    while True:
        out = []
        p = 0
        collapsed = False
        while p < len(word):
            if p + 1 < len(word) and word[p] == word[p + 1]:
                sign *= conv.square(word[p])
                p += 2
                collapsed = True
            else:
                out.append(word[p])
                p += 1
        word = out
        if not collapsed:
            break
    return SignedMonomial(sign, tuple(word), a.n)


def crossing_sign(a_word: Sequence[int], b_word: Sequence[int]) -> int:
    """Reordering sign of the word a_word + b_word from the crossing count.

    Independent of bubble_normalize: counts pairs x in a_word, y in b_word with y < x.
    """
    crossings = sum(1 for x in a_word for y in b_word if y < x)
    return -1 if crossings & 1 else 1


def grade_of(m: SignedMonomial) -> GradeVec:
    bits = 0
    for k in m.word:
        bits |= 1 << (k - 1)
    return GradeVec(bits, m.n)


def mono_sign_of_swap(a: SignedMonomial, b: SignedMonomial) -> int:
    """Parity of the grade pairing of a and b.

    For words of even total degree product (|a|*|b| even, in particular for the
    even subalgebra that carries the quaternions) this is exactly the exponent
    in a*b = (-1)**k * b*a.  See ``swap_exponent`` for the unrestricted rule.
    """
    ga, gb = grade_of(a), grade_of(b)
    return bin(ga.bits & gb.bits).count("1") & 1


def swap_exponent(a: SignedMonomial, b: SignedMonomial) -> int:
    """Exponent k with a*b = (-1)**k * b*a for arbitrary words: |a||b| - |a & b| mod 2."""
    overlap = len(set(a.word) & set(b.word))
    return (len(a.word) * len(b.word) - overlap) & 1


def all_words(n: int) -> Iterator[tuple[int, ...]]:
    """Every strictly increasing word over 1..n, ordered by length then lexicographically."""
    for size in range(n + 1):
        yield from combinations(range(1, n + 1), size)


def all_monomials(n: int, signed: bool = False) -> Iterator[SignedMonomial]:
    for word in all_words(n):
        yield SignedMonomial(1, word, n)
        if signed:
            yield SignedMonomial(-1, word, n)


def parse_monomial(text: str, n: int) -> SignedMonomial:
    """Inverse of str(): accepts '+1', '-1', '+e[1,2]', '-e[3]'."""
    text = text.strip()
    if not text or text[0] not in "+-":
        raise ValueError(f"monomial must start with a sign: {text!r}")
    sign = 1 if text[0] == "+" else -1
    body = text[1:]
    if body == "1":
        return SignedMonomial(sign, (), n)
    if not (body.startswith("e[") and body.endswith("]")):
        raise ValueError(f"malformed monomial {text!r}")
    inner = body[2:-1]
    word = tuple(int(tok) for tok in inner.split(",")) if inner else ()
    return SignedMonomial(sign, word, n)
