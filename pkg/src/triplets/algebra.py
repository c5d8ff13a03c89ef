"""Finite-dimensional algebras given by structure tables, with exact rational coefficients.

Basis index 0 is always the unit.  A table cell holds the product of two basis
elements as a canonical sparse list of (coefficient, index) pairs, sorted by
index, without zero coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .grading import GradeVec, Grading, add, parity
from .monomials import (
    SignedMonomial,
    SquareConvention,
    all_words,
    grade_of,
    mono_mul,
)

Term = tuple[Fraction, int]
Cell = tuple[Term, ...]

MAX_CLIFFORD_GENERATORS = 8


class AlgebraDomainError(ValueError):
    """Operation applied to elements of different tables or to an unsupported table."""


def canonical_cell(terms: Iterable[tuple[object, int]]) -> Cell:
    acc: dict[int, Fraction] = {}
    for coeff, idx in terms:
        acc[idx] = acc.get(idx, Fraction(0)) + Fraction(coeff)
    return tuple((c, idx) for idx, c in sorted(acc.items()) if c != 0)


def negate_cell(cell: Cell) -> Cell:
    return tuple((-c, idx) for c, idx in cell)


def monomial_term(cell: Cell) -> tuple[int, int] | None:
    """(sign, index) when the cell is +-b_index, otherwise None."""
    if len(cell) == 1 and cell[0][0] in (1, -1):
        return int(cell[0][0]), cell[0][1]
    return None


@dataclass(frozen=True)
class StructureTable:
    dim: int
    names: tuple[str, ...]
    table: tuple[tuple[Cell, ...], ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        rows = tuple(tuple(canonical_cell(cell) for cell in row) for row in self.table)
        object.__setattr__(self, "table", rows)
        if self.dim < 1:
            raise ValueError("an algebra needs at least the unit")
        if len(self.names) != self.dim or len(set(self.names)) != self.dim:
            raise ValueError("need exactly dim distinct basis names")
        if len(rows) != self.dim or any(len(row) != self.dim for row in rows):
            raise ValueError(f"structure table must be {self.dim}x{self.dim}")
        for row in rows:
            for cell in row:
                for _, idx in cell:
                    if not 0 <= idx < self.dim:
                        raise ValueError(f"basis index {idx} out of range")
        for j in range(self.dim):
            unit = ((Fraction(1), j),)
            if rows[0][j] != unit or rows[j][0] != unit:
                raise ValueError(f"index 0 is not a two-sided unit (fails at basis {self.names[j]})")

    def cell(self, i: int, j: int) -> Cell:
        return self.table[i][j]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def basis(self, i: int) -> "Element":
        return Element(self, {i: Fraction(1)})

    def element(self, coeffs: Mapping[int, object] | Sequence[object]) -> "Element":
        if isinstance(coeffs, Mapping):
            return Element(self, {i: Fraction(c) for i, c in coeffs.items()})
        return Element(self, {i: Fraction(c) for i, c in enumerate(coeffs)})

    def __getitem__(self, name: str) -> "Element":
        return self.basis(self.index(name))

    def is_monomial(self) -> bool:
        """Every basis product is zero or +-(one basis element)."""
        return all(not cell or monomial_term(cell) is not None for row in self.table for cell in row)


class Element:
    __slots__ = ("table", "coeffs")

    def __init__(self, table: StructureTable, coeffs: Mapping[int, Fraction]):
        self.table = table
        self.coeffs = {i: Fraction(c) for i, c in coeffs.items() if c != 0}

    def _check(self, other: "Element"):
        if other.table is not self.table and other.table != self.table:
            raise AlgebraDomainError("elements belong to different tables")

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.table.element({0: other})
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, Fraction(0)) + c
        return Element(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.table, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return elem_mul(self, other)
        s = Fraction(other)
        return Element(self.table, {i: s * c for i, c in self.coeffs.items()})

    def __rmul__(self, other):
        s = Fraction(other)
        return Element(self.table, {i: s * c for i, c in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.table == other.table and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({0: Fraction(other)} if other != 0 else {})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs.get(i, Fraction(0))

    def terms(self) -> Cell:
        return canonical_cell((c, i) for i, c in self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in sorted(self.coeffs.items()):
            name = self.table.names[i]
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def elem_mul(x: Element, y: Element) -> Element:
    x._check(y)
    t = x.table
    out: dict[int, Fraction] = {}
    for i, a in x.coeffs.items():
        for j, b in y.coeffs.items():
            for c, k in t.cell(i, j):
                out[k] = out.get(k, Fraction(0)) + a * b * c
    return Element(t, out)


@dataclass(frozen=True)
class Involution:
    """Diagonal conjugation b_i -> signs[i] * b_i."""

    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(self.signs))
        if not self.signs or self.signs[0] != 1:
            raise ValueError("an involution must fix the unit")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("involution signs must be +1 or -1")

    @classmethod
    def standard(cls, dim: int) -> "Involution":
        """+1 on the unit and -1 on every other basis element."""
        return cls((1,) + (-1,) * (dim - 1))

    def apply(self, x: Element) -> Element:
        return Element(x.table, {i: self.signs[i] * c for i, c in x.coeffs.items()})


def table_from_monomials(names: Sequence[str], images: Sequence[SignedMonomial], conv: SquareConvention) -> StructureTable:
    """Table whose products are computed by mono_mul on the image monomials.

    Each basis element is represented by a signed monomial; the set of images
    (up to sign) must be closed under multiplication.
    """
    lookup = {m.word: (m.sign, idx) for idx, m in enumerate(images)}
    rows = []
    for a in images:
        row = []
        for b in images:
            p = mono_mul(a, b, conv)
            if p.word not in lookup:
                raise ValueError(f"product {a}*{b} = {p} leaves the span of the images")
            s, k = lookup[p.word]
            row.append(((Fraction(p.sign * s), k),))
        rows.append(tuple(row))
    return StructureTable(len(names), tuple(names), tuple(rows))


QUATERNION_NAMES = ("1", "i", "j", "k")
# i -> e2 e3, j -> e1 e3, k -> e1 e2 inside the algebra with e_n^2 = 1
QUATERNION_WORDS = ((), (2, 3), (1, 3), (1, 2))


def quaternion_images() -> list[SignedMonomial]:
    return [SignedMonomial(1, w, 3) for w in QUATERNION_WORDS]


def build_quaternions() -> tuple[StructureTable, Grading]:
    images = quaternion_images()
    t = table_from_monomials(QUATERNION_NAMES, images, SquareConvention.positive(3))
    grading = Grading(3, tuple(grade_of(m) for m in images))
    return t, grading


def quaternion_grading() -> Grading:
    """The triple degree: 1 -> (0,0,0), i -> (0,1,1), j -> (1,0,1), k -> (1,1,0)."""
    return Grading.from_lists([(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])


def clifford_name(word: Sequence[int]) -> str:
    return "e" + "".join(map(str, word)) if word else "1"


def clifford_words(n: int) -> list[tuple[int, ...]]:
    return list(all_words(n))


def build_clifford(n: int, conv: SquareConvention | None = None) -> StructureTable:
    if not 1 <= n <= MAX_CLIFFORD_GENERATORS:
        raise ValueError(f"Clifford generator count must be in 1..{MAX_CLIFFORD_GENERATORS}, got {n}")
    if conv is None:
        conv = SquareConvention.positive(n)
    if len(conv) != n:
        raise ValueError(f"square convention has {len(conv)} entries for n={n}")
    words = clifford_words(n)
    images = [SignedMonomial(1, w, n) for w in words]
    return table_from_monomials([clifford_name(w) for w in words], images, conv)


def clifford_grading(n: int) -> Grading:
    """Indicator grading of the monomial basis of Cl(n), in build_clifford order."""
    return Grading(n, tuple(grade_of(SignedMonomial(1, w, n)) for w in clifford_words(n)))


def build_real() -> tuple[StructureTable, Involution]:
    return StructureTable(1, ("1",), ((((Fraction(1), 0),),),)), Involution((1,))


def cayley_dickson_double(
    t: StructureTable,
    inv: Involution,
    gamma: object = -1,
    names: Sequence[str] | None = None,
) -> tuple[StructureTable, Involution]:
    """Double t on pairs (a, b) with (a,b)(c,d) = (ac + gamma*conj(d)*b, da + b*conj(c)).

    Index i < dim is (b_i, 0); index dim + i is (0, b_i).  The new conjugation
    is conj(a, b) = (conj(a), -b).
    """
    gamma = Fraction(gamma)
    d = t.dim
    if len(inv.signs) != d:
        raise ValueError("involution size does not match the table")
    zero = Element(t, {})

    def unit_pair(idx):
        return (t.basis(idx), zero) if idx < d else (zero, t.basis(idx - d))

    rows = []
    for p in range(2 * d):
        a, b = unit_pair(p)
        row = []
        for q in range(2 * d):
            c, dd = unit_pair(q)
            first = a * c + gamma * (inv.apply(dd) * b)
            second = dd * a + b * inv.apply(c)
            row.append(tuple(first.terms()) + tuple((coef, idx + d) for coef, idx in second.terms()))
        rows.append(tuple(row))
    if names is None:
        fresh = next(g for g in ("l", "m", "n", "p", "q", "r", "s", "u", "v", "w")
                     if not any(g in n for n in t.names))
        names = list(t.names) + [fresh if n == "1" else f"{n}{fresh}" for n in t.names]
    new_inv = Involution(inv.signs + (-1,) * d)
    return StructureTable(2 * d, tuple(names), tuple(rows)), new_inv


OCTONION_NAMES = ("1", "e1", "e2", "e3", "e4", "e5", "e6", "e7")


def build_octonions() -> StructureTable:
    """Double of the quaternions with gamma = -1.

    e1, e2, e3 = (i,0), (j,0), (k,0); e4 = (0,1); e5, e6, e7 = (0,i), (0,j), (0,k).
    """
    h, _ = build_quaternions()
    o, _ = cayley_dickson_double(h, Involution.standard(4), -1, names=OCTONION_NAMES)
    return o


class Commutation(enum.Enum):
    COMMUTE = "commute"
    ANTICOMMUTE = "anticommute"
    NEITHER = "neither"


def commutation_relation(t: StructureTable, i: int, j: int) -> Commutation:
    if not (0 <= i < t.dim and 0 <= j < t.dim):
        raise IndexError(f"basis index out of range for dim {t.dim}")
    ij, ji = t.cell(i, j), t.cell(j, i)
    if ij == ji:
        return Commutation.COMMUTE
    if ij == negate_cell(ji):
        return Commutation.ANTICOMMUTE
    return Commutation.NEITHER


@dataclass(frozen=True)
class Violation:
    """First failing basis pair of a grading check.

    For kind 'commutation' the signs are +1/-1 (0 means the pair neither
    commutes nor anticommutes).  For kind 'linearity' ``expected`` is the sum
    of the two grades and ``found`` the grade of an offending product term.
    """

    i: int
    j: int
    kind: str
    expected: object
    found: object

    def to_json(self, t: StructureTable | None = None) -> dict:
        out = {"i": self.i, "j": self.j, "kind": self.kind,
               "expected": _jsonable(self.expected), "found": _jsonable(self.found)}
        if t is not None:
            out["pair"] = [t.names[self.i], t.names[self.j]]
        return out


def _jsonable(v):
    return list(v.to_tuple()) if isinstance(v, GradeVec) else v


def check_graded_commutative(t: StructureTable, g: Grading) -> Violation | None:
    """None when both the sign rule and the linearity rule hold on every basis pair."""
    if len(g) != t.dim:
        raise ValueError(f"grading covers {len(g)} basis elements, table has {t.dim}")
    for i, j in product(range(t.dim), repeat=2):
        expected = -1 if parity(g[i], g[j]) else 1
        rel = commutation_relation(t, i, j)
        found = {Commutation.COMMUTE: 1, Commutation.ANTICOMMUTE: -1, Commutation.NEITHER: 0}[rel]
        # a zero product both commutes and anticommutes
        if found != expected and t.cell(i, j):
            return Violation(i, j, "commutation", expected, found)
        target = add(g[i], g[j])
        for _, k in t.cell(i, j):
            if g[k] != target:
                return Violation(i, j, "linearity", target, g[k])
    return None


def _euclidean_supported(t: StructureTable) -> bool:
    cached = t._cache.get("euclidean")
    if cached is None:
        minus_one = ((Fraction(-1), 0),)
        cached = t.is_monomial() and all(t.cell(i, i) == minus_one for i in range(1, t.dim)) and all(
            commutation_relation(t, i, j) is Commutation.ANTICOMMUTE
            for i in range(1, t.dim) for j in range(i + 1, t.dim)
        )
        t._cache["euclidean"] = cached
    return cached


def norm_squared(x: Element) -> Fraction:
    """Sum of squared coefficients, for tables whose imaginary units square to -1 and anticommute."""
    if not _euclidean_supported(x.table):
        raise AlgebraDomainError("norm_squared needs a composition algebra with an orthonormal unit basis")
    return sum((c * c for c in x.coeffs.values()), Fraction(0))


def associator(x: Element, y: Element, z: Element) -> Element:
    return (x * y) * z - x * (y * z)


def find_nonassociative_triple(t: StructureTable) -> tuple[int, int, int] | None:
    for i, j, k in product(range(t.dim), repeat=3):
        a, b, c = t.basis(i), t.basis(j), t.basis(k)
        if not associator(a, b, c).is_zero():
            return i, j, k
    return None


# JSON

def table_to_json(t: StructureTable) -> dict:
    return {
        "dim": t.dim,
        "names": list(t.names),
        "table": [
            [[[c.numerator, c.denominator, idx] for c, idx in cell] for cell in row]
            for row in t.table
        ],
    }


def _as_int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"{what} must be an integer, got {v!r}")
    return v


def parse_terms(raw, dim: int, what: str) -> Cell:
    if not isinstance(raw, list):
        raise ValueError(f"{what} must be a list of [num, den, index] triples")
    terms = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ValueError(f"{what}: term {entry!r} is not a [num, den, index] triple")
        num = _as_int(entry[0], f"{what} numerator")
        den = _as_int(entry[1], f"{what} denominator")
        idx = _as_int(entry[2], f"{what} index")
        if den == 0:
            raise ValueError(f"{what}: zero denominator")
        if not 0 <= idx < dim:
            raise ValueError(f"{what}: index {idx} out of range 0..{dim - 1}")
        terms.append((Fraction(num, den), idx))
    return canonical_cell(terms)


def table_from_json(obj) -> StructureTable:
    if not isinstance(obj, dict):
        raise ValueError("structure table JSON must be an object")
    for key in ("dim", "names", "table"):
        if key not in obj:
            raise ValueError(f"structure table JSON lacks '{key}'")
    dim = _as_int(obj["dim"], "dim")
    names = obj["names"]
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise ValueError("'names' must be a list of strings")
    raw = obj["table"]
    if not isinstance(raw, list) or len(raw) != dim or any(not isinstance(r, list) or len(r) != dim for r in raw):
        raise ValueError(f"'table' must be a {dim}x{dim} grid")
    rows = tuple(
        tuple(parse_terms(raw[i][j], dim, f"table[{i}][{j}]") for j in range(dim))
        for i in range(dim)
    )
    return StructureTable(dim, tuple(names), rows)


def grading_to_json(g: Grading) -> dict:
    return g.to_json()


def grading_from_json(obj) -> Grading:
    if not isinstance(obj, dict) or "width" not in obj or "grades" not in obj:
        raise ValueError("grading JSON must be an object with 'width' and 'grades'")
    return Grading.from_json(obj)


def build_group_algebra_z2(n: int) -> StructureTable:
    """Real group algebra of Z_2^n: basis elements multiply by XOR of their labels, all commute."""
    if not 1 <= n <= MAX_CLIFFORD_GENERATORS:
        raise ValueError(f"n must be in 1..{MAX_CLIFFORD_GENERATORS}, got {n}")
    words = clifford_words(n)
    bits = [sum(1 << (k - 1) for k in w) for w in words]
    pos = {b: idx for idx, b in enumerate(bits)}
    names = ["1"] + ["g" + "".join(map(str, w)) for w in words[1:]]
    rows = tuple(tuple(((Fraction(1), pos[a ^ b]),) for b in bits) for a in bits)
    return StructureTable(len(words), tuple(names), rows)


def render_table(t: StructureTable, cell_text=None) -> str:
    """Plain-text multiplication grid; row label times column label."""
    if cell_text is None:
        def cell_text(cell):
            if not cell:
                return "0"
            parts = []
            for c, k in cell:
                name = t.names[k]
                if c == 1:
                    parts.append(name)
                elif c == -1:
                    parts.append("-" + name)
                else:
                    parts.append(f"{c}*{name}")
            return "+".join(parts).replace("+-", "-")
    grid = [[""] + list(t.names)]
    for i in range(t.dim):
        grid.append([t.names[i]] + [cell_text(t.cell(i, j)) for j in range(t.dim)])
    widths = [max(len(row[c]) for row in grid) for c in range(t.dim + 1)]
    lines = []
    for r, row in enumerate(grid):
        lines.append(" | ".join(text.rjust(w) for text, w in zip(row, widths)).rstrip())
        if r == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)
