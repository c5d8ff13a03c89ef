"""Grade vectors in Z_2^n, the parity pairing, and exact linear algebra over F_2.

Grade vectors and matrix rows are stored as Python ints used as bitsets:
component ``c`` of a vector lives in bit ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_WIDTH = 64


class DimensionError(ValueError):
    """Operands of incompatible width or shape."""


@dataclass(frozen=True, order=False)
class GradeVec:
    bits: int
    width: int

    def __post_init__(self):
        if not 1 <= self.width <= MAX_WIDTH:
            raise DimensionError(f"grade width must be in 1..{MAX_WIDTH}, got {self.width}")
        if self.bits < 0 or self.bits >> self.width:
            raise ValueError(f"bits {self.bits:#x} do not fit in width {self.width}")

    @classmethod
    def from_bits(cls, seq: Sequence[int]) -> "GradeVec":
        value = 0
        for c, b in enumerate(seq):
            if b not in (0, 1):
                raise ValueError(f"grade components must be 0 or 1, got {b!r}")
            value |= b << c
        return cls(value, len(seq))

    @classmethod
    def zero(cls, width: int) -> "GradeVec":
        return cls(0, width)

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> c) & 1 for c in range(self.width))

    def __iter__(self):
        return iter(self.to_tuple())

    def __len__(self):
        return self.width

    def __add__(self, other: "GradeVec") -> "GradeVec":
        return add(self, other)

    def __str__(self):
        return "(" + ",".join(str(b) for b in self.to_tuple()) + ")"


def add(a: GradeVec, b: GradeVec) -> GradeVec:
    if a.width != b.width:
        raise DimensionError(f"width mismatch: {a.width} vs {b.width}")
    return GradeVec(a.bits ^ b.bits, a.width)


def parity(a: GradeVec, b: GradeVec) -> int:
    """Mod-2 dot product; the sign of swapping degrees a and b is (-1)**parity."""
    if a.width != b.width:
        raise DimensionError(f"width mismatch: {a.width} vs {b.width}")
    return bin(a.bits & b.bits).count("1") & 1


@dataclass(frozen=True)
class Grading:
    """One grade vector per basis index; index 0 is the unit and must have grade zero."""

    width: int
    grades: tuple[GradeVec, ...]

    def __post_init__(self):
        object.__setattr__(self, "grades", tuple(self.grades))
        for g in self.grades:
            if g.width != self.width:
                raise DimensionError(f"grade {g} does not have width {self.width}")
        if self.grades and self.grades[0].bits:
            raise ValueError(f"the unit must have zero grade, got {self.grades[0]}")

    @classmethod
    def from_lists(cls, grades: Iterable[Sequence[int]], width: int | None = None) -> "Grading":
        vecs = tuple(GradeVec.from_bits(g) for g in grades)
        if width is None:
            if not vecs:
                raise ValueError("cannot infer the width of an empty grading")
            width = vecs[0].width
        return cls(width, vecs)

    def __len__(self):
        return len(self.grades)

    def __getitem__(self, i: int) -> GradeVec:
        return self.grades[i]

    def to_json(self) -> dict:
        return {"grades": [list(g.to_tuple()) for g in self.grades], "width": self.width}

    @classmethod
    def from_json(cls, obj: dict) -> "Grading":
        width = obj["width"]
        if not isinstance(width, int) or isinstance(width, bool):
            raise ValueError("grading 'width' must be an integer")
        return cls.from_lists(obj["grades"], width)


@dataclass(frozen=True)
class F2Matrix:
    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        limit = 1 << self.cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} does not fit in {self.cols} columns")

    @classmethod
    def from_lists(cls, grid: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = len(grid[0]) if grid else 0
        rows = []
        for line in grid:
            if len(line) != cols:
                raise DimensionError("ragged F2 matrix")
            value = 0
            for c, b in enumerate(line):
                if b & 1:
                    value |= 1 << c
            rows.append(value)
        return cls(tuple(rows), cols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, r: int, c: int) -> int:
        return (self.rows[r] >> c) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(row >> c) & 1 for c in range(self.cols)] for row in self.rows]

    def mul_vec(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.cols:
            raise DimensionError(f"vector of length {len(x)} against {self.cols} columns")
        xb = sum(1 << c for c, b in enumerate(x) if b & 1)
        return tuple(bin(row & xb).count("1") & 1 for row in self.rows)


def _eliminate(rows: list[int], cols: int, tags: list[int] | None = None) -> list[int]:
    """In-place Gauss-Jordan elimination; returns pivot columns.

    ``tags`` (same length as ``rows``) receives the same row operations, which
    lets callers track which original rows combine into each reduced row.
    """
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((k for k in range(r, len(rows)) if (rows[k] >> c) & 1), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        if tags is not None:
            tags[r], tags[pivot] = tags[pivot], tags[r]
        for k in range(len(rows)):
            if k != r and (rows[k] >> c) & 1:
                rows[k] ^= rows[r]
                if tags is not None:
                    tags[k] ^= tags[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rref(m: F2Matrix) -> tuple[F2Matrix, int, list[int]]:
    """Reduced row-echelon form, pivoting on the lowest available column first."""
    rows = list(m.rows)
    pivots = _eliminate(rows, m.cols)
    return F2Matrix(tuple(rows), m.cols), len(pivots), pivots


def rank(m: F2Matrix) -> int:
    return rref(m)[1]


def solve_affine(m: F2Matrix, rhs: Sequence[int]) -> tuple[int, ...] | None:
    """Solve m.x = rhs over F_2, free variables set to 0; None when inconsistent."""
    if len(rhs) != m.nrows:
        raise DimensionError(f"rhs has length {len(rhs)}, matrix has {m.nrows} rows")
    aug_bit = 1 << m.cols
    rows = [row | (aug_bit if b & 1 else 0) for row, b in zip(m.rows, rhs)]
    pivots = _eliminate(rows, m.cols + 1)
    if m.cols in pivots:
        return None
    x = [0] * m.cols
    for row, c in zip(rows, pivots):
        x[c] = (row >> m.cols) & 1
    x = tuple(x)
    if m.mul_vec(x) != tuple(b & 1 for b in rhs):
        raise ArithmeticError("F2 solution failed substitution check")
    return x


def inconsistency_certificate(m: F2Matrix, rhs: Sequence[int]) -> list[int] | None:
    """Indices of equations whose sum reads 0 = 1, or None if the system is consistent."""
    if len(rhs) != m.nrows:
        raise DimensionError(f"rhs has length {len(rhs)}, matrix has {m.nrows} rows")
    aug_bit = 1 << m.cols
    rows = [row | (aug_bit if b & 1 else 0) for row, b in zip(m.rows, rhs)]
    tags = [1 << k for k in range(len(rows))]
    _eliminate(rows, m.cols + 1, tags)
    for row, tag in zip(rows, tags):
        if row == aug_bit:
            combo = [k for k in range(len(rows)) if (tag >> k) & 1]
            acc = 0
            acc_rhs = 0
            for k in combo:
                acc ^= m.rows[k]
                acc_rhs ^= rhs[k] & 1
            assert acc == 0 and acc_rhs == 1
            return combo
    return None


def gram_factor(sym: Sequence[Sequence[int]]) -> list[list[int]]:
    """Rows v_i over F_2 whose pairwise dot products reproduce the symmetric matrix ``sym``.

    Each off-diagonal 1 at (a, b) gets a column with ones in rows a and b; a
    further unit column fixes any row whose self-product has the wrong parity.
    Returns an r x m list-of-lists (m may be 0).
    """
    r = len(sym)
    columns: list[set[int]] = []
    degree = [0] * r
    for a in range(r):
        for b in range(a + 1, r):
            if sym[a][b] & 1:
                columns.append({a, b})
                degree[a] ^= 1
                degree[b] ^= 1
    for a in range(r):
        if degree[a] != (sym[a][a] & 1):
            columns.append({a})
    return [[1 if a in col else 0 for col in columns] for a in range(r)]
