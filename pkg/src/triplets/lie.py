"""Lie algebras from structure constants and their quaternionization H (x) g.

Brackets of basis elements are stored as canonical sparse cells, the same
representation the algebra module uses for products.  Vectors handed to the
subspace routines are dense lists of Fractions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .algebra import Cell, build_quaternions, canonical_cell, negate_cell, parse_terms
from .grading import GradeVec, Grading, add, parity


class LieDomainError(ValueError):
    pass


@dataclass(frozen=True)
class LieStructure:
    dim: int
    names: tuple[str, ...]
    constants: tuple[tuple[Cell, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        consts = tuple(tuple(canonical_cell(c) for c in row) for row in self.constants)
        object.__setattr__(self, "constants", consts)
        if len(self.names) != self.dim or len(consts) != self.dim or any(len(r) != self.dim for r in consts):
            raise ValueError(f"Lie structure needs {self.dim} names and a {self.dim}x{self.dim} bracket table")

    def bracket_basis(self, i: int, j: int) -> Cell:
        return self.constants[i][j]

    def sign(self, i: int, j: int) -> int:
        """Sign in [b_i, b_j] = -sign * [b_j, b_i]; always +1 for an ungraded algebra."""
        return 1

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: Mapping[tuple[int, int], Sequence[tuple[object, int]]]) -> "LieStructure":
        """Build from i<j brackets; the rest follows by antisymmetry."""
        dim = len(names)
        grid = [[() for _ in range(dim)] for _ in range(dim)]
        for (i, j), terms in brackets.items():
            if i >= j:
                raise ValueError(f"give brackets with i < j only, got ({i}, {j})")
            cell = canonical_cell(terms)
            grid[i][j] = cell
            grid[j][i] = negate_cell(cell)
        return cls(dim, tuple(names), tuple(tuple(r) for r in grid))


@dataclass(frozen=True)
class GradedLieStructure(LieStructure):
    grading: Grading = None

    def __post_init__(self):
        super().__post_init__()
        if self.grading is None or len(self.grading) != self.dim:
            raise ValueError("a graded Lie structure needs one grade per basis element")

    def sign(self, i: int, j: int) -> int:
        return -1 if parity(self.grading[i], self.grading[j]) else 1


@dataclass(frozen=True)
class LieViolation:
    kind: str
    indices: tuple[int, ...]

    def describe(self, s: LieStructure) -> str:
        return f"{self.kind} fails at ({', '.join(s.names[i] for i in self.indices)})"


def _axpy(acc: dict[int, Fraction], scale: Fraction, cell: Cell):
    for c, k in cell:
        acc[k] = acc.get(k, Fraction(0)) + scale * c


def bracket(s: LieStructure, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
    acc: dict[int, Fraction] = {}
    for i, a in u.items():
        if not a:
            continue
        for j, b in v.items():
            if b:
                _axpy(acc, a * b, s.bracket_basis(i, j))
    return {k: c for k, c in acc.items() if c != 0}


def _nested(s: LieStructure, a: int, b: int, c: int) -> dict[int, Fraction]:
    """[b_a, [b_b, b_c]] as a sparse dict."""
    acc: dict[int, Fraction] = {}
    for coeff, k in s.bracket_basis(b, c):
        _axpy(acc, coeff, s.bracket_basis(a, k))
    return acc


def _is_zero(acc: Mapping[int, Fraction]) -> bool:
    return all(c == 0 for c in acc.values())


def check_antisymmetry(s: LieStructure) -> LieViolation | None:
    for i in range(s.dim):
        for j in range(i, s.dim):
            expected = negate_cell(s.bracket_basis(j, i))
            if s.sign(i, j) < 0:
                expected = s.bracket_basis(j, i)
            if s.bracket_basis(i, j) != expected:
                return LieViolation("antisymmetry", (i, j))
    return None


def check_graded_jacobi(s: LieStructure) -> LieViolation | None:
    """Cyclic sum  s(a,c)[a,[b,c]] + s(b,a)[b,[c,a]] + s(c,b)[c,[a,b]] = 0 on basis triples.

    s(x, y) = (-1)**parity(grade x, grade y); for an ungraded structure this is the plain Jacobi identity.
    """
    for a, b, c in product(range(s.dim), repeat=3):
        acc: dict[int, Fraction] = {}
        for (x, y, z), sgn in (((a, b, c), s.sign(a, c)), ((b, c, a), s.sign(b, a)), ((c, a, b), s.sign(c, b))):
            for k, v in _nested(s, x, y, z).items():
                acc[k] = acc.get(k, Fraction(0)) + sgn * v
        if not _is_zero(acc):
            return LieViolation("jacobi", (a, b, c))
    return None


def validate_lie(s: LieStructure) -> LieViolation | None:
    return check_antisymmetry(s) or check_graded_jacobi(s)


def check_grading_linearity(gs: GradedLieStructure) -> LieViolation | None:
    for i, j in product(range(gs.dim), repeat=2):
        target = add(gs.grading[i], gs.grading[j])
        if any(gs.grading[k] != target for _, k in gs.bracket_basis(i, j)):
            return LieViolation("grading linearity", (i, j))
    return None


def quaternionize(s: LieStructure) -> GradedLieStructure:
    """Basis p (x) x for p in 1, i, j, k; [p (x) x, q (x) y] = (p q) (x) [x, y]."""
    problem = validate_lie(s)
    if problem is not None:
        raise LieDomainError("input is not a Lie algebra: " + problem.describe(s))
    h, hgrading = build_quaternions()
    d = s.dim
    names = tuple(f"{p}*{x}" for p in h.names for x in s.names)
    grid = []
    for p, x in product(range(4), range(d)):
        row = []
        for q, y in product(range(4), range(d)):
            (hc, r), = h.cell(p, q)
            row.append(tuple((hc * c, r * d + k) for c, k in s.bracket_basis(x, y)))
        grid.append(tuple(row))
    grades = tuple(hgrading[p] for p in range(4) for _ in range(d))
    return GradedLieStructure(4 * d, names, tuple(grid), Grading(hgrading.width, grades))


def degree_zero_block(gs: GradedLieStructure) -> LieStructure:
    """Sub-structure on the basis elements of grade zero (must be closed under the bracket)."""
    keep = [i for i in range(gs.dim) if gs.grading[i].bits == 0]
    pos = {i: n for n, i in enumerate(keep)}
    grid = []
    for i in keep:
        row = []
        for j in keep:
            cell = gs.bracket_basis(i, j)
            if any(k not in pos for _, k in cell):
                raise LieDomainError("degree-zero part is not closed under the bracket")
            row.append(tuple((c, pos[k]) for c, k in cell))
        grid.append(tuple(row))
    return LieStructure(len(keep), tuple(gs.names[i] for i in keep), tuple(grid))


def trivially_graded(s: LieStructure, width: int = 3) -> GradedLieStructure:
    return GradedLieStructure(s.dim, s.names, s.constants, Grading(width, (GradeVec.zero(width),) * s.dim))


def direct_sum_abelian(s: LieStructure, extra: int = 1, prefix: str = "z") -> LieStructure:
    """s (+) R^extra with the new directions central."""
    d = s.dim + extra
    names = tuple(s.names) + tuple(f"{prefix}{n + 1}" for n in range(extra))
    grid = [[() for _ in range(d)] for _ in range(d)]
    for i in range(s.dim):
        for j in range(s.dim):
            grid[i][j] = s.bracket_basis(i, j)
    return LieStructure(d, names, tuple(tuple(r) for r in grid))


def sl2() -> LieStructure:
    return LieStructure.from_brackets(
        ("h", "e", "f"),
        {(0, 1): [(2, 1)], (0, 2): [(-2, 2)], (1, 2): [(1, 0)]},
    )


def so3() -> LieStructure:
    return LieStructure.from_brackets(
        ("x", "y", "z"),
        {(0, 1): [(1, 2)], (1, 2): [(1, 0)], (0, 2): [(-1, 1)]},
    )


def abelian(dim: int) -> LieStructure:
    return LieStructure(dim, tuple(f"a{n + 1}" for n in range(dim)), tuple(((),) * dim for _ in range(dim)))


BUILTIN_LIE = {"sl2": sl2, "so3": so3}


# exact subspace arithmetic

class _Echelon:
    """Fully reduced row basis of a subspace of Q^dim, keyed by pivot column."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, list[Fraction]] = {}

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        w = list(v)
        for p, row in self.rows.items():
            if w[p]:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def insert(self, v: Sequence[Fraction]) -> list[Fraction] | None:
        w = self.reduce(v)
        p = next((c for c, a in enumerate(w) if a), None)
        if p is None:
            return None
        inv = 1 / w[p]
        w = [a * inv for a in w]
        for q, row in self.rows.items():
            if row[p]:
                f = row[p]
                self.rows[q] = [a - f * b for a, b in zip(row, w)]
        self.rows[p] = w
        return w

    def basis(self) -> list[tuple[Fraction, ...]]:
        return [tuple(self.rows[p]) for p in sorted(self.rows)]


def _dense(v, dim: int) -> list[Fraction]:
    if isinstance(v, Mapping):
        out = [Fraction(0)] * dim
        for k, c in v.items():
            out[k] = Fraction(c)
        return out
    if len(v) != dim:
        raise LieDomainError(f"vector of length {len(v)} in a {dim}-dimensional algebra")
    return [Fraction(c) for c in v]


def _sparse(v: Sequence[Fraction]) -> dict[int, Fraction]:
    return {k: c for k, c in enumerate(v) if c}


def ideal_closure(s: LieStructure, seed) -> list[tuple[Fraction, ...]]:
    """Reduced basis of the smallest two-sided ideal containing ``seed``."""
    start = _dense(seed, s.dim)
    if not any(start):
        raise LieDomainError("ideal closure needs a nonzero seed")
    span = _Echelon(s.dim)
    pending = [span.insert(start)]
    while pending:
        v = _sparse(pending.pop())
        for i in range(s.dim):
            unit = {i: Fraction(1)}
            for w in (bracket(s, unit, v), bracket(s, v, unit)):
                if w:
                    new = span.insert(_dense(w, s.dim))
                    if new is not None:
                        pending.append(new)
    return span.basis()


def null_space(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    reduced = _Echelon(ncols)
    for r in rows:
        reduced.insert(r)
    pivots = set(reduced.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for p, row in reduced.rows.items():
            v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def center(s: LieStructure) -> list[tuple[Fraction, ...]]:
    """Vectors v with [b_i, v] = [v, b_i] = 0 for every basis element."""
    rows = []
    for i in range(s.dim):
        for side in (0, 1):
            eq = [[Fraction(0)] * s.dim for _ in range(s.dim)]
            for j in range(s.dim):
                cell = s.bracket_basis(i, j) if side == 0 else s.bracket_basis(j, i)
                for c, k in cell:
                    eq[k][j] += c
            rows.extend(eq)
    return null_space(rows, s.dim)


def random_rational_vector(rng: random.Random, dim: int, bound: int = 5) -> list[Fraction]:
    while True:
        v = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(dim)]
        if any(v):
            return v


# JSON

def lie_to_json(s: LieStructure) -> dict:
    brackets = []
    for i in range(s.dim):
        for j in range(i + 1, s.dim):
            cell = s.bracket_basis(i, j)
            if cell:
                brackets.append({"i": i, "j": j, "terms": [[c.numerator, c.denominator, k] for c, k in cell]})
    out = {"brackets": brackets, "dim": s.dim, "names": list(s.names)}
    if isinstance(s, GradedLieStructure):
        out["grading"] = s.grading.to_json()
    return out


def lie_from_json(obj) -> LieStructure:
    """Read i<j brackets; the j>i entries follow by (graded, if 'grading' is present) antisymmetry."""
    if not isinstance(obj, dict):
        raise ValueError("Lie structure JSON must be an object")
    for key in ("dim", "names", "brackets"):
        if key not in obj:
            raise ValueError(f"Lie structure JSON lacks '{key}'")
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ValueError("'dim' must be a positive integer")
    names = obj["names"]
    if not isinstance(names, list) or len(names) != dim or not all(isinstance(n, str) for n in names):
        raise ValueError(f"'names' must list {dim} strings")
    grading = Grading.from_json(obj["grading"]) if "grading" in obj else None
    if grading is not None and len(grading) != dim:
        raise ValueError("grading length does not match 'dim'")
    grid = [[() for _ in range(dim)] for _ in range(dim)]
    if not isinstance(obj["brackets"], list):
        raise ValueError("'brackets' must be a list")
    for n, entry in enumerate(obj["brackets"]):
        if not isinstance(entry, dict) or not {"i", "j", "terms"} <= set(entry):
            raise ValueError(f"brackets[{n}] must have 'i', 'j' and 'terms'")
        i, j = entry["i"], entry["j"]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)) or not 0 <= i < j < dim:
            raise ValueError(f"brackets[{n}]: need 0 <= i < j < {dim}")
        cell = parse_terms(entry["terms"], dim, f"brackets[{n}]")
        grid[i][j] = cell
        odd = grading is not None and parity(grading[i], grading[j])
        grid[j][i] = cell if odd else negate_cell(cell)
    if grading is None:
        return LieStructure(dim, tuple(names), tuple(tuple(r) for r in grid))
    return GradedLieStructure(dim, tuple(names), tuple(tuple(r) for r in grid), grading)
