"""Existence of Z_2^m gradings on monomial algebras.

The unknowns are the parities P[i][j] = <sigma(b_i), sigma(b_j)> mod 2 for
every unordered pair of basis elements.  The commutation pattern of the table
fixes P on each pair, and every product b_k = +-b_i b_j forces
P[l][k] = P[l][i] + P[l][j] for all l.  If that affine F_2 system is
consistent, the solved P is factored into explicit grade vectors; otherwise
an obstruction quadruple is extracted from the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import (
    Commutation,
    StructureTable,
    check_graded_commutative,
    commutation_relation,
    monomial_term,
)
from .grading import (
    F2Matrix,
    GradeVec,
    Grading,
    MAX_WIDTH,
    gram_factor,
    inconsistency_certificate,
    parity,
    rref,
    solve_affine,
)

__all__ = [
    "Grading",
    "ParityConstraintSystem",
    "ObstructionWitness",
    "Infeasible",
    "UnsupportedTable",
    "SearchSizeError",
    "derive_constraints",
    "solve_grading",
    "exhaustive_grading_search",
    "parity_matrix_of",
    "find_witness",
    "verify_witness",
]

MAX_SEARCH_WIDTH = 4
MAX_SEARCH_DIM = 16


class UnsupportedTable(ValueError):
    """The grading question is ill-posed for this table."""


class SearchSizeError(ValueError):
    pass


@dataclass(frozen=True)
class ParityConstraintSystem:
    k: int
    matrix: F2Matrix
    rhs: tuple[int, ...]
    labels: tuple[str, ...]

    @property
    def n_unknowns(self) -> int:
        return self.k * (self.k + 1) // 2

    def unknown(self, i: int, j: int) -> int:
        """Column of P[i][j] (symmetric, so P[i][j] and P[j][i] share a column)."""
        if i > j:
            i, j = j, i
        # row-major over the upper triangle
        return i * self.k - i * (i - 1) // 2 + (j - i)

    def parity_matrix(self, x) -> list[list[int]]:
        return [[x[self.unknown(i, j)] for j in range(self.k)] for i in range(self.k)]


def derive_constraints(t: StructureTable) -> ParityConstraintSystem:
    k = t.dim
    rows: list[int] = []
    rhs: list[int] = []
    labels: list[str] = []
    proto = ParityConstraintSystem(k, F2Matrix((), k * (k + 1) // 2), (), ())
    col = proto.unknown
    names = t.names

    seen: set[tuple[int, int]] = set()

    def emit(bits, value, label):
        if (bits, value) in seen:
            return
        seen.add((bits, value))
        rows.append(bits)
        rhs.append(value)
        labels.append(label)

    for i in range(k):
        emit(1 << col(i, i), 0, f"P[{names[i]}][{names[i]}] = 0")
    for i in range(k):
        for j in range(i + 1, k):
            if not t.cell(i, j) and not t.cell(j, i):
                continue
            rel = commutation_relation(t, i, j)
            if rel is Commutation.NEITHER:
                raise UnsupportedTable(
                    f"{names[i]} and {names[j]} neither commute nor anticommute"
                )
            value = 1 if rel is Commutation.ANTICOMMUTE else 0
            emit(1 << col(i, j), value, f"P[{names[i]}][{names[j]}] = {value} ({rel.value})")
    for i in range(k):
        for j in range(k):
            cell = t.cell(i, j)
            if not cell:
                continue
            term = monomial_term(cell)
            if term is None:
                raise UnsupportedTable(
                    f"product {names[i]}*{names[j]} is not a single signed basis element"
                )
            _, p = term
            for l in range(k):
                bits = (1 << col(l, p)) ^ (1 << col(l, i)) ^ (1 << col(l, j))
                if bits:
                    emit(bits, 0, f"P[{names[l]}][{names[p]}] = P[{names[l]}][{names[i]}] + P[{names[l]}][{names[j]}]")
    return ParityConstraintSystem(k, F2Matrix(tuple(rows), proto.n_unknowns), tuple(rhs), tuple(labels))


@dataclass(frozen=True)
class ObstructionWitness:
    """b_l3 = +-b_l1 b_l2 while b_l4 anticommutes with all three."""

    l1: int
    l2: int
    l3: int
    l4: int

    def chain(self, t: StructureTable) -> str:
        n = t.names
        a, b, c, d = n[self.l1], n[self.l2], n[self.l3], n[self.l4]
        return (
            f"{c} = +-{a}*{b}, so P[{d}][{c}] = P[{d}][{a}] + P[{d}][{b}] = 1 + 1 = 0, "
            f"but {d} anticommutes with {c}, so P[{d}][{c}] = 1"
        )

    def to_json(self, t: StructureTable) -> dict:
        return {
            "chain": self.chain(t),
            "l1": t.names[self.l1],
            "l2": t.names[self.l2],
            "l3": t.names[self.l3],
            "l4": t.names[self.l4],
        }


@dataclass(frozen=True)
class Infeasible:
    witness: ObstructionWitness | None
    certificate: tuple[str, ...]


def _anticommutes(t, a, b):
    return commutation_relation(t, a, b) is Commutation.ANTICOMMUTE


def find_witness(t: StructureTable) -> ObstructionWitness | None:
    """First quadruple in lexicographic (l1, l2, l4) order, or None."""
    for l1 in range(t.dim):
        for l2 in range(t.dim):
            term = monomial_term(t.cell(l1, l2))
            if term is None:
                continue
            l3 = term[1]
            for l4 in range(t.dim):
                if _anticommutes(t, l4, l1) and _anticommutes(t, l4, l2) and _anticommutes(t, l4, l3):
                    return ObstructionWitness(l1, l2, l3, l4)
    return None


def verify_witness(t: StructureTable, w: ObstructionWitness) -> bool:
    """Re-derive the contradiction from the table alone."""
    term = monomial_term(t.cell(w.l1, w.l2))
    if term is None or term[1] != w.l3:
        return False
    p41 = 1 if _anticommutes(t, w.l4, w.l1) else None
    p42 = 1 if _anticommutes(t, w.l4, w.l2) else None
    p43 = 1 if _anticommutes(t, w.l4, w.l3) else None
    if None in (p41, p42, p43):
        return False
    forced = (p41 + p42) % 2
    return forced != p43


def parity_matrix_of(g: Grading) -> list[list[int]]:
    return [[parity(a, b) for b in g.grades] for a in g.grades]


def _realize(t: StructureTable, pm: list[list[int]]) -> Grading | None:
    """Grade vectors whose pairing is pm and which respect every product relation."""
    d = t.dim
    relations = []
    for i in range(d):
        for j in range(d):
            term = monomial_term(t.cell(i, j))
            if term is not None:
                rel = (1 << i) ^ (1 << j) ^ (1 << term[1])
                if rel:
                    relations.append(rel)
    reduced, _, pivots = rref(F2Matrix(tuple(relations), d))
    free = [c for c in range(d) if c not in pivots]
    slot = {c: a for a, c in enumerate(free)}
    coords = [0] * d  # coordinates over the free generators, as bitsets
    for c in free:
        coords[c] = 1 << slot[c]
    for row, c in zip(reduced.rows, pivots):
        coords[c] = sum(1 << slot[f] for f in free if (row >> f) & 1)

    gram = [[pm[a][b] for b in free] for a in free]
    factor = gram_factor(gram)
    width = len(factor[0]) if factor and factor[0] else 0
    if width > MAX_WIDTH:
        return None
    width = max(width, 1)
    gen_vecs = [sum(bit << c for c, bit in enumerate(row)) for row in factor]
    grades = []
    for i in range(d):
        v = 0
        for a in range(len(free)):
            if (coords[i] >> a) & 1:
                v ^= gen_vecs[a]
        grades.append(GradeVec(v, width))
    try:
        return Grading(width, tuple(grades))
    except ValueError:
        return None


def solve_grading(t: StructureTable) -> Grading | Infeasible:
    system = derive_constraints(t)
    x = solve_affine(system.matrix, system.rhs)
    if x is None:
        combo = inconsistency_certificate(system.matrix, system.rhs)
        return Infeasible(find_witness(t), tuple(system.labels[c] for c in combo))
    pm = system.parity_matrix(x)
    g = _realize(t, pm)
    if g is not None and check_graded_commutative(t, g) is None:
        return g
    # the factorisation above should always verify; keep a brute-force fallback anyway
    for m in range(1, MAX_SEARCH_WIDTH + 1):
        g = exhaustive_grading_search(t, m)
        if g is not None:
            return g
    raise ArithmeticError("consistent parity system could not be realised by grade vectors")


def _generators(t: StructureTable) -> tuple[list[int], list[int]]:
    """Generating set in index order and, for every basis index, its expression over it.

    An index is a generator when it is not reachable as a product of the unit
    and earlier generators.  Expressions are bitsets over generator positions.
    """
    expr: dict[int, int] = {0: 0}
    gens: list[int] = []

    def close():
        changed = True
        while changed:
            changed = False
            for i, j in product(list(expr), repeat=2):
                term = monomial_term(t.cell(i, j))
                if term is not None and term[1] not in expr:
                    expr[term[1]] = expr[i] ^ expr[j]
                    changed = True

    close()
    for idx in range(1, t.dim):
        if idx not in expr:
            expr[idx] = 1 << len(gens)
            gens.append(idx)
            close()
    return gens, [expr[i] for i in range(t.dim)]


def exhaustive_grading_search(t: StructureTable, m: int) -> Grading | None:
    """Lexicographically first grading of width m, by brute force over generator grades."""
    if not 1 <= m <= MAX_SEARCH_WIDTH:
        raise SearchSizeError(f"search width must be in 1..{MAX_SEARCH_WIDTH}, got {m}")
    if t.dim > MAX_SEARCH_DIM:
        raise SearchSizeError(f"table dimension {t.dim} exceeds {MAX_SEARCH_DIM}")
    if not t.is_monomial():
        raise UnsupportedTable("exhaustive search needs a monomial table")
    gens, exprs = _generators(t)
    vectors = [GradeVec.from_bits(bits) for bits in product((0, 1), repeat=m)]
    for choice in product(vectors, repeat=len(gens)):
        grades = []
        for e in exprs:
            v = 0
            for a, gv in enumerate(choice):
                if (e >> a) & 1:
                    v ^= gv.bits
            grades.append(GradeVec(v, m))
        g = Grading(m, tuple(grades))
        if check_graded_commutative(t, g) is None:
            return g
    return None
