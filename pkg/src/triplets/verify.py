"""Exhaustive invariant suites, runnable from the command line (``triplets verify``)."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from . import algebra as alg
from . import lie
from . import solver
from .grading import F2Matrix, GradeVec, add, parity, rref, solve_affine
from .monomials import (
    SignedMonomial,
    all_monomials,
    all_words,
    bubble_normalize,
    crossing_sign,
    grade_of,
    mono_mul,
    swap_exponent,
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"[{mark}] {self.suite}: {self.name}{tail}"


def _all_vecs(n):
    return [GradeVec(b, n) for b in range(1 << n)]


def _grading_checks(opts):
    def symmetric():
        return all(parity(a, b) == parity(b, a) for n in range(1, 5) for a in _all_vecs(n) for b in _all_vecs(n)), ""

    def bilinear():
        return all(
            parity(add(a, b), c) == parity(a, c) ^ parity(b, c)
            for n in range(1, 4) for a in _all_vecs(n) for b in _all_vecs(n) for c in _all_vecs(n)
        ), ""

    def solver_substitution():
        rng = random.Random(opts.seed)
        for _ in range(200):
            rows, cols = rng.randint(1, 8), rng.randint(1, 8)
            m = F2Matrix(tuple(rng.getrandbits(cols) for _ in range(rows)), cols)
            rhs = [rng.getrandbits(1) for _ in range(rows)]
            x = solve_affine(m, rhs)
            if x is not None and list(m.mul_vec(x)) != rhs:
                return False, "unverified solution"
            r1 = rref(m)[0]
            if rref(r1)[0] != r1:
                return False, "rref not idempotent"
        return True, "200 random systems"

    return [("parity symmetric (n<=4)", symmetric), ("parity bilinear (n<=3)", bilinear),
            ("solve_affine substitution + rref idempotence", solver_substitution)]


def _monomial_checks(opts):
    def sign_rules_agree():
        count = 0
        for n in range(1, 9):
            words = list(all_words(n))
            for a, b in product(words, repeat=2):
                swaps, _ = bubble_normalize(a + b)
                if (-1 if swaps & 1 else 1) != crossing_sign(a, b):
                    return False, f"disagree on {a} {b}"
                count += 1
        return True, f"{count} pairs, n=1..8"

    def graded_commutativity():
        for n in range(1, 5):
            for a, b in product(all_monomials(n), repeat=2):
                if mono_mul(a, b) != (-mono_mul(b, a) if swap_exponent(a, b) else mono_mul(b, a)):
                    return False, f"{a} {b}"
                if len(a.word) % 2 == 0 and len(b.word) % 2 == 0:
                    if swap_exponent(a, b) != parity(grade_of(a), grade_of(b)):
                        return False, f"even words {a} {b}"
        return True, "n=1..4"

    def linearity():
        ok = all(grade_of(mono_mul(a, b)) == add(grade_of(a), grade_of(b))
                 for n in range(1, 5) for a, b in product(all_monomials(n), repeat=2))
        return ok, "n=1..4"

    def associativity():
        for n in range(1, 4):
            ms = list(all_monomials(n, signed=True))
            for a, b, c in product(ms, repeat=3):
                if mono_mul(mono_mul(a, b), c) != mono_mul(a, mono_mul(b, c)):
                    return False, f"{a} {b} {c}"
        return True, "signed monomials, n=1..3"

    return [("bubble-sort sign == crossing sign", sign_rules_agree),
            ("graded commutativity of monomials", graded_commutativity),
            ("grade of product is sum of grades", linearity),
            ("associativity", associativity)]


QUATERNION_FIXTURE = {
    ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
    ("i", "1"): "i", ("i", "i"): "-1", ("i", "j"): "k", ("i", "k"): "-j",
    ("j", "1"): "j", ("j", "i"): "-k", ("j", "j"): "-1", ("j", "k"): "i",
    ("k", "1"): "k", ("k", "i"): "j", ("k", "j"): "-i", ("k", "k"): "-1",
}


def signed_name(t: alg.StructureTable, cell) -> str:
    term = alg.monomial_term(cell)
    if term is None:
        raise ValueError("not a monomial cell")
    s, k = term
    return ("-" if s < 0 else "") + t.names[k]


def _algebra_checks(opts):
    def hamilton():
        h, _ = alg.build_quaternions()
        for (a, b), want in QUATERNION_FIXTURE.items():
            if signed_name(h, h.cell(h.index(a), h.index(b))) != want:
                return False, f"{a}*{b}"
        i, j, k = h["i"], h["j"], h["k"]
        return (i * j) * k == -1 and i * (j * k) == -1, "16 products"

    def graded_h():
        h, g = alg.build_quaternions()
        return alg.check_graded_commutative(h, g) is None and g == alg.quaternion_grading(), ""

    def associative():
        h, _ = alg.build_quaternions()
        tables = [h] + [alg.build_clifford(n) for n in (1, 2, 3)]
        return all(alg.find_nonassociative_triple(t) is None for t in tables), "H, Cl(1..3)"

    def embedding():
        h, _ = alg.build_quaternions()
        cl3 = alg.build_clifford(3)
        where = [cl3.index(alg.clifford_name(w)) for w in alg.QUATERNION_WORDS]
        for a, b in product(range(4), repeat=2):
            want = tuple((c, where[k]) for c, k in h.cell(a, b))
            if cl3.cell(where[a], where[b]) != want:
                return False, f"{h.names[a]}*{h.names[b]}"
        return True, ""

    def octonions():
        o = alg.build_octonions()
        units = [o.basis(n) for n in range(1, 8)]
        if any(u * u != -1 for u in units):
            return False, "square"
        if any(alg.commutation_relation(o, a, b) is not alg.Commutation.ANTICOMMUTE
               for a in range(1, 8) for b in range(a + 1, 8)):
            return False, "anticommutation"
        for x, y in product([o.basis(n) for n in range(8)], repeat=2):
            if (x * x) * y != x * (x * y) or (x * y) * y != x * (y * y):
                return False, "alternativity"
        if alg.find_nonassociative_triple(o) is None:
            return False, "associative"
        rng = random.Random(opts.seed)
        for _ in range(100):
            x = o.element([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8)])
            y = o.element([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8)])
            if alg.norm_squared(x * y) != alg.norm_squared(x) * alg.norm_squared(y):
                return False, "norm"
        return True, "squares, anticommutation, alternativity, 100 norm samples"

    return [("Hamilton relations", hamilton), ("H graded commutative", graded_h),
            ("associativity of H and Cl(n<=3)", associative), ("Remark embedding is a homomorphism", embedding),
            ("octonion sanity", octonions)]


def corpus() -> dict[str, alg.StructureTable]:
    return {
        "H": alg.build_quaternions()[0],
        "Cl1": alg.build_clifford(1),
        "Cl2": alg.build_clifford(2),
        "O": alg.build_octonions(),
        "Z2xZ2": alg.build_group_algebra_z2(2),
    }


def _solver_checks(opts):
    def agreement():
        out = []
        for name, t in corpus().items():
            r = solver.solve_grading(t)
            feasible = isinstance(r, solver.Grading)
            if feasible and alg.check_graded_commutative(t, r) is not None:
                return False, f"{name}: unsound grading"
            brute = solver.exhaustive_grading_search(t, min(opts.max_width, solver.MAX_SEARCH_WIDTH))
            if brute is not None and alg.check_graded_commutative(t, brute) is not None:
                return False, f"{name}: unsound brute-force grading"
            if feasible != (brute is not None):
                return False, f"{name}: solver and brute force disagree"
            out.append(f"{name}={'ok' if feasible else 'infeasible'}")
        return True, ", ".join(out)

    def octonion_witness():
        o = alg.build_octonions()
        r = solver.solve_grading(o)
        if not isinstance(r, solver.Infeasible) or r.witness is None:
            return False, "no witness"
        return solver.verify_witness(o, r.witness), r.witness.chain(o)

    def quaternion_parities():
        h, g = alg.build_quaternions()
        r = solver.solve_grading(h)
        return solver.parity_matrix_of(r) == solver.parity_matrix_of(g), ""

    return [("solver agrees with brute force", agreement), ("octonion obstruction", octonion_witness),
            ("H parity matrix", quaternion_parities)]


def _lie_checks(opts):
    def graded_lie():
        for name, f in lie.BUILTIN_LIE.items():
            q = lie.quaternionize(f())
            if lie.check_antisymmetry(q) or lie.check_graded_jacobi(q) or lie.check_grading_linearity(q):
                return False, name
            if lie.degree_zero_block(q).constants != f().constants:
                return False, f"{name}: degree-zero block"
        return True, "sl2, so3"

    def simplicity():
        rng = random.Random(opts.seed)
        for name, f in lie.BUILTIN_LIE.items():
            q = lie.quaternionize(f())
            if lie.center(q):
                return False, f"{name}: center"
            seeds = [{i: 1} for i in range(q.dim)] + [lie.random_rational_vector(rng, q.dim) for _ in range(50)]
            if any(len(lie.ideal_closure(q, s)) != q.dim for s in seeds):
                return False, f"{name}: proper ideal"
        control = lie.trivially_graded(lie.direct_sum_abelian(lie.sl2()))
        return len(lie.ideal_closure(control, {3: 1})) == 1, "62 seeds each; control ideal found"

    return [("quaternionized algebras are graded Lie", graded_lie), ("simplicity evidence", simplicity)]


def _cli_checks(opts):
    def round_trip():
        for t in list(corpus().values()) + [alg.build_clifford(3)]:
            first = canonical_dumps(alg.table_to_json(t))
            again = canonical_dumps(alg.table_to_json(alg.table_from_json(json.loads(first))))
            if first != again:
                return False, t.names
        for f in lie.BUILTIN_LIE.values():
            q = lie.quaternionize(f())
            first = canonical_dumps(lie.lie_to_json(q))
            if canonical_dumps(lie.lie_to_json(lie.lie_from_json(json.loads(first)))) != first:
                return False, "graded Lie"
        return True, "tables and graded Lie structures"

    return [("JSON round trip", round_trip)]


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


SUITES: dict[str, Callable] = {
    "grading": _grading_checks,
    "monomials": _monomial_checks,
    "algebra": _algebra_checks,
    "solver": _solver_checks,
    "lie": _lie_checks,
    "cli": _cli_checks,
}


@dataclass
class Options:
    seed: int = 0
    max_width: int = 4


def run_suite(name: str, opts: Options | None = None) -> list[CheckResult]:
    opts = opts or Options()
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        if suite not in SUITES:
            raise KeyError(suite)
        for check_name, fn in SUITES[suite](opts):
            try:
                ok, detail = fn()
            except Exception as exc:  # report, keep running the rest
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(suite, check_name, bool(ok), detail))
    return results
