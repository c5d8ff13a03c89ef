from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplets import algebra as alg
from triplets.grading import GradeVec, Grading, parity
from triplets.solver import (
    Infeasible,
    ObstructionWitness,
    SearchSizeError,
    UnsupportedTable,
    derive_constraints,
    exhaustive_grading_search,
    find_witness,
    parity_matrix_of,
    solve_grading,
    verify_witness,
)
from triplets.verify import corpus

H_PARITIES = [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]]


@pytest.fixture(scope="module")
def h():
    return alg.build_quaternions()[0]


@pytest.fixture(scope="module")
def o():
    return alg.build_octonions()


def unit_algebra():
    return alg.StructureTable(1, ("1",), ((((1, 0),),),))


class TestDeriveConstraints:
    def test_quaternions(self, h):
        sys = derive_constraints(h)
        assert sys.n_unknowns == 10
        fixed = {}
        for row, value in zip(sys.matrix.rows, sys.rhs):
            if bin(row).count("1") == 1:
                fixed[row.bit_length() - 1] = value
        for a, b in ((1, 2), (1, 3), (2, 3)):
            assert fixed[sys.unknown(a, b)] == 1
        for a in range(4):
            assert fixed[sys.unknown(a, a)] == 0

    def test_unit_algebra(self):
        sys = derive_constraints(unit_algebra())
        assert sys.n_unknowns == 1
        # nothing beyond the self-pairing row P[1][1] = 0
        assert sys.matrix.rows == (1,) and sys.rhs == (0,)
        assert sys.labels == ("P[1][1] = 0",)

    def test_octonions(self, o):
        sys = derive_constraints(o)
        anticommuting = [
            (a, b) for a in range(1, 8) for b in range(a + 1, 8)
            if (1 << sys.unknown(a, b)) in {r for r, v in zip(sys.matrix.rows, sys.rhs) if v == 1}
        ]
        assert len(anticommuting) == 21
        assert any(bin(r).count("1") == 3 for r in sys.matrix.rows)

    def test_unknown_indexing_is_a_bijection(self, o):
        sys = derive_constraints(o)
        cols = {sys.unknown(a, b) for a in range(8) for b in range(a, 8)}
        assert cols == set(range(sys.n_unknowns))
        assert all(sys.unknown(a, b) == sys.unknown(b, a) for a, b in product(range(8), repeat=2))

    def test_neither_pair_rejected(self):
        t = alg.StructureTable(3, ("1", "a", "b"), (
            (((1, 0),), ((1, 1),), ((1, 2),)),
            (((1, 1),), ((1, 0),), ((1, 2),)),
            (((1, 2),), ((2, 2),), ((1, 0),)),
        ))
        with pytest.raises(UnsupportedTable):
            derive_constraints(t)

    def test_multi_term_product_rejected(self):
        t = alg.StructureTable(2, ("1", "a"), ((((1, 0),), ((1, 1),)), (((1, 1),), ((1, 0), (1, 1)))))
        with pytest.raises(UnsupportedTable):
            derive_constraints(t)


class TestSolveGrading:
    def test_quaternions(self, h):
        g = solve_grading(h)
        assert isinstance(g, Grading)
        assert parity_matrix_of(g) == H_PARITIES
        assert alg.check_graded_commutative(h, g) is None

    def test_octonions_infeasible(self, o):
        r = solve_grading(o)
        assert isinstance(r, Infeasible)
        w = r.witness
        assert (w.l1, w.l2) == (1, 2)
        assert w.l3 == alg.monomial_term(o.cell(1, 2))[1]
        assert w.l4 not in (0, w.l1, w.l2, w.l3)
        assert verify_witness(o, w)
        assert r.certificate

    def test_commutative_table(self):
        g = solve_grading(alg.build_group_algebra_z2(2))
        assert g.width == 1 and all(v.bits == 0 for v in g.grades)

    def test_clifford_tables_are_gradable(self):
        for n in (1, 2, 3, 4):
            t = alg.build_clifford(n)
            g = solve_grading(t)
            assert isinstance(g, Grading)
            assert alg.check_graded_commutative(t, g) is None

    def test_indicator_grading_fails_on_odd_clifford_generators(self):
        # e1 has an odd-weight grade, so it would have to anticommute with itself
        v = alg.check_graded_commutative(alg.build_clifford(2), alg.clifford_grading(2))
        assert (v.i, v.j, v.expected, v.found) == (1, 1, -1, 1)
        # the even part carries the indicator grading fine
        cl3 = alg.build_clifford(3)
        g = alg.clifford_grading(3)
        even = [i for i, name in enumerate(cl3.names) if len(name.lstrip("e")) % 2 == 0 or name == "1"]
        for a in even:
            for b in even:
                sign = -1 if parity(g[a], g[b]) else 1
                assert cl3.cell(a, b) == tuple((sign * c, k) for c, k in cl3.cell(b, a))

    def test_sedenions_infeasible(self, o):
        s, _ = alg.cayley_dickson_double(o, alg.Involution.standard(8), -1)
        r = solve_grading(s)
        assert isinstance(r, Infeasible)

    def test_zero_products_impose_nothing(self):
        # exterior algebra on one generator: a*a = 0
        t = alg.StructureTable(2, ("1", "a"), ((((1, 0),), ((1, 1),)), (((1, 1),), ())))
        g = solve_grading(t)
        assert isinstance(g, Grading)


class TestWitness:
    def test_invariants_rederived(self, o):
        w = find_witness(o)
        assert alg.monomial_term(o.cell(w.l1, w.l2))[1] == w.l3
        for x in (w.l1, w.l2, w.l3):
            assert alg.commutation_relation(o, w.l4, x) is alg.Commutation.ANTICOMMUTE

    def test_quaternions_have_none(self, h):
        assert find_witness(h) is None

    def test_bogus_witness_rejected(self, o, h):
        assert not verify_witness(o, ObstructionWitness(1, 2, 4, 5))
        assert not verify_witness(h, ObstructionWitness(1, 2, 3, 1))

    def test_chain_mentions_all_four(self, o):
        text = find_witness(o).chain(o)
        for name in ("e1", "e2", "e3", "e4"):
            assert name in text


class TestExhaustiveSearch:
    def test_quaternions_width_three(self, h):
        g = exhaustive_grading_search(h, 3)
        assert parity_matrix_of(g) == H_PARITIES
        # lexicographically first grading is the triple degree itself
        assert g == alg.quaternion_grading()

    def test_quaternions_width_one(self, h):
        assert exhaustive_grading_search(h, 1) is None

    def test_quaternions_width_two(self, h):
        # three mutually anticommuting units need a nondegenerate pairing on even vectors of Z_2^2: only (1,1)
        assert exhaustive_grading_search(h, 2) is None

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_octonions_never(self, o, m):
        assert exhaustive_grading_search(o, m) is None

    def test_limits(self, h):
        with pytest.raises(SearchSizeError):
            exhaustive_grading_search(h, 5)
        with pytest.raises(SearchSizeError):
            exhaustive_grading_search(alg.build_clifford(5), 1)

    def test_width_one_brute_force_by_hand(self, h):
        # independent enumeration over all grades of i, j with k forced to their sum
        vecs = [GradeVec(b, 1) for b in range(2)]
        found = []
        for gi, gj in product(vecs, repeat=2):
            g = Grading(1, (GradeVec(0, 1), gi, gj, gi + gj))
            if alg.check_graded_commutative(h, g) is None:
                found.append(g)
        assert found == []


def test_solver_agrees_with_brute_force_on_corpus():
    for name, t in corpus().items():
        r = solve_grading(t)
        brute = exhaustive_grading_search(t, 4)
        assert isinstance(r, Grading) == (brute is not None), name
        for g in (r, brute):
            if isinstance(g, Grading):
                assert alg.check_graded_commutative(t, g) is None


def test_parity_matrix_of_zero_grading():
    g = Grading(2, (GradeVec.zero(2),) * 3)
    assert parity_matrix_of(g) == [[0] * 3] * 3


def test_solver_grading_equivalent_to_triple_degree(h):
    g = solve_grading(h)
    expected = alg.quaternion_grading()
    assert [[parity(a, b) for b in g.grades] for a in g.grades] == parity_matrix_of(expected)


def twisted_group_algebra(n, beta):
    """e_a e_b = (-1)**(a^T beta b) e_{a+b} over Z_2^n; beta is a list of row bitsets."""
    size = 1 << n
    names = ["1"] + [f"g{a}" for a in range(1, size)]

    def form(a, b):
        return sum(bin(beta[r] & b).count("1") for r in range(n) if (a >> r) & 1) & 1

    rows = tuple(tuple((((-1) ** form(a, b), a ^ b),) for b in range(size)) for a in range(size))
    return alg.StructureTable(size, tuple(names), rows)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.data())
def test_random_twisted_group_algebras(n, data):
    beta = [data.draw(st.integers(0, (1 << n) - 1)) for _ in range(n)]
    t = twisted_group_algebra(n, beta)
    r = solve_grading(t)
    brute = exhaustive_grading_search(t, 4)
    assert isinstance(r, Grading)
    assert alg.check_graded_commutative(t, r) is None
    assert brute is not None and alg.check_graded_commutative(t, brute) is None
    assert parity_matrix_of(r) == parity_matrix_of(brute)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_random_clifford_conventions(n, data):
    q = tuple(data.draw(st.sampled_from((1, -1))) for _ in range(n))
    t = alg.build_clifford(n, alg.SquareConvention(q))
    r = solve_grading(t)
    assert isinstance(r, Grading) and alg.check_graded_commutative(t, r) is None
