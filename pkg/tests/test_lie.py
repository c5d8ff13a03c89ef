import json
import random
from fractions import Fraction
from itertools import product

import pytest

from triplets import lie


@pytest.fixture(scope="module")
def qsl2():
    return lie.quaternionize(lie.sl2())


@pytest.fixture(scope="module")
def qso3():
    return lie.quaternionize(lie.so3())


def idx(gs, name):
    return gs.names.index(name)


def br(gs, a, b):
    return lie.bracket(gs, {idx(gs, a): Fraction(1)}, {idx(gs, b): Fraction(1)})


class TestValidate:
    def test_sl2(self):
        assert lie.validate_lie(lie.sl2()) is None

    def test_so3(self):
        assert lie.validate_lie(lie.so3()) is None

    def test_antisymmetry_violation(self):
        s = lie.sl2()
        grid = [list(r) for r in s.constants]
        grid[1][2] = ((Fraction(2), 0),)
        bad = lie.LieStructure(3, s.names, tuple(map(tuple, grid)))
        v = lie.validate_lie(bad)
        assert v.kind == "antisymmetry" and v.indices == (1, 2)

    def test_jacobi_violation(self):
        # antisymmetric but [h,e] = 3e breaks Jacobi against [e,f] = h, [h,f] = -2f
        s = lie.LieStructure.from_brackets(("h", "e", "f"), {(0, 1): [(3, 1)], (0, 2): [(-2, 2)], (1, 2): [(1, 0)]})
        v = lie.validate_lie(s)
        assert v is not None and v.kind == "jacobi"

    def test_abelian(self):
        assert lie.validate_lie(lie.abelian(2)) is None


class TestQuaternionize:
    def test_dimension_and_names(self, qsl2):
        assert qsl2.dim == 12
        assert qsl2.names[:3] == ("1*h", "1*e", "1*f")

    def test_degree_zero_bracket(self, qsl2):
        assert br(qsl2, "1*e", "1*f") == {idx(qsl2, "1*h"): 1}

    def test_i_e_with_j_f(self, qsl2):
        # [i*e, j*f] = (ij)*[e,f] = k*h
        assert br(qsl2, "i*e", "j*f") == {idx(qsl2, "k*h"): 1}

    def test_i_x_with_i_y(self, qso3):
        # [i*x, i*y] = (i i)*[x,y] = -1*z
        assert br(qso3, "i*x", "i*y") == {idx(qso3, "1*z"): -1}

    def test_graded_antisymmetry(self, qsl2, qso3):
        for gs in (qsl2, qso3):
            assert lie.check_antisymmetry(gs) is None
            for a, b in product(range(gs.dim), repeat=2):
                ab = lie.bracket(gs, {a: 1}, {b: 1})
                ba = lie.bracket(gs, {b: 1}, {a: 1})
                sign = -gs.sign(a, b)
                assert ab == {k: sign * c for k, c in ba.items()}

    def test_graded_jacobi(self, qsl2, qso3):
        assert lie.check_graded_jacobi(qsl2) is None
        assert lie.check_graded_jacobi(qso3) is None

    def test_corrupted_table_caught(self, qsl2):
        grid = [list(r) for r in qsl2.constants]
        a, b = idx(qsl2, "i*e"), idx(qsl2, "j*f")
        grid[a][b] = lie.negate_cell(grid[a][b])
        grid[b][a] = lie.negate_cell(grid[b][a])
        bad = lie.GradedLieStructure(qsl2.dim, qsl2.names, tuple(map(tuple, grid)), qsl2.grading)
        assert lie.check_antisymmetry(bad) is None
        assert lie.check_graded_jacobi(bad) is not None

    def test_degree_zero_block_is_input(self, qsl2, qso3):
        assert lie.degree_zero_block(qsl2).constants == lie.sl2().constants
        assert lie.degree_zero_block(qso3).constants == lie.so3().constants

    def test_grading_linearity(self, qsl2, qso3):
        assert lie.check_grading_linearity(qsl2) is None
        assert lie.check_grading_linearity(qso3) is None

    def test_plain_jacobi_fails_on_the_graded_algebra(self, qsl2):
        # the quaternionized bracket is not an ordinary Lie bracket
        plain = lie.LieStructure(qsl2.dim, qsl2.names, qsl2.constants)
        assert lie.validate_lie(plain) is not None

    def test_rejects_non_lie_input(self):
        s = lie.LieStructure.from_brackets(("h", "e", "f"), {(0, 1): [(3, 1)], (0, 2): [(-2, 2)], (1, 2): [(1, 0)]})
        with pytest.raises(lie.LieDomainError):
            lie.quaternionize(s)


class TestIdeals:
    def test_closure_from_every_basis_vector(self, qsl2):
        for i in range(qsl2.dim):
            assert len(lie.ideal_closure(qsl2, {i: 1})) == 12

    def test_closure_from_1h(self, qsl2):
        assert len(lie.ideal_closure(qsl2, {idx(qsl2, "1*h"): 1})) == 12

    def test_random_seeds(self, qsl2):
        rng = random.Random(0)
        for _ in range(50):
            assert len(lie.ideal_closure(qsl2, lie.random_rational_vector(rng, 12))) == 12

    def test_central_seed_spans_abelian_line(self):
        control = lie.trivially_graded(lie.direct_sum_abelian(lie.sl2()))
        assert lie.ideal_closure(control, {3: 1}) == [(0, 0, 0, 1)]
        assert len(lie.ideal_closure(control, {1: 1})) == 3

    def test_quaternionized_control(self):
        q = lie.quaternionize(lie.direct_sum_abelian(lie.sl2()))
        assert len(lie.ideal_closure(q, {3: 1})) == 1
        assert len(lie.center(q)) == 4

    def test_zero_seed(self, qsl2):
        with pytest.raises(lie.LieDomainError):
            lie.ideal_closure(qsl2, [0] * 12)

    def test_closure_is_an_ideal(self, qso3):
        basis = lie.ideal_closure(qso3, {0: 1})
        span = lie._Echelon(qso3.dim)
        for v in basis:
            span.insert(v)
        for v in basis:
            for i in range(qso3.dim):
                w = lie.bracket(qso3, {i: 1}, dict(enumerate(v)))
                dense = [Fraction(0)] * qso3.dim
                for k, c in w.items():
                    dense[k] = c
                assert not any(span.reduce(dense))


class TestCenter:
    def test_trivial_for_quaternionized(self, qsl2, qso3):
        assert lie.center(qsl2) == []
        assert lie.center(qso3) == []

    def test_abelian_is_everything(self):
        assert len(lie.center(lie.abelian(2))) == 2

    def test_sl2_alone(self):
        assert lie.center(lie.sl2()) == []


class TestJson:
    def test_round_trip_plain(self):
        s = lie.sl2()
        text = json.dumps(lie.lie_to_json(s), sort_keys=True)
        back = lie.lie_from_json(json.loads(text))
        assert back == s
        assert json.dumps(lie.lie_to_json(back), sort_keys=True) == text

    def test_round_trip_graded(self, qsl2):
        back = lie.lie_from_json(json.loads(json.dumps(lie.lie_to_json(qsl2))))
        assert back.constants == qsl2.constants
        assert back.grading == qsl2.grading

    def test_only_upper_pairs(self):
        obj = lie.lie_to_json(lie.so3())
        assert all(b["i"] < b["j"] for b in obj["brackets"])
        obj["brackets"].append({"i": 2, "j": 1, "terms": []})
        with pytest.raises(ValueError):
            lie.lie_from_json(obj)
