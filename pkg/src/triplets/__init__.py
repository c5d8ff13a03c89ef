"""Quaternions as a Z_2^3-graded commutative algebra, grading obstructions, and quaternionized Lie algebras."""

from .algebra import (
    Commutation,
    Element,
    Involution,
    StructureTable,
    build_clifford,
    build_octonions,
    build_quaternions,
    cayley_dickson_double,
    check_graded_commutative,
    commutation_relation,
    elem_mul,
    norm_squared,
)
from .grading import F2Matrix, GradeVec, Grading, add, parity, rref, solve_affine
from .monomials import SignedMonomial, SquareConvention, grade_of, mono_mul, mono_sign_of_swap
from .solver import Infeasible, ObstructionWitness, derive_constraints, exhaustive_grading_search, solve_grading

__version__ = "0.1.0"
