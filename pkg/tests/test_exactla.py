from fractions import Fraction

import pytest
from pydantic import ValidationError

from prospecies_entry.core.errors import NoSolution
from prospecies_entry.engine.exactla import (
    FieldSpec, Matrix, QuotientSpace, Subspace, extend_basis, factor_polynomial, image_basis, is_irreducible_polynomial,
    kernel_basis, kron, minimal_polynomial, solve_right, solve_vector, span_basis,
)


def test_field_coercion(Q, F3):
    assert Q.coerce("1/2") == Fraction(1, 2)
    assert F3.coerce(Fraction(1, 2)) == 2
    assert F3.coerce(-1) == 2
    assert F3.inv(2) == 2
    with pytest.raises(ZeroDivisionError):
        F3.coerce(Fraction(1, 3))


def test_field_needs_prime():
    with pytest.raises(ValidationError):
        FieldSpec.prime_field(4)
    assert FieldSpec.prime_field(7).label == "F7"
    assert FieldSpec.rationals().label == "Q"


def test_rank_kernel_image(Q):
    A = Matrix.from_rows(Q, [[1, 2, 3], [2, 4, 6]])
    assert A.rank() == 1
    K = kernel_basis(A)
    assert len(K) == 2
    for v in K:
        assert A.apply(v) == [0, 0]
    assert len(image_basis(A)) == 1


def test_rank_over_prime_field(F3):
    A = Matrix.from_rows(F3, [[1, 1], [1, 4]])
    assert A.rank() == 1
    assert Matrix.from_rows(FieldSpec.rationals(), [[1, 1], [1, 4]]).rank() == 2


def test_solve(Q):
    A = Matrix.from_rows(Q, [[1, 1], [0, 2]])
    x = solve_vector(A, [3, 4])
    assert A.apply(x) == [3, 4]
    B = Matrix.from_rows(Q, [[1, 0], [0, 1]])
    X = solve_right(A, B)
    assert A @ X == B
    assert X == A.inverse()


def test_solve_inconsistent(Q):
    A = Matrix.from_rows(Q, [[1, 1], [1, 1]])
    with pytest.raises(NoSolution):
        solve_vector(A, [1, 2])


def test_inverse_of_singular_matrix(Q):
    A = Matrix.from_rows(Q, [[1, 2], [2, 4]])
    assert not A.is_invertible()


def test_span_and_extend(Q):
    vectors = [[1, 0, 0], [2, 0, 0], [0, 1, 0]]
    basis = span_basis(Q, vectors, 3)
    assert basis == [[1, 0, 0], [0, 1, 0]]
    new = extend_basis(Q, basis, [[1, 1, 0], [0, 0, 1]], 3)
    assert new == [[0, 0, 1]]


def test_subspace_coordinates(Q):
    S = Subspace(Q, 3, [[1, 1, 0], [0, 1, 1]])
    assert S.dim == 2
    c = S.coords([1, 2, 1])
    assert S.matrix.apply(c) == [1, 2, 1]
    assert not S.contains([1, 0, 0])
    with pytest.raises(NoSolution):
        S.coords([0, 0, 1])


def test_quotient_space(Q):
    V = QuotientSpace(Q, 3, [[1, -1, 0]])
    assert V.dim == 2
    assert V.is_zero([1, -1, 0])
    assert V.coords([1, 0, 0]) == V.coords([0, 1, 0])
    assert V.projection() @ V.section() == Matrix.identity(Q, 2)


def test_kron_shape(Q):
    A = Matrix.from_rows(Q, [[1, 2]])
    B = Matrix.from_rows(Q, [[0], [1]])
    K = kron(A, B)
    assert (K.rows, K.cols) == (2, 2)
    assert K.row(1) == [1, 2]


def test_minimal_polynomial_of_nilpotent(Q):
    N = Matrix.from_rows(Q, [[0, 1], [0, 0]])
    assert minimal_polynomial(N) == [0, 0, 1]


def test_factor_polynomial(Q, F3):
    assert is_irreducible_polynomial(Q, [1, 0, 1])
    assert is_irreducible_polynomial(F3, [1, 0, 1])
    assert not is_irreducible_polynomial(FieldSpec.prime_field(5), [1, 0, 1])
    assert sorted(factor_polynomial(Q, [-1, 0, 1])) == [([-1, 1], 1), ([1, 1], 1)]
    assert factor_polynomial(Q, [0, 0, 2]) == [([0, 1], 2)]
    assert factor_polynomial(Q, [Fraction(1, 2), 1]) == [([Fraction(1, 2), 1], 1)]
