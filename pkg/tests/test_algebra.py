import pytest

from prospecies_entry.core.errors import NotAdmissible, NotNilpotent
from prospecies_entry.engine.algebra import (
    bound_quiver_algebra, cartan_matrix, enveloping_algebra, ground_algebra, jacobson_radical, quotient_algebra,
    tensor_product, trace_form_radical,
)
from prospecies_entry.schemas.quiver import Arrow, BoundQuiverPresentation, Path, Quiver, Relation, Term


def dual_numbers(field):
    Q = Quiver(vertices=("1",), arrows=(Arrow(label="x", source="1", target="1"),))
    xx = Relation(terms=(Term(path=Path(source="1", target="1", arrows=("x", "x"))),))
    return bound_quiver_algebra(BoundQuiverPresentation(quiver=Q, relations=(xx,)), field, name="k[x]/(x2)")


def a2(field):
    Q = Quiver(vertices=("1", "2"), arrows=(Arrow(label="a", source="1", target="2"),))
    return bound_quiver_algebra(BoundQuiverPresentation(quiver=Q), field, name="kA2")


def commutative_square(field):
    Q = Quiver(vertices=("1", "2", "3", "4"), arrows=(
        Arrow(label="a", source="1", target="2"),
        Arrow(label="b", source="2", target="4"),
        Arrow(label="c", source="1", target="3"),
        Arrow(label="d", source="3", target="4"),
    ))
    r = Relation(terms=(
        Term(path=Path(source="1", target="4", arrows=("a", "b"))),
        Term(coefficient="-1", path=Path(source="1", target="4", arrows=("c", "d"))),
    ))
    return bound_quiver_algebra(BoundQuiverPresentation(quiver=Q, relations=(r,)), field)


def test_dual_numbers(Q):
    A = dual_numbers(Q)
    assert A.dim == 2
    assert A.is_commutative()
    assert A.labels == ["e[1]", "x"]
    x = A.basis_element(1)
    assert not any(A.mul(x, x))


def test_path_algebra_a2(Q):
    A = a2(Q)
    assert A.dim == 3
    assert A.idempotent_labels == ["1", "2"]
    assert cartan_matrix(A) == [[1, 0], [1, 1]]
    assert not A.is_commutative()


def test_commutative_square(Q):
    A = commutative_square(Q)
    assert A.dim == 9


def test_admissibility_is_checked(Q):
    Qv = Quiver(vertices=("1",), arrows=(Arrow(label="x", source="1", target="1"),))
    r = Relation(terms=(Term(path=Path(source="1", target="1", arrows=("x",))),))
    with pytest.raises(NotAdmissible):
        bound_quiver_algebra(BoundQuiverPresentation(quiver=Qv, relations=(r,)), Q)


def test_loop_without_relations_is_not_nilpotent(Q):
    Qv = Quiver(vertices=("1",), arrows=(Arrow(label="x", source="1", target="1"),))
    with pytest.raises(NotNilpotent):
        bound_quiver_algebra(BoundQuiverPresentation(quiver=Qv, nilpotency_bound=5), Q)


def test_weighted_truncation_of_a_loop(Q):
    Qv = Quiver(vertices=("1",), arrows=(Arrow(label="x", source="1", target="1"),))
    A = bound_quiver_algebra(BoundQuiverPresentation(quiver=Qv, weights={"x": 1}, max_weight=3), Q)
    assert A.dim == 4


def test_over_prime_field(F3):
    assert dual_numbers(F3).dim == 2
    assert commutative_square(F3).dim == 9


def test_opposite(Q):
    A = a2(Q)
    assert A.opposite().opposite() is A
    assert cartan_matrix(A.opposite()) == [[1, 1], [0, 1]]


def test_tensor_and_enveloping(Q):
    A = dual_numbers(Q)
    B = a2(Q)
    assert tensor_product(A, B).dim == 6
    E = enveloping_algebra(A, B)
    assert E.dim == 6
    assert enveloping_algebra(A, B) is E


def test_radical(Q):
    A = a2(Q)
    assert len(jacobson_radical(A)) == 1
    assert len(trace_form_radical(A)) == 1
    assert len(trace_form_radical(dual_numbers(Q))) == 1
    assert jacobson_radical(ground_algebra(Q)) == []


def test_quotient_algebra(Q):
    A = a2(Q)
    B, quotient = quotient_algebra(A, [A.basis_element(2)])
    assert B.dim == 2
    assert quotient.dim == 2
    assert cartan_matrix(B) == [[1, 0], [0, 1]]
