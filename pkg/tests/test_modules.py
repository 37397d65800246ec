import pytest

from prospecies_entry.core.errors import NotGenerating, NotProjective, ShapeMismatch, StructureError
from prospecies_entry.engine.exactla import Matrix
from prospecies_entry.engine.modules import (
    Bimodule, Module, ModuleHom, casimir, cokernel_module, dual_basis, factors_through_projective, hom_space,
    hom_tensor_iso, indecomposable_projective, is_indecomposable, is_isomorphic, is_isomorphic_bimodules,
    is_projective, kernel_module, left_dual, projective_cover, right_dual, simple_module, stable_hom_dim, tensor_over,
)
from prospecies_entry.engine.prospecies import Representation, rep_to_module, tensor_algebra
from prospecies_entry.schemas.reports import IsoVerdict
from prospecies_entry.utils.dsl import parse_instance

KRONECKER = """\
field Q;
quiver { vertex 1 2; arrow a: 1 -> 2; arrow b: 1 -> 2; }
bimodule a { kind: regular; }
bimodule b { kind: regular; }
"""


def kronecker_module(a_rows, b_rows) -> Module:
    """k² → k² along both arrows of the Kronecker quiver"""
    Lam = parse_instance(KRONECKER)
    field = Lam.field
    modules = {v: Module(Lam.algebra(v), 2, [Matrix.identity(field, 2)]) for v in ("1", "2")}
    rep = Representation(Lam, modules, {}, verify=False)
    for label, rows in (("a", a_rows), ("b", b_rows)):
        X = Matrix.from_rows(field, rows)
        rep.maps[label] = Matrix.from_columns(field, [X.column(m) for _, m in rep.tensor(label).lift_indices()], 2)
    rep.verify()
    return rep_to_module(tensor_algebra(Lam), rep)


def test_projectives_and_simples_of_a2(kA2):
    P1, _ = indecomposable_projective(kA2, 0)
    P2, _ = indecomposable_projective(kA2, 1)
    assert (P1.dim, P2.dim) == (2, 1)
    assert P1.dimension_vector() == [1, 1]
    S1 = simple_module(kA2, 0)
    assert S1.dim == 1
    assert S1.dimension_vector() == [1, 0]


def test_hom_spaces(kA2):
    P1, _ = indecomposable_projective(kA2, 0)
    P2, _ = indecomposable_projective(kA2, 1)
    assert len(hom_space(P2, P1)) == 1
    assert hom_space(P1, P2) == []
    assert len(hom_space(P1, P1)) == 1


def test_isomorphism_verdicts(kA2):
    P2, _ = indecomposable_projective(kA2, 1)
    S1, S2 = simple_module(kA2, 0), simple_module(kA2, 1)
    result = is_isomorphic(P2, S2)
    assert result.verdict == IsoVerdict.TRUE
    assert result.certificate.is_invertible()
    assert is_isomorphic(S1, S2).verdict == IsoVerdict.FALSE
    regular = Module.regular(kA2)
    P1, _ = indecomposable_projective(kA2, 0)
    assert is_isomorphic(regular, P1.direct_sum(P2))


def test_isomorphism_needs_one_algebra(kA2, dual_numbers):
    with pytest.raises(ShapeMismatch):
        is_isomorphic(Module.regular(kA2), Module.regular(dual_numbers))


def test_indecomposable(kA2, dual_numbers):
    P1, _ = indecomposable_projective(kA2, 0)
    assert is_indecomposable(P1)
    assert not is_indecomposable(Module.regular(kA2))
    assert is_indecomposable(Module.regular(dual_numbers))


def test_indecomposable_with_non_split_endomorphisms():
    # End ≅ Q(i): two-dimensional and still local
    M = kronecker_module([[1, 0], [0, 1]], [[0, -1], [1, 0]])
    assert len(hom_space(M, M)) == 2
    assert is_indecomposable(M)


def test_decomposable_kronecker_modules():
    assert not is_indecomposable(kronecker_module([[1, 0], [0, 1]], [[1, 0], [0, 2]]))
    assert not is_indecomposable(kronecker_module([[1, 0], [0, 1]], [[1, 0], [0, 1]]))


def test_projective_cover_and_kernel(kA2):
    S1 = simple_module(kA2, 0)
    cover = projective_cover(S1)
    assert cover.summands == [0]
    assert cover.projective.dim == 2
    K, inc = cover.kernel()
    assert K.dim == 1
    assert is_isomorphic(K, simple_module(kA2, 1))
    assert (cover.matrix @ inc).is_zero()


def test_is_projective(kA2, dual_numbers):
    assert is_projective(simple_module(kA2, 1))
    assert not is_projective(simple_module(kA2, 0))
    assert not is_projective(simple_module(dual_numbers, 0))


def test_stable_hom(kA2, dual_numbers):
    S1 = simple_module(kA2, 0)
    assert stable_hom_dim(S1, S1) == 1
    R = Module.regular(kA2)
    assert stable_hom_dim(R, S1) == 0
    k = simple_module(dual_numbers, 0)
    assert stable_hom_dim(k, k) == 1


def test_factoring_through_projective(dual_numbers):
    k = simple_module(dual_numbers, 0)
    identity = Matrix.identity(dual_numbers.field, 1)
    assert not factors_through_projective(ModuleHom(k, k, identity))
    assert factors_through_projective(ModuleHom(k, k, Matrix.zeros(dual_numbers.field, 1, 1)))
    R = Module.regular(dual_numbers)
    for f in hom_space(k, R):
        assert factors_through_projective(ModuleHom(k, R, f))


def test_factoring_needs_a_homomorphism(kA2):
    P1, _ = indecomposable_projective(kA2, 0)
    S2 = simple_module(kA2, 1)
    with pytest.raises(StructureError):
        factors_through_projective(ModuleHom(P1, S2, Matrix.from_rows(kA2.field, [[1, 1]])))


def test_kernel_and_cokernel(kA2):
    P1, _ = indecomposable_projective(kA2, 0)
    P2, _ = indecomposable_projective(kA2, 1)
    f = hom_space(P2, P1)[0]
    K, _ = kernel_module(P2, f)
    C, _ = cokernel_module(P1, f)
    assert K.dim == 0
    assert is_isomorphic(C, simple_module(kA2, 0))


def test_dual_basis(kA2, dual_numbers):
    db = dual_basis(Module.regular(dual_numbers))
    e = [dual_numbers.field.one(), dual_numbers.field.zero()]
    assert db.reconstruct(e) == e
    with pytest.raises(NotProjective):
        dual_basis(simple_module(kA2, 0))
    with pytest.raises(NotGenerating):
        dual_basis(Module.regular(dual_numbers), generators=[[0, 1]])


def test_double_dual(kA2):
    S1 = simple_module(kA2, 0)
    D = S1.dual()
    assert D.algebra is kA2.opposite()
    assert is_isomorphic(D.dual(), S1)


def test_regular_bimodule_duals(dual_numbers):
    X = Bimodule.regular(dual_numbers)
    assert right_dual(X).dim == 2
    assert left_dual(X).dim == 2
    assert right_dual(X) is right_dual(X)
    assert is_isomorphic_bimodules(right_dual(X), left_dual(X))


def test_tensor_over_regular(dual_numbers):
    X = Bimodule.regular(dual_numbers)
    k = simple_module(dual_numbers, 0)
    assert tensor_over(X, k).dim == 1
    assert tensor_over(X, X).dim == 2


def test_casimir_is_nonzero(dual_numbers):
    X = Bimodule.regular(dual_numbers)
    T, c = casimir(X)
    assert T.dim == 2
    assert any(c)
    # independent of the generating set
    _, c2 = casimir(X, generators=[[1, 1]])
    assert c == c2


def test_hom_tensor_iso(dual_numbers):
    X = Bimodule.regular(dual_numbers)
    iso = hom_tensor_iso(X, simple_module(dual_numbers, 0))
    assert iso.tensor.dim == len(iso.hom_basis) == 1
