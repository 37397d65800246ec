import pytest

from prospecies_entry.core.errors import CyclicQuiver, NotProjectiveLeft, ShapeMismatch
from prospecies_entry.engine.modules import Bimodule, Module, simple_module
from prospecies_entry.engine.prospecies import (
    ProSpecies, Representation, gorenstein_conditions, in_map, is_gorenstein_projective, is_locally_projective,
    local_module, module_to_rep, path_dimension_oracle, rep_to_module, standard_resolution, tensor_algebra, valuation,
)
from prospecies_entry.engine.resolutions import proj_dim
from prospecies_entry.schemas.quiver import Arrow, Quiver
from prospecies_entry.schemas.reports import GPVerdict


def test_tensor_algebra_dimensions(fix_a, fix_b, fix_c):
    assert tensor_algebra(fix_a).graded_dimensions() == [2, 1]
    assert tensor_algebra(fix_b).graded_dimensions() == [6, 3]
    T = tensor_algebra(fix_c)
    assert T.dim == 6
    assert T.graded_dimensions() == [4, 2]


def test_tensor_algebra_matches_path_oracle(fix_a, fix_b, fix_c):
    for Lam in (fix_a, fix_b, fix_c):
        assert tensor_algebra(Lam).dim == path_dimension_oracle(Lam)


def test_cyclic_quiver_needs_truncation(loop):
    with pytest.raises(CyclicQuiver):
        tensor_algebra(loop)
    with pytest.raises(CyclicQuiver):
        path_dimension_oracle(loop)
    T = tensor_algebra(loop, max_degree=2)
    assert T.graded_dimensions() == [2, 2, 2]
    assert path_dimension_oracle(loop, 2) == 6


def test_valuation(fix_a, fix_c):
    report = valuation(fix_a)
    assert report.vertex_dimensions == {"1": 1, "2": 1}
    assert report.arrow_ranks == {"alpha": [1, 1]}
    report = valuation(fix_c)
    assert report.vertex_dimensions == {"1": 2, "2": 2}
    assert report.arrow_ranks == {"alpha": [1, 1]}


def test_bimodule_must_match_vertices(fix_c):
    A1 = fix_c.algebra("1")
    with pytest.raises(ShapeMismatch):
        ProSpecies(fix_c.quiver, dict(fix_c.vertex_algebras), {"alpha": Bimodule.regular(A1)})


def test_bimodule_must_be_projective(dual_numbers):
    k = simple_module(dual_numbers, 0)
    Qv = Quiver(vertices=("1",), arrows=(Arrow(label="alpha", source="1", target="1"),))
    X = Bimodule(dual_numbers, dual_numbers, 1, list(k.action), list(k.action))
    with pytest.raises(NotProjectiveLeft):
        ProSpecies(Qv, {"1": dual_numbers}, {"alpha": X})


def test_local_modules(fix_a, fix_c):
    for Lam in (fix_a, fix_c):
        T = tensor_algebra(Lam)
        for v in Lam.quiver.vertices:
            M = local_module(T, v)
            assert M.dim == Lam.algebra(v).dim
            assert proj_dim(M).at_most(1)


def test_module_rep_round_trip(fix_c):
    T = tensor_algebra(fix_c)
    R = Module.regular(T.algebra)
    rep = module_to_rep(T, R)
    assert rep.dimension_vector() == {"1": 2, "2": 4}
    assert rep_to_module(T, rep).dim == R.dim


def test_in_map_of_regular_module(fix_a):
    T = tensor_algebra(fix_a)
    rep = module_to_rep(T, Module.regular(T.algebra))
    f, parts = in_map(rep, "2")
    assert [label for label, _ in parts] == ["alpha"]
    assert f.rank() == f.cols == 1
    f, parts = in_map(rep, "1")
    assert parts == [] and f.cols == 0


def test_locally_projective(fix_c):
    T = tensor_algebra(fix_c)
    assert is_locally_projective(module_to_rep(T, Module.regular(T.algebra)))
    assert not is_locally_projective(module_to_rep(T, simple_module(T.algebra, 0)))


def test_standard_resolution_is_exact(fix_a, fix_c):
    for Lam in (fix_a, fix_c):
        T = tensor_algebra(Lam)
        for M in (Module.regular(T.algebra), local_module(T, "1")):
            res = standard_resolution(T, module_to_rep(T, M))
            assert res.is_exact()


def test_zero_representation(fix_c):
    rep = Representation.zero(fix_c)
    assert rep.total_dimension() == 0
    assert set(rep.dimension_vector().values()) == {0}


def test_gorenstein_conditions_agree(fix_a, fix_c):
    T = tensor_algebra(fix_a)
    report = gorenstein_conditions(T, 0, local_module(T, "1"))
    assert report.conditions == [True] * 6
    T = tensor_algebra(fix_c)
    report = gorenstein_conditions(T, 0, local_module(T, "2"))
    assert len(set(report.conditions)) == 1


def test_gorenstein_projective_local_modules(fix_c):
    T = tensor_algebra(fix_c)
    assert is_gorenstein_projective(T, local_module(T, "2")) == GPVerdict.TRUE
    assert is_gorenstein_projective(T, local_module(T, "1")) == GPVerdict.FALSE
