from prospecies_entry.engine.modules import Module, simple_module
from prospecies_entry.engine.resolutions import (
    ext_dim, gorenstein_dimension, injective_cogenerator, inj_dim, is_iwanaga_gorenstein, is_selfinjective,
    minimal_projective_resolution, proj_dim,
)


def test_simple_resolution_over_a2(kA2):
    S1 = simple_module(kA2, 0)
    res = minimal_projective_resolution(S1, 3)
    assert res.length == 2
    assert res.terms() == [["1"], ["2"]]
    assert res.syzygies[-1].dim == 0
    assert res.is_complex()


def test_periodic_resolution_over_dual_numbers(dual_numbers):
    k = simple_module(dual_numbers, 0)
    res = minimal_projective_resolution(k, 3)
    assert res.terms() == [["1"]] * 4
    assert all(s.dim == 1 for s in res.syzygies)
    assert res.is_complex()


def test_projective_dimension(kA2, dual_numbers):
    assert proj_dim(simple_module(kA2, 0)).value == 1
    assert proj_dim(simple_module(kA2, 1)).at_most(0)
    d = proj_dim(simple_module(dual_numbers, 0), 3)
    assert not d.exact
    assert d.value == 4
    assert d.render() == ">=4"


def test_selfinjective(kA2, dual_numbers):
    assert is_selfinjective(dual_numbers)
    assert not is_selfinjective(kA2)
    assert inj_dim(Module.regular(kA2)).value == 1


def test_gorenstein_dimension(kA2, dual_numbers):
    assert gorenstein_dimension(kA2).value == 1
    assert gorenstein_dimension(dual_numbers).value == 0
    assert is_iwanaga_gorenstein(kA2, 1)
    assert not is_iwanaga_gorenstein(kA2, 0)


def test_injective_cogenerator(kA2):
    D = injective_cogenerator(kA2)
    assert D.dim == 3
    assert D.algebra is kA2


def test_ext(kA2, dual_numbers):
    S1, S2 = simple_module(kA2, 0), simple_module(kA2, 1)
    assert ext_dim(S1, S2, 1) == 1
    assert ext_dim(S2, S1, 1) == 0
    assert ext_dim(S1, S1, 0) == 1
    k = simple_module(dual_numbers, 0)
    assert ext_dim(k, k, 2) == 1
