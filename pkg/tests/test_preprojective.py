from random import Random

import pytest

from prospecies_entry.core.errors import DomainError, NotPiModule
from prospecies_entry.engine.algebra import bound_quiver_algebra
from prospecies_entry.engine.exactla import combine, zero_vector
from prospecies_entry.engine.modules import Module
from prospecies_entry.engine.preprojective import (
    STAR, annihilated_by_relation, bimodule_complex, casimir_element, double_prospecies, dual_bimodule,
    flip_orientation, is_dualisable, is_pi_module, preprojective_algebra, preprojective_relation, vertex_ideal,
)
from prospecies_entry.engine.presentation import present_preprojective, presentation_graded_dimensions
from prospecies_entry.schemas.reports import IsoVerdict
from prospecies_entry.utils.corpus import module_corpus, random_module
from prospecies_entry.utils.dsl import parse_instance

A3 = """\
field Q;
quiver { vertex 1 2 3; arrow alpha: 1 -> 2; arrow beta: 2 -> 3; }
bimodule alpha { kind: regular; }
bimodule beta { kind: regular; }
"""


def test_preprojective_of_a2(fix_a):
    Pi = preprojective_algebra(fix_a, 3)
    assert Pi.dim == 4
    assert Pi.graded_dimensions() == [2, 2, 0]
    assert Pi.finite_certified
    summary = Pi.summary()
    assert summary.dimension == 4
    assert summary.truncation == 3


def test_truncation_must_reach_degree_two(fix_a):
    with pytest.raises(DomainError):
        preprojective_algebra(fix_a, 1)


def test_vertex_ideal(fix_a):
    Pi = preprojective_algebra(fix_a, 3)
    assert vertex_ideal(Pi, "1").dim == 3
    assert vertex_ideal(Pi, "2").dim == 3


def test_dualisable(fix_a, fix_c):
    for Lam in (fix_a, fix_c):
        cert = is_dualisable(Lam)
        assert cert.dualisable
        assert cert.report().arrows == {"alpha": IsoVerdict.TRUE}
        assert cert.theta("alpha").is_invertible()


def test_doubled_prospecies(fix_c):
    Lbar = double_prospecies(fix_c)
    assert [a.label for a in Lbar.quiver.arrows] == ["alpha", "alpha_star"]
    assert Lbar.is_starred("alpha_star")
    assert Lbar.original("alpha_star") == "alpha"
    assert Lbar.bimodule("alpha_star").dim == 2


def test_gls_preprojective_low_degrees(fix_c):
    Pi = preprojective_algebra(fix_c, 3)
    assert Pi.graded_dimensions()[:2] == [4, 4]


def test_flipping_an_arrow_keeps_graded_dimensions(fix_a):
    flipped = flip_orientation(fix_a, "alpha")
    assert flipped.quiver.arrow("alpha_op").source == "2"
    assert preprojective_algebra(flipped, 3).graded_dimensions() == [2, 2, 0]


def test_pull_back_and_push_forward(fix_a):
    Pi = preprojective_algebra(fix_a, 3)
    R = Module.regular(Pi.algebra)
    pulled = Pi.pull_back(R)
    assert annihilated_by_relation(Pi, pulled)
    assert Pi.push_forward(pulled).dim == R.dim


def test_push_forward_rejects_non_pi_modules(fix_a):
    Pi = preprojective_algebra(fix_a, 3)
    with pytest.raises(NotPiModule):
        Pi.push_forward(Module.regular(Pi.tensor.algebra))


def test_casimir_relation_has_both_vertex_components(fix_a):
    Pi = preprojective_algebra(fix_a, 3)
    c, components = preprojective_relation(Pi.tensor)
    assert any(c)
    assert set(components) == {"1", "2"}
    assert all(any(x) for x in components.values())


def test_dual_bimodule_of_gls(fix_c):
    assert dual_bimodule(fix_c, "alpha").dim == 2


def test_pi_modules_inside_the_doubled_tensor_algebra(fix_a):
    Pi = preprojective_algebra(fix_a, 3)
    assert is_pi_module(Pi.tensor, Pi.pull_back(Module.regular(Pi.algebra)))
    assert not is_pi_module(Pi.tensor, Module.regular(Pi.tensor.algebra))


@pytest.mark.parametrize("name", ["A", "C"])
def test_bimodule_complex_composite_vanishes(name, fix_a, fix_c):
    Lam = {"A": fix_a, "C": fix_c}[name]
    Pi = preprojective_algebra(Lam, 4)
    check = bimodule_complex(Pi)
    assert check.is_complex
    assert set(check.d1) == {"1", "2"}
    assert all(any(v) for v in check.d1.values())


def test_bimodule_complex_needs_the_signs():
    Pi = preprojective_algebra(parse_instance(A3), 4)
    assert Pi.finite_certified
    assert bimodule_complex(Pi).is_complex
    T = Pi.tensor
    field = T.algebra.field
    unsigned = zero_vector(field, T.dim)
    for a in ("alpha", "beta"):
        for label in (a, a + STAR):
            unsigned = combine(field, [field.one(), field.one()], [unsigned, casimir_element(T, label)], T.dim)
    check = bimodule_complex(Pi, relation=unsigned)
    assert not check.is_complex
    assert any(check.composite["2"])


def test_casimir_relation_does_not_depend_on_generators(fix_c):
    Pi = preprojective_algebra(fix_c, 3)
    T = Pi.tensor
    for label in ("alpha", "alpha" + STAR):
        default = casimir_element(T, label)
        assert casimir_element(T, label, generators=[[1, 0], [0, 1]]) == default
        assert casimir_element(T, label, generators=[[2, 1], [1, 0], [0, 3]]) == default
    assert preprojective_relation(T)[0] == preprojective_relation(preprojective_algebra(fix_c, 3).tensor)[0]


@pytest.mark.parametrize("name, graded", [("A", [2, 2, 0]), ("C", [4, 4, 0])])
def test_orientation_flip_up_to_degree_eight(name, graded, fix_a, fix_c):
    Lam = {"A": fix_a, "C": fix_c}[name]
    Pi = preprojective_algebra(Lam, 8)
    assert Pi.graded_dimensions() == graded
    assert preprojective_algebra(flip_orientation(Lam, "alpha"), 8).graded_dimensions() == graded


def test_gls_presentation_rebuilds_graded_dimensions(fix_c):
    P = present_preprojective(fix_c, check_degree=8)
    rebuilt = bound_quiver_algebra(P.bound_quiver(max_weight=8), fix_c.field, name=P.name)
    got = presentation_graded_dimensions(P, rebuilt)
    assert (got + [0] * 3)[:3] == [4, 4, 0]


@pytest.mark.parametrize("name", ["A", "C"])
def test_pi_modules_are_those_killed_by_the_relation(name, fix_a, fix_c):
    Lam = {"A": fix_a, "C": fix_c}[name]
    Pi = preprojective_algebra(Lam, 3)
    assert Pi.finite_certified
    rng = Random(4)
    modules = module_corpus(Pi.tensor.algebra, 10, seed=5)
    modules += [Pi.pull_back(random_module(rng, Pi.algebra, name=f"pi{k}")) for k in range(10)]
    verdicts = []
    for V in modules:
        verdict = is_pi_module(Pi.tensor, V)
        assert verdict == annihilated_by_relation(Pi, V), V.name
        verdicts.append(verdict)
    assert all(verdicts[10:])
