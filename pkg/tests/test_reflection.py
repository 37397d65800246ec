from random import Random

import pytest

from prospecies_entry.core.errors import NotSinkOrSource
from prospecies_entry.engine.exactla import combine_matrices
from prospecies_entry.engine.modules import (
    Module, hom_space, indecomposable_projective, is_isomorphic, simple_module, tensor_over,
)
from prospecies_entry.engine.preprojective import double_prospecies, preprojective_algebra
from prospecies_entry.engine.prospecies import local_module, module_to_rep, tensor_algebra, vertex_subspaces
from prospecies_entry.engine.reflection import (
    bgp_minus, bgp_plus, in_out, is_pi_representation, pi_module_to_rep, reflect_prospecies, sigma_minus,
    sigma_module, sigma_plus, sigma_plus_on_hom, sigma_plus_on_hom_check, sigma_via_ideal,
    sub_dimension_by_kernels, sub_fac, vee, verify_reflection_sequences, wedge,
)
from prospecies_entry.schemas.reports import IsoVerdict
from prospecies_entry.utils.corpus import module_corpus, random_module


@pytest.fixture
def pi_a2(fix_a):
    return preprojective_algebra(fix_a, 3)


def pi_simple(Pi, vertex):
    S = simple_module(Pi.algebra, Pi.algebra.idempotent_labels.index(vertex))
    S.name = f"S{vertex}"
    return S


def test_sigma_plus_of_simples(pi_a2):
    S2 = pi_simple(pi_a2, "2")
    out = sigma_module(pi_a2, S2, "1", "+")
    assert pi_module_to_rep(pi_a2, out).dimension_vector() == {"1": 1, "2": 1}
    S1 = pi_simple(pi_a2, "1")
    assert sigma_module(pi_a2, S1, "1", "+").dim == 0


def test_sigma_minus_of_simple(pi_a2):
    S2 = pi_simple(pi_a2, "2")
    out = sigma_module(pi_a2, S2, "1", "-")
    assert pi_module_to_rep(pi_a2, out).dimension_vector() == {"1": 1, "2": 1}


def test_simple_representations_satisfy_relation(pi_a2):
    for v in ("1", "2"):
        rep = pi_module_to_rep(pi_a2, pi_simple(pi_a2, v))
        assert is_pi_representation(rep)
        assert in_out(rep, v).composite().is_zero()


def test_sigma_agrees_with_vertex_ideal(pi_a2):
    S2 = pi_simple(pi_a2, "2")
    assert sigma_via_ideal(pi_a2, S2, "1", "+").dim == sigma_module(pi_a2, S2, "1", "+").dim == 2


def test_reflection_sequences_are_exact(pi_a2):
    for v in ("1", "2"):
        rep = pi_module_to_rep(pi_a2, pi_simple(pi_a2, "2"))
        report = verify_reflection_sequences(rep, v)
        assert report.first_exact
        assert report.second_exact


def test_sub_and_fac(pi_a2):
    rep = pi_module_to_rep(pi_a2, pi_simple(pi_a2, "1"))
    parts = sub_fac(rep, "1")
    assert parts.sub.modules["1"].dim == 1
    assert parts.fac.modules["1"].dim == 1
    assert sub_dimension_by_kernels(rep, "1") == 1


def test_sigma_plus_kills_a_simple_at_its_vertex(pi_a2):
    rep = pi_module_to_rep(pi_a2, pi_simple(pi_a2, "1"))
    assert sigma_plus(rep, "1").total_dimension() == 0


def test_bgp_plus_at_sink(fix_a):
    T = tensor_algebra(fix_a)
    rep = module_to_rep(T, local_module(T, "1"))
    out = bgp_plus(fix_a, rep, "2")
    assert out.dimension_vector() == {"1": 1, "2": 1}
    assert out.prospecies.quiver.arrow("alpha_star").source == "2"


def test_bgp_minus_at_source(fix_a):
    T = tensor_algebra(fix_a)
    rep = module_to_rep(T, local_module(T, "2"))
    out = bgp_minus(fix_a, rep, "1")
    assert out.dimension_vector() == {"1": 1, "2": 1}


def test_bgp_needs_sink_or_source(fix_a):
    T = tensor_algebra(fix_a)
    rep = module_to_rep(T, local_module(T, "1"))
    with pytest.raises(NotSinkOrSource):
        bgp_plus(fix_a, rep, "1")
    with pytest.raises(NotSinkOrSource):
        bgp_minus(fix_a, rep, "2")


def test_reflected_prospecies_of_gls(fix_c):
    reflected = reflect_prospecies(fix_c, "2", "sink")
    assert [a.label for a in reflected.quiver.arrows] == ["alpha_star"]
    assert reflected.bimodule("alpha_star").dim == 2


def test_sigma_minus_on_representations(pi_a2):
    rep = pi_module_to_rep(pi_a2, pi_simple(pi_a2, "2"))
    assert sigma_minus(rep, "1").dimension_vector() == {"1": 1, "2": 1}
    rep = pi_module_to_rep(pi_a2, pi_simple(pi_a2, "1"))
    assert sigma_minus(rep, "1").total_dimension() == 0


def test_vee_and_wedge_are_inverse(pi_a2):
    rep = sigma_plus(pi_module_to_rep(pi_a2, pi_simple(pi_a2, "2")), "1")
    Lbar = rep.prospecies
    for arrow in ("alpha", "alpha_star"):
        a = Lbar.quiver.arrow(arrow)
        M, N = rep.modules[a.source], rep.modules[a.target]
        f = rep.maps[arrow]
        g = vee(Lbar, arrow, f, M, N)
        assert wedge(Lbar, arrow, g, M, N) == f


def pi_test_modules(Pi, seed=0):
    A = Pi.algebra
    modules = []
    for a in range(len(A.idempotents)):
        modules.append(simple_module(A, a))
        modules.append(indecomposable_projective(A, a)[0])
    return modules + module_corpus(A, 6, seed=seed)


def vertex_maps(Pi, V, W, h):
    """A Π-module map as a morphism of the underlying representations"""
    SV = vertex_subspaces(Pi.tensor, Pi.pull_back(V))
    SW = vertex_subspaces(Pi.tensor, Pi.pull_back(W))
    return {v: SW[v].coordinate_matrix(h @ SV[v].matrix) for v in Pi.doubled.quiver.vertices}


def random_hom(rng, M, N):
    H = hom_space(M, N)
    field = M.field
    return combine_matrices(field, [field.coerce(rng.randint(-3, 3)) for _ in H], H, N.dim, M.dim)


@pytest.mark.parametrize("name", ["fix_a", "fix_c"])
def test_sigma_agrees_with_vertex_ideal_on_simples_and_projectives(name, request):
    Lam = request.getfixturevalue(name)
    Pi = preprojective_algebra(Lam, 3)
    A = Pi.algebra
    for vertex in Lam.quiver.vertices:
        for direction in ("+", "-"):
            for a in range(len(A.idempotents)):
                for V in (simple_module(A, a), indecomposable_projective(A, a)[0]):
                    via_ideal = sigma_via_ideal(Pi, V, vertex, direction)
                    via_reps = sigma_module(Pi, V, vertex, direction)
                    result = is_isomorphic(via_ideal, via_reps)
                    assert result.verdict == IsoVerdict.TRUE, f"Σ{direction}[{vertex}]({V.name})"


@pytest.mark.parametrize("name", ["fix_a", "fix_c"])
def test_reflection_sequences_on_a_module_corpus(name, request):
    Lam = request.getfixturevalue(name)
    Pi = preprojective_algebra(Lam, 3)
    for V in pi_test_modules(Pi):
        rep = pi_module_to_rep(Pi, V)
        for vertex in Lam.quiver.vertices:
            report = verify_reflection_sequences(rep, vertex)
            assert report.first_exact, f"{V.name} at {vertex}"
            assert report.second_exact, f"{V.name} at {vertex}"
            assert report.unit_iso == (report.sub_dimension == 0)
            assert report.counit_iso == (report.fac_dimension == 0)


def test_unit_flags_are_always_booleans(pi_a2):
    report = verify_reflection_sequences(pi_module_to_rep(pi_a2, pi_simple(pi_a2, "1")), "1")
    assert report.sub_dimension == report.fac_dimension == 1
    assert report.unit_iso is False
    assert report.counit_iso is False
    report = verify_reflection_sequences(pi_module_to_rep(pi_a2, pi_simple(pi_a2, "2")), "1")
    assert report.unit_iso is True
    assert report.counit_iso is True


def test_wedge_inverts_vee_on_random_homs(fix_c):
    Lbar = double_prospecies(fix_c)
    rng = Random(7)
    for k in range(20):
        arrow = ("alpha", "alpha_star")[k % 2]
        a = Lbar.quiver.arrow(arrow)
        M = random_module(rng, Lbar.algebra(a.source), name=f"M{k}")
        target = Lbar.algebra(a.target)
        N = random_module(rng, target, name=f"N{k}").direct_sum(Module.regular(target))
        f = random_hom(rng, tensor_over(Lbar.bimodule(arrow), M).module(), N)
        g = vee(Lbar, arrow, f, M, N)
        assert wedge(Lbar, arrow, g, M, N) == f
        assert vee(Lbar, arrow, wedge(Lbar, arrow, g, M, N), M, N) == g


@pytest.mark.parametrize("name", ["fix_a", "fix_c"])
def test_sigma_plus_is_functorial(name, request):
    Lam = request.getfixturevalue(name)
    Pi = preprojective_algebra(Lam, 3)
    A = Pi.algebra
    R = Module.regular(A)
    rng = Random(11)
    sources = [indecomposable_projective(A, a)[0] for a in range(len(A.idempotents))] + module_corpus(A, 3, seed=5)
    for U in sources:
        f = random_hom(rng, U, R)
        g = random_hom(rng, R, R)
        rU, rR = pi_module_to_rep(Pi, U), pi_module_to_rep(Pi, R)
        fs, gs = vertex_maps(Pi, U, R, f), vertex_maps(Pi, R, R, g)
        composite = vertex_maps(Pi, U, R, g @ f)
        for vertex in Lam.quiver.vertices:
            assert sigma_plus_on_hom_check(rU, rR, fs, vertex)
            assert sigma_plus_on_hom_check(rR, rR, gs, vertex)
            sf = sigma_plus_on_hom(rU, rR, fs, vertex)[vertex]
            sg = sigma_plus_on_hom(rR, rR, gs, vertex)[vertex]
            assert sigma_plus_on_hom(rU, rR, composite, vertex)[vertex] == sg @ sf
