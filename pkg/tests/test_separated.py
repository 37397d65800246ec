from random import Random

import pytest

from prospecies_entry.core.errors import NotLocallySelfinjective, ShapeMismatch, StructureError
from prospecies_entry.engine.exactla import Matrix, combine_matrices
from prospecies_entry.engine.modules import (
    Module, hom_space, indecomposable_projective, is_indecomposable, is_isomorphic, simple_module,
)
from prospecies_entry.engine.prospecies import (
    Representation, is_locally_projective, is_rep_hom, local_module, module_to_rep, rep_to_module, tensor_algebra,
)
from prospecies_entry.engine.separated import (
    density_preimage, epi_projective_split, gamma_algebra, gamma_module_from_tensor, gamma_module_to_tensor,
    in_rep_epi, is_gamma_module, non_selfinjective_counterexample, separated_prospecies, separation_functor,
    separation_functor_on_hom, separation_report, stable_hom_pair,
)
from prospecies_entry.schemas.reports import IsoVerdict


def test_gamma_dimensions(fix_a, fix_b, fix_c, loop):
    assert gamma_algebra(fix_a).dim == 3
    assert gamma_algebra(fix_b).dim == 9
    assert gamma_algebra(fix_c).dim == 6
    G = gamma_algebra(loop)
    assert G.dim == loop.algebra("1").dim + loop.bimodule("alpha").dim
    assert G.radical_square_zero()


def test_separated_prospecies(fix_a):
    S = separated_prospecies(fix_a)
    assert S.quiver.vertices == ("1", "2", "1_bar", "2_bar")
    assert [a.label for a in S.quiver.arrows] == ["alpha_bar"]
    assert S.quiver.arrow("alpha_bar").target == "2_bar"


def test_separation_of_regular_module(fix_a):
    G = gamma_algebra(fix_a)
    report = separation_report(G, Module.regular(G.algebra))
    assert report.gamma_dimension == 3
    assert report.dimension_vector == {"1": 1, "2": 1, "1_bar": 0, "2_bar": 1}
    assert report.in_rep_epi


def test_separation_of_loop(loop):
    G = gamma_algebra(loop)
    rep = separation_functor(G, Module.regular(G.algebra))
    assert rep.dimension_vector() == {"1": 2, "1_bar": 2}


def test_density_preimage(fix_a):
    G = gamma_algebra(fix_a)
    rep = separation_functor(G, Module.regular(G.algebra))
    M = density_preimage(G, rep)
    assert M.dim == 3
    back = separation_functor(G, M)
    assert back.dimension_vector() == rep.dimension_vector()
    Ts = G.separated_tensor()
    assert is_isomorphic(rep_to_module(Ts, back), rep_to_module(Ts, rep)).verdict == IsoVerdict.TRUE


def test_density_preimage_needs_epi(fix_a):
    G = gamma_algebra(fix_a)
    Ls = G.separated
    S = simple_module(fix_a.algebra("2"), 0)
    modules = {v: Module.zero(Ls.algebra(v)) for v in Ls.quiver.vertices}
    modules["2_bar"] = S
    rep = Representation(Ls, modules, {}, verify=False)
    rep.maps = {a.label: Matrix.zeros(Ls.field, modules[a.target].dim, rep.tensor(a.label).dim)
                for a in Ls.quiver.arrows}
    with pytest.raises(StructureError):
        density_preimage(G, rep)


def test_separation_on_identity(fix_a):
    G = gamma_algebra(fix_a)
    R = Module.regular(G.algebra)
    maps = separation_functor_on_hom(G, R, R, Matrix.identity(G.algebra.field, R.dim))
    assert maps["2"] == Matrix.identity(G.algebra.field, 1)
    assert maps["2_bar"] == Matrix.identity(G.algebra.field, 1)


def test_stable_hom_is_preserved(fix_a):
    G = gamma_algebra(fix_a)
    S1 = simple_module(G.algebra, G.algebra.idempotent_labels.index("1"))
    gamma, separated = stable_hom_pair(G, S1, S1)
    assert gamma == separated == 1
    R = Module.regular(G.algebra)
    assert stable_hom_pair(G, R, R) == (0, 0)


def test_gamma_modules_inside_truncated_tensor(loop):
    T = tensor_algebra(loop, max_degree=2)
    G = gamma_algebra(loop)
    assert not is_gamma_module(T, Module.regular(T.algebra))
    V = local_module(T, "1")
    assert is_gamma_module(T, V)
    M = gamma_module_from_tensor(G, T, V)
    assert M.dim == 2
    assert gamma_module_to_tensor(G, T, M).dim == 2
    with pytest.raises(StructureError):
        gamma_module_from_tensor(G, T, Module.regular(T.algebra))


def test_epi_projective_split(fix_a):
    T = tensor_algebra(fix_a)
    rep = module_to_rep(T, Module.regular(T.algebra))
    split = epi_projective_split(T, rep)
    assert split.certified
    assert split.epi_part.dimension_vector() == {"1": 1, "2": 1}
    assert split.complement.dimension_vector() == {"1": 0, "2": 1}
    assert [v for v, _ in split.summands] == ["2"]
    assert in_rep_epi(split.epi_part)


def test_split_needs_bipartite_quiver(loop):
    T = tensor_algebra(loop, max_degree=1)
    rep = module_to_rep(T, Module.regular(T.algebra))
    with pytest.raises(ShapeMismatch):
        epi_projective_split(T, rep)


def test_non_selfinjective_counterexample(Q):
    T, rep = non_selfinjective_counterexample(Q)
    assert rep.dimension_vector() == {"1": 1, "2": 2}
    assert not in_rep_epi(rep)
    with pytest.raises(NotLocallySelfinjective):
        epi_projective_split(T, rep)


def locally_projective_corpus(G):
    """Sums of vertex algebras and indecomposable projectives of Γ"""
    A = G.algebra
    s, t = G.prospecies.quiver.vertices
    Ls, Lt = local_module(G.graded, s), local_module(G.graded, t)
    P0, P1 = (indecomposable_projective(A, a)[0] for a in range(2))
    R = Module.regular(A)
    return [Ls, Lt, P0, P1, R, Ls.direct_sum(Lt), Lt.direct_sum(Ls), Ls.direct_sum(P0), P0.direct_sum(P1),
            Lt.direct_sum(Lt)]


def random_hom(rng, M, N):
    H = hom_space(M, N)
    field = M.field
    return combine_matrices(field, [field.coerce(rng.randint(-3, 3)) for _ in H], H, N.dim, M.dim)


def test_stable_hom_matches_on_locally_projective_corpus(fix_c):
    G = gamma_algebra(fix_c)
    corpus = locally_projective_corpus(G)
    assert len(corpus) >= 10
    for M in corpus:
        assert is_locally_projective(module_to_rep(G.graded, M)), M.name
    for M in corpus:
        for N in corpus:
            gamma, separated = stable_hom_pair(G, M, N)
            assert gamma == separated, f"{M.name}, {N.name}"


def test_separation_lands_in_locally_projective_epi(fix_c):
    G = gamma_algebra(fix_c)
    for M in locally_projective_corpus(G):
        rep = separation_functor(G, M)
        assert in_rep_epi(rep), M.name
        assert is_locally_projective(rep), M.name


def test_separation_reflects_isomorphism(fix_c):
    G = gamma_algebra(fix_c)
    Ts = G.separated_tensor()
    corpus = locally_projective_corpus(G)
    images = [rep_to_module(Ts, separation_functor(G, M)) for M in corpus]
    matched = 0
    for i, M in enumerate(corpus):
        for j in range(i + 1, len(corpus)):
            if is_isomorphic(images[i], images[j]).verdict == IsoVerdict.TRUE:
                matched += 1
                assert is_isomorphic(M, corpus[j]).verdict == IsoVerdict.TRUE, f"{M.name}, {corpus[j].name}"
    assert matched >= 1
    for M, image in zip(corpus, images):
        if is_indecomposable(M):
            assert is_indecomposable(image), M.name


def test_separation_respects_composition(fix_c):
    G = gamma_algebra(fix_c)
    A = G.algebra
    R = Module.regular(A)
    rng = Random(4)
    for a in range(len(A.idempotents)):
        P = indecomposable_projective(A, a)[0]
        f = random_hom(rng, P, R)
        g = random_hom(rng, R, R)
        Ff = separation_functor_on_hom(G, P, R, f)
        Fg = separation_functor_on_hom(G, R, R, g)
        Fgf = separation_functor_on_hom(G, P, R, g @ f)
        assert is_rep_hom(separation_functor(G, P), separation_functor(G, R), Ff)
        for v in Fgf:
            assert Fgf[v] == Fg[v] @ Ff[v], v


def test_epi_projective_split_with_extra_sink_summand(fix_c):
    T = tensor_algebra(fix_c)
    sink = fix_c.quiver.arrow("alpha").target
    M = Module.regular(T.algebra).direct_sum(local_module(T, sink))
    split = epi_projective_split(T, module_to_rep(T, M))
    assert split.certified
    assert [v for v, _ in split.summands] == [sink]
    assert split.complement.dimension_vector()[sink] == 2 * fix_c.algebra(sink).dim
    assert in_rep_epi(split.epi_part)


def test_counterexample_is_indecomposable_and_not_a_vertex_algebra(Q):
    T, rep = non_selfinjective_counterexample(Q)
    M = rep_to_module(T, rep)
    assert is_indecomposable(M)
    for v in rep.prospecies.quiver.vertices:
        assert is_isomorphic(M, local_module(T, v)).verdict == IsoVerdict.FALSE
