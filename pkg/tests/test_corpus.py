from random import Random

import pytest

from prospecies_entry.engine.prospecies import gorenstein_conditions, local_module, path_dimension_oracle, tensor_algebra
from prospecies_entry.engine.resolutions import proj_dim
from prospecies_entry.utils.corpus import (
    SELFINJECTIVE_KINDS, instance_corpus, module_corpus, random_instance_text, random_module,
)


@pytest.fixture
def corpus():
    return instance_corpus(10, max_vertices=4, seed=0)


@pytest.fixture
def selfinjective_corpus():
    return instance_corpus(3, max_vertices=3, kinds=SELFINJECTIVE_KINDS, seed=1)


def test_generator_is_deterministic():
    assert random_instance_text(Random(5)) == random_instance_text(Random(5))


def test_instances_are_acyclic_and_bounded(corpus):
    assert len(corpus) == 10
    for _, Lam in corpus:
        assert 1 <= len(Lam.quiver.vertices) <= 4
        assert all(int(a.source) < int(a.target) for a in Lam.quiver.arrows)


def test_vertex_modules_have_projective_dimension_at_most_one(corpus):
    for _, Lam in corpus:
        T = tensor_algebra(Lam)
        for v in Lam.quiver.vertices:
            assert proj_dim(local_module(T, v)).at_most(1), f"Λ_{v} in {Lam.name}"


def test_tensor_dimension_matches_path_oracle(corpus):
    for _, Lam in corpus:
        assert tensor_algebra(Lam).dim == path_dimension_oracle(Lam)


def test_gorenstein_conditions_agree_on_random_modules(selfinjective_corpus):
    for _, Lam in selfinjective_corpus:
        T = tensor_algebra(Lam)
        for M in module_corpus(T.algebra, 20, seed=2):
            report = gorenstein_conditions(T, 0, M)
            assert len(set(report.conditions)) == 1, f"{M.name} over {Lam.name}: {report.conditions}"
            assert report.injective_dimension_bound_met
            assert report.resolution_bound == 8


def test_random_modules_are_nonzero(fix_c):
    T = tensor_algebra(fix_c)
    rng = Random(3)
    for k in range(10):
        M = random_module(rng, T.algebra, name=f"N{k}")
        assert M.dim > 0
        assert M.name == f"N{k}"
