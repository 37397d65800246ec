from fractions import Fraction

from prospecies_entry.engine.presentation import (
    bimodule_projective_cover, certify_tensor_presentation, present_preprojective, present_tensor_algebra,
)
from prospecies_entry.engine.prospecies import tensor_algebra, valuation
from prospecies_entry.schemas.presentation import RelationOrigin
from prospecies_entry.utils.dsl import parse_instance
from prospecies_entry.utils.fixtures import FIX_C_PRESENTED


def test_present_a2(fix_a):
    P = present_tensor_algebra(fix_a)
    assert P.quiver.vertices == ("1", "2")
    assert [a.label for a in P.quiver.arrows] == ["alpha#0"]
    assert P.relations == ()
    assert certify_tensor_presentation(fix_a).certified


def test_present_commutative_square(fix_b):
    P = present_tensor_algebra(fix_b)
    assert P.quiver.vertices == ("1_1", "2_1", "1_2", "2_2")
    assert sorted(a.label for a in P.quiver.arrows) == ["alpha#0", "alpha#1", "b_1", "b_2"]
    assert P.cover_arrows() == ["alpha#0", "alpha#1"]
    assert len(P.relations) == 1
    assert len(P.relations_of(RelationOrigin.ARROW)) == 1
    assert P.relations_of(RelationOrigin.VERTEX) == []
    cert = certify_tensor_presentation(fix_b)
    assert cert.bijective
    assert cert.certified


def test_present_gls(fix_c):
    P = present_tensor_algebra(fix_c)
    assert [a.label for a in P.quiver.arrows] == ["x_1", "x_2", "alpha#0"]
    assert len(P.relations_of(RelationOrigin.VERTEX)) == 2
    (intertwining,) = P.relations_of(RelationOrigin.ARROW)
    assert {t.path.render() for t in intertwining.terms} == {"x_2.alpha#0", "alpha#0.x_1"}
    assert sum(Fraction(t.coefficient) for t in intertwining.terms) == 0
    assert certify_tensor_presentation(fix_c).certified


def test_bimodule_cover_of_gls(fix_c):
    cover = bimodule_projective_cover(fix_c, "alpha")
    assert cover.top_dimension == 1
    assert cover.cover.dim == 4
    assert len(cover.kernel_generators) == 1


def test_present_preprojective_adds_casimir_relations(fix_a):
    P = present_preprojective(fix_a, check_degree=3)
    assert sorted(a.label for a in P.quiver.arrows) == ["alpha#0", "alpha_star#0"]
    casimir = P.relations_of(RelationOrigin.CASIMIR)
    assert len(casimir) == 2
    assert sorted(r.name for r in casimir) == ["c[1]", "c[2]"]
    assert all(t.path.length == 2 for r in casimir for t in r.terms)


def test_present_preprojective_of_gls(fix_c):
    P = present_preprojective(fix_c, check_degree=2)
    assert len(P.relations_of(RelationOrigin.CASIMIR)) == 2
    assert len(P.relations_of(RelationOrigin.ARROW)) == 2


def test_presented_bimodule_matches_gls():
    Lam = parse_instance(FIX_C_PRESENTED)
    assert Lam.bimodule("alpha").dim == 2
    assert tensor_algebra(Lam).dim == 6
    assert valuation(Lam).arrow_ranks == {"alpha": [1, 1]}
