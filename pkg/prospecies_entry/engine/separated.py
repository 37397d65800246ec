# ============================================================================
# FILE: prospecies_entry/engine/separated.py
# ============================================================================
"""Separated pro-species, Γ = T(Λ)/T(Λ)≥2 and the separation functor"""

from typing import Dict, List, Optional, Tuple
import logging

from prospecies_entry.core.errors import (
    NoSolution, NotLocallyProjective, NotLocallySelfinjective, ShapeMismatch, StructureError,
)
from prospecies_entry.engine.algebra import Algebra, bound_quiver_algebra
from prospecies_entry.engine.exactla import (
    FieldSpec, Matrix, Subspace, combine_matrices, solve_right, solve_vector, standard_vector, zero_vector,
)
from prospecies_entry.engine.modules import (
    Bimodule, IsoResult, Module, cokernel_module, hom_space, image_module, indecomposable_projective, is_isomorphic,
    stable_hom_dim,
)
from prospecies_entry.engine.prospecies import (
    GradedAlgebra, ProSpecies, Representation, build_prospecies, in_map, is_locally_projective,
    module_to_rep, rep_to_module, tensor_algebra, vertex_subspaces,
)
from prospecies_entry.engine.quiver import bar_label, is_bipartite, separated_quiver
from prospecies_entry.engine.resolutions import is_selfinjective
from prospecies_entry.schemas.quiver import Arrow, BoundQuiverPresentation, Quiver
from prospecies_entry.schemas.reports import IsoVerdict, SeparationReport

logger = logging.getLogger(__name__)


def separated_prospecies(Lam: ProSpecies) -> ProSpecies:
    """Λ^s: Λ_i sits at i and at i_bar; α_bar: i → j_bar carries Λ_α"""
    Q = Lam.quiver
    Qs = separated_quiver(Q)
    algebras = {}
    for v in Q.vertices:
        algebras[v] = Lam.algebra(v)
        algebras[bar_label(v)] = Lam.algebra(v)
    bimodules = {bar_label(a.label): Lam.bimodule(a.label) for a in Q.arrows}
    return build_prospecies(Qs, algebras, bimodules, name=f"{Lam.name}^s")


# ==================== Γ ====================

class GammaAlgebra:
    """Γ = T(Λ)/T(Λ)≥2 with the separated pro-species alongside"""

    def __init__(self, prospecies: ProSpecies, graded: GradedAlgebra, separated: ProSpecies):
        self.prospecies = prospecies
        self.graded = graded
        self.separated = separated
        self._separated_tensor: Optional[GradedAlgebra] = None

    @property
    def algebra(self) -> Algebra:
        return self.graded.algebra

    @property
    def dim(self) -> int:
        return self.graded.dim

    @property
    def radical_indices(self) -> List[int]:
        """Basis of 𝔯 = T(Λ)₁"""
        return self.graded.degree_indices(1)

    def separated_tensor(self) -> GradedAlgebra:
        if self._separated_tensor is None:
            self._separated_tensor = tensor_algebra(self.separated)
        return self._separated_tensor

    def radical_square_zero(self) -> bool:
        A = self.algebra
        field = A.field
        r = self.radical_indices
        for i in r:
            for j in r:
                if any(A.mul(standard_vector(field, A.dim, i), standard_vector(field, A.dim, j))):
                    return False
        return True


def gamma_algebra(Lam: ProSpecies) -> GammaAlgebra:
    """Degree ≤ 1 part of T(Λ); built directly, so oriented cycles are allowed"""
    graded = tensor_algebra(Lam, max_degree=1)
    graded.algebra.name = f"Γ({Lam.name})"
    return GammaAlgebra(Lam, graded, separated_prospecies(Lam))


def _matching_indices(T: GradedAlgebra, G: GammaAlgebra) -> List[Tuple[int, int]]:
    """(index in Γ, index in T) for every basis element of degree ≤ 1"""
    pairs = []
    for b in G.graded.blocks:
        tb = T.block(b.path)
        pairs.extend(zip(b.indices, tb.indices))
    return pairs


def is_gamma_module(T: GradedAlgebra, V: Module) -> bool:
    """V is annihilated by T(Λ)≥2"""
    field = V.field
    for k, d in enumerate(T.degrees):
        if d >= 2 and not V.act(standard_vector(field, T.dim, k)).is_zero():
            return False
    return True


def gamma_module_from_tensor(G: GammaAlgebra, T: GradedAlgebra, V: Module) -> Module:
    if not is_gamma_module(T, V):
        raise StructureError(f"{V.name} is not annihilated by paths of length two")
    action: List[Optional[Matrix]] = [None] * G.dim
    for g, t in _matching_indices(T, G):
        action[g] = V.action[t]
    return Module(G.algebra, V.dim, action, name=V.name)


def gamma_module_to_tensor(G: GammaAlgebra, T: GradedAlgebra, M: Module) -> Module:
    field = M.field
    action = [Matrix.zeros(field, M.dim, M.dim) for _ in range(T.dim)]
    for g, t in _matching_indices(T, G):
        action[t] = M.action[g]
    return Module(T.algebra, M.dim, action, name=M.name)


# ==================== SEPARATION FUNCTOR ====================

class SeparationData:
    """Per-vertex image of the in-map, its inclusion, the quotient and a section"""

    def __init__(self, rep: Representation):
        self.rep = rep
        self.inclusions: Dict[str, Matrix] = {}
        self.images: Dict[str, Module] = {}
        self.quotients: Dict[str, Module] = {}
        self.projections: Dict[str, Matrix] = {}
        self.sections: Dict[str, Matrix] = {}


def _separate(G: GammaAlgebra, M: Module) -> Tuple[Representation, SeparationData]:
    Lam = G.prospecies
    field = Lam.field
    rep = module_to_rep(G.graded, M)
    data = SeparationData(rep)
    for v in Lam.quiver.vertices:
        Mv = rep.modules[v]
        f, _ = in_map(rep, v)
        image, inc = image_module(Mv, f)
        quotient, P = cokernel_module(Mv, f)
        data.images[v], data.inclusions[v] = image, inc
        data.quotients[v], data.projections[v] = quotient, P
        data.sections[v] = solve_right(P, Matrix.identity(field, quotient.dim)) if quotient.dim else Matrix.zeros(field, Mv.dim, 0)

    Ls = G.separated
    modules = {}
    for v in Lam.quiver.vertices:
        modules[v] = data.quotients[v]
        modules[bar_label(v)] = data.images[v]
    out = Representation(Ls, modules, {}, verify=False)
    for a in Lam.quiver.arrows:
        label = bar_label(a.label)
        target = Subspace(field, rep.modules[a.target].dim, data.inclusions[a.target].columns(), independent=True)
        Ts = out.tensor(label)
        Ta = rep.tensor(a.label)
        da = Lam.bimodule(a.label).dim
        cols = []
        for h, q in Ts.lift_indices():
            m = data.sections[a.source].column(q)
            value = rep.maps[a.label].apply(Ta.pure(standard_vector(field, da, h), m))
            try:
                cols.append(target.coords(value))
            except NoSolution:
                raise StructureError(f"M_{a.label} leaves the image of the in-map at {a.target}", arrow=a.label)
        out.maps[label] = Matrix.from_columns(field, cols, target.dim)
    out.verify()
    return out, data


def separation_functor(G: GammaAlgebra, M: Module) -> Representation:
    """F(M)_i = M_i / im in_i, F(M)_i_bar = im in_i, F(M)_α_bar induced by M_α"""
    rep, _ = _separate(G, M)
    logger.debug(f"F({M.name}) has dimension vector {rep.dimension_vector()}")
    return rep


def separation_functor_on_hom(G: GammaAlgebra, M: Module, N: Module, f: Matrix) -> Dict[str, Matrix]:
    """Maps induced by a Γ-homomorphism f on images and quotients"""
    Lam = G.prospecies
    _, dm = _separate(G, M)
    _, dn = _separate(G, N)
    sm = vertex_subspaces(G.graded, M)
    sn = vertex_subspaces(G.graded, N)
    out = {}
    for v in Lam.quiver.vertices:
        fv = sn[v].coordinate_matrix(f @ sm[v].matrix)
        restricted = fv @ dm.inclusions[v]
        if dn.images[v].dim:
            out[bar_label(v)] = solve_right(dn.inclusions[v], restricted)
        else:
            out[bar_label(v)] = Matrix.zeros(M.field, 0, dm.images[v].dim)
        out[v] = dn.projections[v] @ fv @ dm.sections[v]
    return out


def in_rep_epi(rep: Representation) -> bool:
    """Every non-source vertex has a surjective in-map"""
    Q = rep.prospecies.quiver
    for v in Q.vertices:
        if not Q.arrows_into(v):
            continue
        f, _ = in_map(rep, v)
        if f.rank() != rep.modules[v].dim:
            return False
    return True


def separation_report(G: GammaAlgebra, M: Module) -> SeparationReport:
    rep = separation_functor(G, M)
    return SeparationReport(
        gamma_dimension=G.dim,
        separated_vertices=list(G.separated.quiver.vertices),
        dimension_vector=rep.dimension_vector(),
        in_rep_epi=in_rep_epi(rep),
    )


def stable_hom_pair(G: GammaAlgebra, M: Module, N: Module) -> Tuple[int, int]:
    """Stable Hom over Γ and over T(Λ^s) after applying F"""
    Ts = G.separated_tensor()
    FM = rep_to_module(Ts, separation_functor(G, M))
    FN = rep_to_module(Ts, separation_functor(G, N))
    return stable_hom_dim(M, N), stable_hom_dim(FM, FN)


def density_preimage(G: GammaAlgebra, rep: Representation) -> Module:
    """Γ-module M with F(M) ≅ rep for rep in rep^epi of Λ^s

    M_i = N_i ⊕ N_i_bar; M_α sends Λ_α ⊗ N_i through N_α_bar into the N_j_bar summand
    and kills Λ_α ⊗ N_i_bar, so paths of length two act by zero.
    """
    if rep.prospecies is not G.separated:
        raise ShapeMismatch("Representation does not live on the separated pro-species of Γ")
    Lam = G.prospecies
    field = Lam.field
    for v in Lam.quiver.vertices:
        b = bar_label(v)
        if in_map(rep, b)[0].rank() != rep.modules[b].dim:
            raise StructureError(f"In-map at {b} is not surjective", vertex=b)
    modules = {v: rep.modules[v].direct_sum(rep.modules[bar_label(v)]) for v in Lam.quiver.vertices}
    out = Representation(Lam, modules, {}, verify=False)
    for a in Lam.quiver.arrows:
        label = bar_label(a.label)
        top = rep.modules[a.source].dim
        offset = rep.modules[a.target].dim
        Ta = out.tensor(a.label)
        Ts = rep.tensor(label)
        da = Lam.bimodule(a.label).dim
        cols = []
        for h, j in Ta.lift_indices():
            column = zero_vector(field, modules[a.target].dim)
            if j < top:
                value = rep.maps[label].apply(Ts.pure(standard_vector(field, da, h), standard_vector(field, top, j)))
                column[offset:] = value
            cols.append(column)
        out.maps[a.label] = Matrix.from_columns(field, cols, modules[a.target].dim)
    out.verify()
    M = rep_to_module(G.graded, out)
    M.name = f"F⁻¹({Lam.name})"
    logger.debug(f"Density preimage of dimension {M.dim}")
    return M


# ==================== EPI / PROJECTIVE SPLIT ====================

class EpiProjectiveSplit:
    """M ≅ X ⊕ N with X in rep^epi and N concentrated at sinks with zero arrow maps"""

    def __init__(self, epi_part: Representation, complement: Representation,
                 summands: List[Tuple[str, Module]], certificate: IsoResult):
        self.epi_part = epi_part
        self.complement = complement
        self.summands = summands
        self.certificate = certificate

    @property
    def certified(self) -> bool:
        return self.certificate.verdict == IsoVerdict.TRUE


def _retraction(Mv: Module, image: Module, inc: Matrix) -> Optional[Matrix]:
    """Λ_i-linear r: M_i → im with r ∘ inc = 1"""
    field = Mv.field
    H = hom_space(Mv, image)
    if not H:
        return None
    system = Matrix.from_columns(field, [(h @ inc).flatten() for h in H], image.dim * image.dim)
    try:
        c = solve_vector(system, Matrix.identity(field, image.dim).flatten())
    except NoSolution:
        return None
    return combine_matrices(field, c, H, image.dim, Mv.dim)


def epi_projective_split(T: GradedAlgebra, rep: Representation) -> EpiProjectiveSplit:
    """Split a locally projective representation of a bipartite pro-species"""
    Lam = rep.prospecies
    Q = Lam.quiver
    field = Lam.field
    if not is_bipartite(Q):
        raise ShapeMismatch(f"Quiver of {Lam.name} is not bipartite")
    for v in Q.vertices:
        if not is_selfinjective(Lam.algebra(v)):
            raise NotLocallySelfinjective(f"Λ_{v} is not selfinjective", vertex=v)
    if not is_locally_projective(rep):
        raise NotLocallyProjective("Representation is not locally projective")

    x_modules, n_modules = {}, {}
    inclusions = {}
    summands = []
    for v in Q.vertices:
        Mv = rep.modules[v]
        if not Q.arrows_into(v):
            x_modules[v] = Mv
            inclusions[v] = Matrix.identity(field, Mv.dim)
            n_modules[v] = Module.zero(Lam.algebra(v))
            continue
        f, _ = in_map(rep, v)
        image, inc = image_module(Mv, f)
        if image.dim and image.dim < Mv.dim and _retraction(Mv, image, inc) is None:
            raise StructureError(f"Image of the in-map at {v} is not a direct summand", vertex=v)
        quotient, _ = cokernel_module(Mv, f)
        x_modules[v], inclusions[v] = image, inc
        n_modules[v] = quotient
        if quotient.dim:
            summands.append((v, quotient))

    X = Representation(Lam, x_modules, {}, verify=False)
    for a in Q.arrows:
        target = Subspace(field, rep.modules[a.target].dim, inclusions[a.target].columns(), independent=True)
        X.maps[a.label] = target.coordinate_matrix(rep.maps[a.label])
    X.verify()
    N = Representation(Lam, n_modules, {}, verify=False)
    for a in Q.arrows:
        N.maps[a.label] = Matrix.zeros(field, n_modules[a.target].dim, N.tensor(a.label).dim)

    whole = rep_to_module(T, rep)
    parts = rep_to_module(T, X).direct_sum(rep_to_module(T, N))
    certificate = is_isomorphic(parts, whole)
    logger.info(f"✓ Split off {len(summands)} projective vertex summands ({certificate.verdict.value})")
    return EpiProjectiveSplit(X, N, summands, certificate)


# ==================== NON-SELFINJECTIVE COUNTEREXAMPLE ====================

def path_algebra_a2(field: FieldSpec) -> Algebra:
    """k(1 → 2) with idempotents labelled 1, 2"""
    Q = Quiver(vertices=("1", "2"), arrows=(Arrow(label="a", source="1", target="2"),))
    return bound_quiver_algebra(BoundQuiverPresentation(quiver=Q), field, name="kA2")


def non_selfinjective_counterexample(field: FieldSpec) -> Tuple[GradedAlgebra, Representation]:
    """Λ_1 = Λ_2 = kA₂, Λ_α regular; M_1 = P_2, M_2 = P_1, M_α the inclusion

    The representation is indecomposable, not in rep^epi and not a vertex projective.
    """
    A = path_algebra_a2(field)
    Q = Quiver(vertices=("1", "2"), arrows=(Arrow(label="alpha", source="1", target="2"),))
    Lam = build_prospecies(Q, {"1": A, "2": A}, {"alpha": Bimodule.regular(A)}, name="Λ_A2")
    P1, _ = indecomposable_projective(A, A.idempotent_index("1"))
    P2, _ = indecomposable_projective(A, A.idempotent_index("2"))
    rep = Representation(Lam, {"1": P2, "2": P1}, {}, verify=False)
    H = hom_space(P2, P1)
    if len(H) != 1:
        raise StructureError("Expected a one-dimensional Hom(P_2, P_1)")
    Ta = rep.tensor("alpha")
    cols = []
    for h, m in Ta.lift_indices():
        x = standard_vector(field, A.dim, h)
        cols.append(P1.act(x).apply(H[0].column(m)))
    rep.maps["alpha"] = Matrix.from_columns(field, cols, P1.dim)
    rep.verify()
    return tensor_algebra(Lam), rep
