# ============================================================================
# FILE: prospecies_entry/engine/reflection.py
# ============================================================================
"""In/out maps, the ∨/∧ adjunction, reflection functors Σ± and BGP functors F±

Signs sit on in-maps only: +1 on arrows of Q, -1 on starred arrows.
"""

from typing import Dict, List, Optional, Tuple
import logging

from prospecies_entry.core.errors import NotDualisable, NotPiModule, NotSinkOrSource, ShapeMismatch, StructureError
from prospecies_entry.engine.exactla import (
    Matrix, Subspace, block_diagonal, combine, solve_right, standard_vector, zero_vector,
)
from prospecies_entry.engine.modules import (
    Bimodule, Module, TensorSpace, cokernel_module, dual_basis, hom_space, is_isomorphic_bimodules,
    kernel_module, left_dual, right_dual, tensor_over,
)
from prospecies_entry.engine.preprojective import DoubledProSpecies, TruncatedGradedAlgebra, vertex_ideal
from prospecies_entry.engine.prospecies import (
    ProSpecies, Representation, arrow_sign, build_prospecies, in_domain_module, in_map, is_rep_hom,
    module_to_rep, rep_to_module,
)
from prospecies_entry.engine.quiver import is_sink, is_source, reflected_quiver, star_label
from prospecies_entry.schemas.reports import IsoVerdict, SequenceReport

logger = logging.getLogger(__name__)


# ==================== ADJUNCTION ====================

def _vee_left(X: Bimodule, theta_inv: Matrix, f: Matrix, M: Module, N: Module) -> Matrix:
    """f: X⊗M → N to M → D⊗N, m ↦ Σ θ⁻¹(φ_k) ⊗ f(x_k⊗m), (x_k, φ_k) a left dual basis"""
    field = X.field
    D, Dstar = right_dual(X), left_dual(X)
    source, target = tensor_over(X, M), tensor_over(D, N)
    basis = dual_basis(X.left_module())
    duals = [theta_inv.apply(Dstar.coords(phi)) for phi in basis.functionals]
    cols = []
    for m in range(M.dim):
        e_m = standard_vector(field, M.dim, m)
        terms = [target.pure(d, f.apply(source.pure(x, e_m))) for x, d in zip(basis.elements, duals)]
        cols.append(combine(field, [field.one()] * len(terms), terms, target.dim))
    return Matrix.from_columns(field, cols, target.dim)


def _wedge_left(X: Bimodule, theta: Matrix, g: Matrix, M: Module, N: Module) -> Matrix:
    """g: M → D⊗N to X⊗M → N, y⊗m ↦ Σ θ(d)(y)·n"""
    field = X.field
    D, Dstar = right_dual(X), left_dual(X)
    source, target = tensor_over(X, M), tensor_over(D, N)
    functionals = [Dstar.functional(theta.column(d)) for d in range(D.dim)]
    lifted = target.lift_indices()
    cols = []
    for y, m in source.lift_indices():
        t = g.column(m)
        out = zero_vector(field, N.dim)
        for coeff, (d, n) in zip(t, lifted):
            if coeff:
                value = N.act(functionals[d].column(y)).column(n)
                out = combine(field, [field.one(), coeff], [out, value], N.dim)
        cols.append(out)
    return Matrix.from_columns(field, cols, N.dim)


def _vee_right(X: Bimodule, f: Matrix, M: Module, N: Module) -> Matrix:
    """f: D⊗M → N to M → X⊗N, m ↦ Σ x_j ⊗ f(f_j⊗m), (x_j, f_j) a right dual basis"""
    field = X.field
    D = right_dual(X)
    source, target = tensor_over(D, M), tensor_over(X, N)
    basis = dual_basis(X.right_module())
    duals = [D.coords(fj) for fj in basis.functionals]
    cols = []
    for m in range(M.dim):
        e_m = standard_vector(field, M.dim, m)
        terms = [target.pure(x, f.apply(source.pure(d, e_m))) for x, d in zip(basis.elements, duals)]
        cols.append(combine(field, [field.one()] * len(terms), terms, target.dim))
    return Matrix.from_columns(field, cols, target.dim)


def _wedge_right(X: Bimodule, g: Matrix, M: Module, N: Module) -> Matrix:
    """g: M → X⊗N to D⊗M → N, d⊗m ↦ Σ d(x)·n"""
    field = X.field
    D = right_dual(X)
    source, target = tensor_over(D, M), tensor_over(X, N)
    lifted = target.lift_indices()
    cols = []
    for d, m in source.lift_indices():
        t = g.column(m)
        out = zero_vector(field, N.dim)
        for coeff, (x, n) in zip(t, lifted):
            if coeff:
                value = N.act(D.functionals[d].column(x)).column(n)
                out = combine(field, [field.one(), coeff], [out, value], N.dim)
        cols.append(out)
    return Matrix.from_columns(field, cols, N.dim)


def vee(Lbar: DoubledProSpecies, arrow: str, f: Matrix, M: Module, N: Module) -> Matrix:
    """f: Λ_β⊗M → N to f^∨: M → Λ_β*⊗N"""
    alpha = Lbar.original(arrow)
    X = Lbar.bimodule(alpha)
    if Lbar.is_starred(arrow):
        return _vee_right(X, f, M, N)
    return _vee_left(X, Lbar.theta(alpha).inverse(), f, M, N)


def wedge(Lbar: DoubledProSpecies, arrow: str, g: Matrix, M: Module, N: Module) -> Matrix:
    """g: M → Λ_β*⊗N to g^∧: Λ_β⊗M → N"""
    alpha = Lbar.original(arrow)
    X = Lbar.bimodule(alpha)
    if Lbar.is_starred(arrow):
        return _wedge_right(X, g, M, N)
    return _wedge_left(X, Lbar.theta(alpha), g, M, N)


# ==================== IN/OUT MAPS ====================

class InOutMaps:
    """Signed in-map W → M_i and out-map M_i → W, W = ⊕_{t(γ)=i} Λ_γ⊗M_{s(γ)}"""

    def __init__(self, vertex: str, in_map: Matrix, out_map: Matrix, parts: List[Tuple[str, TensorSpace]],
                 domain: Module):
        self.vertex = vertex
        self.in_map = in_map
        self.out_map = out_map
        self.parts = parts
        self.domain = domain

    def blocks(self) -> List[Tuple[str, TensorSpace, List[int]]]:
        """(arrow, tensor space, coordinates inside W) per summand"""
        out, offset = [], 0
        for label, T in self.parts:
            out.append((label, T, list(range(offset, offset + T.dim))))
            offset += T.dim
        return out

    def composite(self) -> Matrix:
        return self.in_map @ self.out_map


def _require_doubled(rep: Representation) -> DoubledProSpecies:
    if not isinstance(rep.prospecies, DoubledProSpecies):
        raise ShapeMismatch("In/out maps need a representation of a doubled pro-species")
    return rep.prospecies


def in_out(rep: Representation, vertex: str) -> InOutMaps:
    Lbar = _require_doubled(rep)
    field = Lbar.field
    f_in, parts = in_map(rep, vertex, signed=True)
    M = rep.modules[vertex]
    blocks = []
    for gamma, T in parts:
        beta = star_label(gamma)
        source = Lbar.quiver.arrow(gamma).source
        blocks.append(vee(Lbar, beta, rep.maps[beta], M, rep.modules[source]))
    if blocks:
        f_out = blocks[0].vstack(*blocks[1:])
    else:
        f_out = Matrix.zeros(field, 0, M.dim)
    return InOutMaps(vertex, f_in, f_out, parts, in_domain_module(parts, Lbar.algebra(vertex)))


def is_pi_representation(rep: Representation) -> bool:
    """in∘out = 0 at every vertex"""
    for v in rep.prospecies.quiver.vertices:
        io = in_out(rep, v)
        if io.in_map.rows and io.out_map.cols and not io.composite().is_zero():
            return False
    return True


# ==================== Σ± ====================

def _require_pi(rep: Representation, vertex: str) -> None:
    Lbar = _require_doubled(rep)
    if any(a.is_loop for a in Lbar.quiver.arrows_into(vertex)):
        raise StructureError(f"Reflection at {vertex} is undefined: the vertex carries a loop", vertex=vertex)
    if not is_pi_representation(rep):
        raise NotPiModule("Representation does not satisfy in∘out = 0")


def _corestrict(inclusion: Matrix, f: Matrix) -> Matrix:
    """X with inclusion·X = f"""
    if inclusion.cols == 0:
        return Matrix.zeros(f.field, 0, f.cols)
    return solve_right(inclusion, f)


def _section(projection: Matrix) -> Matrix:
    if projection.rows == 0:
        return Matrix.zeros(projection.field, projection.cols, 0)
    return solve_right(projection, Matrix.identity(projection.field, projection.rows))


def _replace_vertex(rep: Representation, vertex: str, module: Module, io: InOutMaps,
                    into: Matrix, out_of: Matrix) -> Representation:
    """New M_i with the in-map `into` (W → M_i) and out-map `out_of` (M_i → W)"""
    Lbar = rep.prospecies
    modules = dict(rep.modules)
    modules[vertex] = module
    maps = dict(rep.maps)
    rows = list(range(module.dim))
    for gamma, _, coords in io.blocks():
        block = into.submatrix(rows, coords)
        maps[gamma] = block if arrow_sign(gamma) > 0 else -block
        beta = star_label(gamma)
        g = out_of.submatrix(coords, rows)
        maps[beta] = wedge(Lbar, beta, g, module, rep.modules[Lbar.quiver.arrow(gamma).source])
    return Representation(Lbar, modules, maps)


def _sigma_plus(rep: Representation, vertex: str) -> Tuple[Representation, InOutMaps, Matrix]:
    _require_pi(rep, vertex)
    io = in_out(rep, vertex)
    N, iota = kernel_module(io.domain, io.in_map)
    N.name = f"ker[{vertex}]"
    psi = _corestrict(iota, io.out_map @ io.in_map)
    out = _replace_vertex(rep, vertex, N, io, psi, iota)
    logger.debug(f"Σ⁺ at {vertex}: {rep.modules[vertex].dim} -> {N.dim}")
    return out, io, iota


def _sigma_minus(rep: Representation, vertex: str) -> Tuple[Representation, InOutMaps, Matrix]:
    _require_pi(rep, vertex)
    io = in_out(rep, vertex)
    N, p = cokernel_module(io.domain, io.out_map)
    N.name = f"coker[{vertex}]"
    psi = io.out_map @ io.in_map
    induced = psi @ _section(p)
    if N.dim and induced @ p != psi:
        raise StructureError(f"Out∘in does not factor through the cokernel at {vertex}")
    out = _replace_vertex(rep, vertex, N, io, p, induced)
    logger.debug(f"Σ⁻ at {vertex}: {rep.modules[vertex].dim} -> {N.dim}")
    return out, io, p


def sigma_plus(rep: Representation, vertex: str) -> Representation:
    """M_i replaced by the kernel of the signed in-map"""
    return _sigma_plus(rep, vertex)[0]


def sigma_minus(rep: Representation, vertex: str) -> Representation:
    """M_i replaced by the cokernel of the out-map"""
    return _sigma_minus(rep, vertex)[0]


def sigma_plus_on_hom(M: Representation, N: Representation, fs: Dict[str, Matrix], vertex: str) -> Dict[str, Matrix]:
    """Σ⁺(f): the restriction of ⊕ id⊗f to the kernels at the vertex"""
    _, io_m, iota_m = _sigma_plus(M, vertex)
    _, io_n, iota_n = _sigma_plus(N, vertex)
    blocks = []
    for (gamma, T_m, _), (_, T_n, _) in zip(io_m.blocks(), io_n.blocks()):
        source = M.prospecies.quiver.arrow(gamma).source
        blocks.append(T_m.map_right(fs[source], T_n))
    F = block_diagonal(M.prospecies.field, blocks)
    out = dict(fs)
    out[vertex] = _corestrict(iota_n, F @ iota_m)
    return out


def sigma_plus_on_hom_check(M: Representation, N: Representation, fs: Dict[str, Matrix], vertex: str) -> bool:
    """Σ⁺(f) is a homomorphism Σ⁺M → Σ⁺N"""
    return is_rep_hom(sigma_plus(M, vertex), sigma_plus(N, vertex), sigma_plus_on_hom(M, N, fs, vertex))


# ==================== Π-MODULE FORMS ====================

def pi_module_to_rep(Pi: TruncatedGradedAlgebra, V: Module) -> Representation:
    return module_to_rep(Pi.tensor, Pi.pull_back(V))


def rep_to_pi_module(Pi: TruncatedGradedAlgebra, rep: Representation) -> Module:
    return Pi.push_forward(rep_to_module(Pi.tensor, rep))


def sigma_module(Pi: TruncatedGradedAlgebra, V: Module, vertex: str, direction: str) -> Module:
    """Σ± of a Π-module through its representation"""
    rep = pi_module_to_rep(Pi, V)
    out = sigma_plus(rep, vertex) if direction == "+" else sigma_minus(rep, vertex)
    M = rep_to_pi_module(Pi, out)
    M.name = f"Σ{direction}[{vertex}]({V.name})"
    return M


def sigma_via_ideal(Pi: TruncatedGradedAlgebra, V: Module, vertex: str, direction: str) -> Module:
    """Hom_Π(I_i, V) for '+', I_i ⊗_Π V for '-'"""
    Pi.require_finite()
    I = vertex_ideal(Pi, vertex)
    A = Pi.algebra
    field = A.field
    if direction == "-":
        M = tensor_over(I.bimodule, V).module()
        M.name = f"I[{vertex}]⊗{V.name}"
        return M
    H = hom_space(I.left_module(), V)
    if not H:
        return Module.zero(A)
    span = Subspace(field, V.dim * I.dim, [h.flatten() for h in H], independent=True)
    action = [Matrix.from_columns(field, [span.coords((h @ rho).flatten()) for h in H], len(H))
              for rho in I.bimodule.right_action]
    return Module(A, len(H), action, name=f"Hom(I[{vertex}],{V.name})")


# ==================== SUB / FAC ====================

class SubFac:
    """sub_i(M) and fac_i(M), both concentrated at the vertex"""

    def __init__(self, vertex: str, sub: Representation, inclusion: Matrix, fac: Representation, projection: Matrix):
        self.vertex = vertex
        self.sub = sub
        self.inclusion = inclusion
        self.fac = fac
        self.projection = projection


def _concentrated(rep: Representation, vertex: str, module: Module) -> Representation:
    Lam = rep.prospecies
    modules = {v: (module if v == vertex else Module.zero(Lam.algebra(v))) for v in Lam.quiver.vertices}
    out = Representation(Lam, modules, {}, verify=False)
    out.maps = {a.label: Matrix.zeros(Lam.field, modules[a.target].dim, out.tensor(a.label).dim)
                for a in Lam.quiver.arrows}
    return out


def sub_fac(rep: Representation, vertex: str) -> SubFac:
    """sub = ker of the out-map, fac = coker of the in-map"""
    io = in_out(rep, vertex)
    M = rep.modules[vertex]
    S, inclusion = kernel_module(M, io.out_map) if io.out_map.rows else (M, Matrix.identity(M.field, M.dim))
    F, projection = cokernel_module(M, io.in_map) if io.in_map.cols else (M, Matrix.identity(M.field, M.dim))
    return SubFac(vertex, _concentrated(rep, vertex, S), inclusion, _concentrated(rep, vertex, F), projection)


def sub_dimension_by_kernels(rep: Representation, vertex: str) -> int:
    """dim of the m with M_β(y⊗m) = 0 for every arrow β out of the vertex and every y"""
    Lam = rep.prospecies
    M = rep.modules[vertex]
    field = Lam.field
    rows = []
    for beta in Lam.quiver.arrows_from(vertex):
        T = rep.tensor(beta.label)
        X = Lam.bimodule(beta.label)
        for y in range(X.dim):
            e_y = standard_vector(field, X.dim, y)
            cols = [rep.maps[beta.label].apply(T.pure(e_y, standard_vector(field, M.dim, m))) for m in range(M.dim)]
            rows.extend(Matrix.from_columns(field, cols, rep.modules[beta.target].dim).data)
    if not rows:
        return M.dim
    return M.dim - Matrix(field, len(rows), M.dim, rows).rank()


def _identity_off(rep: Representation, vertex: str, at_vertex: Matrix) -> Dict[str, Matrix]:
    fs = {v: Matrix.identity(rep.prospecies.field, m.dim) for v, m in rep.modules.items()}
    fs[vertex] = at_vertex
    return fs


def verify_reflection_sequences(rep: Representation, vertex: str) -> SequenceReport:
    """Exactness of the two canonical sequences, by ranks and homomorphism checks"""
    _require_pi(rep, vertex)
    M = rep.modules[vertex]
    parts = sub_fac(rep, vertex)
    sub_dim = parts.sub.modules[vertex].dim
    fac_dim = parts.fac.modules[vertex].dim
    io = in_out(rep, vertex)

    # M → Σ⁺Σ⁻M, induced by the out-map
    SM = sigma_minus(rep, vertex)
    SPM, _, iota = _sigma_plus(SM, vertex)
    unit = _corestrict(iota, io.out_map)
    unit_rank = unit.rank() if unit.rows and unit.cols else 0
    first = (unit_rank == SPM.modules[vertex].dim and M.dim - unit_rank == sub_dim
             and is_rep_hom(rep, SPM, _identity_off(rep, vertex, unit)))

    # Σ⁻Σ⁺M → M, induced by the in-map
    SP = sigma_plus(rep, vertex)
    SMP, _, p = _sigma_minus(SP, vertex)
    counit = io.in_map @ _section(p)
    counit_rank = counit.rank() if counit.rows and counit.cols else 0
    factors = not SMP.modules[vertex].dim or counit @ p == io.in_map
    second = (factors and counit_rank == SMP.modules[vertex].dim and M.dim - counit_rank == fac_dim
              and is_rep_hom(SMP, rep, _identity_off(rep, vertex, counit)))

    report = SequenceReport(
        vertex=vertex, sub_dimension=sub_dim, fac_dimension=fac_dim, first_exact=first, second_exact=second,
        unit_iso=unit_rank == M.dim == SPM.modules[vertex].dim,
        counit_iso=counit_rank == M.dim == SMP.modules[vertex].dim,
    )
    if not (first and second):
        logger.warning(f"Reflection sequences at {vertex} failed: {report.model_dump()}")
    return report


# ==================== BGP FUNCTORS ====================

def _incident_theta(Lam: ProSpecies, arrow: str) -> Matrix:
    X = Lam.bimodule(arrow)
    result = is_isomorphic_bimodules(right_dual(X), left_dual(X))
    if result.verdict != IsoVerdict.TRUE:
        raise NotDualisable(f"{arrow} is not dualisable", arrow=arrow, verdict=result.verdict.value)
    return result.certificate


def reflect_prospecies(Lam: ProSpecies, vertex: str, direction: str) -> ProSpecies:
    """s_i(Λ): arrows at a sink (source) reversed, carrying Hom over Λ_i into Λ_i"""
    Q = reflected_quiver(Lam.quiver, vertex, direction)
    bimodules = {}
    for a in Lam.quiver.arrows:
        if vertex in (a.source, a.target):
            X = Lam.bimodule(a.label)
            bimodules[star_label(a.label)] = left_dual(X) if direction == "sink" else right_dual(X)
        else:
            bimodules[a.label] = Lam.bimodule(a.label)
    return build_prospecies(Q, dict(Lam.vertex_algebras), bimodules, Lam.presentations,
                            name=f"s[{vertex}]({Lam.name})")


def bgp_plus(Lam: ProSpecies, rep: Representation, vertex: str,
             reflected: Optional[ProSpecies] = None) -> Representation:
    """F⁺ at a sink: kernel of the in-map, reversed arrows from the adjunction"""
    if not is_sink(Lam.quiver, vertex):
        raise NotSinkOrSource(f"Vertex {vertex} is not a sink", vertex=vertex)
    target = reflected or reflect_prospecies(Lam, vertex, "sink")
    f_in, parts = in_map(rep, vertex)
    W = in_domain_module(parts, Lam.algebra(vertex))
    N, iota = kernel_module(W, f_in)
    N.name = f"F+[{vertex}]"
    modules = dict(rep.modules)
    modules[vertex] = N
    maps = {k: v for k, v in rep.maps.items()
            if vertex not in (Lam.quiver.arrow(k).source, Lam.quiver.arrow(k).target)}
    out = Representation(target, modules, {}, verify=False)
    offset = 0
    for beta, T in parts:
        coords = list(range(offset, offset + T.dim))
        offset += T.dim
        source = Lam.quiver.arrow(beta).source
        X = Lam.bimodule(beta)
        g = iota.submatrix(coords, list(range(N.dim)))
        on_right_dual = _wedge_right(X, g, N, rep.modules[source])
        theta_inv = _incident_theta(Lam, beta).inverse()
        new_label = star_label(beta)
        lifted = out.tensor(new_label).map_left(theta_inv, tensor_over(right_dual(X), N))
        maps[new_label] = on_right_dual @ lifted
    out.maps = maps
    out.verify()
    logger.debug(f"F⁺ at {vertex}: {rep.dimension_vector()} -> {out.dimension_vector()}")
    return out


def bgp_minus(Lam: ProSpecies, rep: Representation, vertex: str,
              reflected: Optional[ProSpecies] = None) -> Representation:
    """F⁻ at a source: cokernel of the out-map, reversed arrows by projection"""
    if not is_source(Lam.quiver, vertex):
        raise NotSinkOrSource(f"Vertex {vertex} is not a source", vertex=vertex)
    target = reflected or reflect_prospecies(Lam, vertex, "source")
    field = Lam.field
    M = rep.modules[vertex]
    blocks, parts = [], []
    for beta in Lam.quiver.arrows_from(vertex):
        X = Lam.bimodule(beta.label)
        theta_inv = _incident_theta(Lam, beta.label).inverse()
        blocks.append(_vee_left(X, theta_inv, rep.maps[beta.label], M, rep.modules[beta.target]))
        parts.append((beta.label, tensor_over(right_dual(X), rep.modules[beta.target])))
    f_out = blocks[0].vstack(*blocks[1:]) if blocks else Matrix.zeros(field, 0, M.dim)
    W = in_domain_module(parts, Lam.algebra(vertex))
    N, p = cokernel_module(W, f_out)
    N.name = f"F-[{vertex}]"
    modules = dict(rep.modules)
    modules[vertex] = N
    maps = {k: v for k, v in rep.maps.items()
            if vertex not in (Lam.quiver.arrow(k).source, Lam.quiver.arrow(k).target)}
    offset = 0
    for beta, T in parts:
        maps[star_label(beta)] = p.submatrix(list(range(N.dim)), list(range(offset, offset + T.dim)))
        offset += T.dim
    out = Representation(target, modules, maps)
    logger.debug(f"F⁻ at {vertex}: {rep.dimension_vector()} -> {out.dimension_vector()}")
    return out
