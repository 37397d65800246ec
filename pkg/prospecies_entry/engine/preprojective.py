# ============================================================================
# FILE: prospecies_entry/engine/preprojective.py
# ============================================================================
"""Dualisability, the doubled pro-species, the Casimir relation and Π(Λ)"""

from typing import Dict, List, Optional, Sequence, Tuple
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.core.errors import DomainError, NotDualisable, NotFiniteDimensional, NotPiModule
from prospecies_entry.engine.algebra import Algebra, cartan_matrix, ground_algebra, quotient_algebra
from prospecies_entry.engine.exactla import (
    Matrix, QuotientSpace, Subspace, Vector, combine, image_basis, span_basis, standard_vector, zero_vector,
)
from prospecies_entry.engine.modules import (
    Bimodule, DualBimodule, IsoResult, Module, TensorSpace, dual_basis, is_isomorphic_bimodules, left_dual,
    right_dual,
)
from prospecies_entry.engine.prospecies import GradedAlgebra, ProSpecies, build_prospecies, tensor_algebra
from prospecies_entry.engine.quiver import double_quiver
from prospecies_entry.schemas.quiver import Arrow, Path, Quiver
from prospecies_entry.schemas.reports import AlgebraSummary, DualisableReport, IsoVerdict

logger = logging.getLogger(__name__)

STAR = "_star"
FLIP = "_op"

CASIMIR_CONVENTION = (
    "c_a from the right dual basis of the arrow bimodule; c_a* from its left dual basis "
    "carried to the right dual along the certified bimodule isomorphism"
)


# ==================== DUALISABILITY ====================

def dual_bimodule(Lam: ProSpecies, arrow: str) -> DualBimodule:
    """Hom over the source algebra on the right: a Λ_s–Λ_t bimodule"""
    return right_dual(Lam.bimodule(arrow))


class DualisableCertificate:
    """Per-arrow isomorphism verdicts between the right and left duals

    theta(arrow) maps right-dual coordinates to left-dual coordinates.
    """

    def __init__(self, results: Dict[str, IsoResult]):
        self.results = results

    @property
    def verdict(self) -> IsoVerdict:
        verdicts = [r.verdict for r in self.results.values()]
        if IsoVerdict.FALSE in verdicts:
            return IsoVerdict.FALSE
        if IsoVerdict.PROBABLY_NOT in verdicts:
            return IsoVerdict.PROBABLY_NOT
        return IsoVerdict.TRUE

    @property
    def dualisable(self) -> bool:
        return self.verdict == IsoVerdict.TRUE

    def theta(self, arrow: str) -> Matrix:
        return self.results[arrow].certificate

    def report(self) -> DualisableReport:
        return DualisableReport(
            dualisable=self.dualisable,
            arrows={a: r.verdict for a, r in self.results.items()},
            convention=CASIMIR_CONVENTION,
        )


def is_dualisable(Lam: ProSpecies) -> DualisableCertificate:
    results = {}
    for a in Lam.quiver.arrows:
        X = Lam.bimodule(a.label)
        results[a.label] = is_isomorphic_bimodules(right_dual(X), left_dual(X))
        logger.debug(f"Dualisability of {a.label}: {results[a.label].verdict.value} ({results[a.label].method})")
    certificate = DualisableCertificate(results)
    if certificate.verdict == IsoVerdict.PROBABLY_NOT:
        logger.warning(f"Dualisability of {Lam.name} is not certified either way")
    return certificate


class DoubledProSpecies(ProSpecies):
    """Λ̄ on the double quiver; the starred arrow carries the right dual"""

    def __init__(self, source: ProSpecies, certificate: DualisableCertificate):
        self.source = source
        self.certificate = certificate
        bimodules = dict(source.arrow_bimodules)
        for a in source.quiver.arrows:
            bimodules[a.label + STAR] = dual_bimodule(source, a.label)
        super().__init__(double_quiver(source.quiver), dict(source.vertex_algebras), bimodules,
                         source.presentations, name=f"{source.name}̄")

    def is_starred(self, arrow: str) -> bool:
        return arrow.endswith(STAR) and self.source.quiver.has_arrow(arrow[:-len(STAR)])

    def original(self, arrow: str) -> str:
        """The Q1 arrow underlying arrow or its star"""
        return arrow[:-len(STAR)] if self.is_starred(arrow) else arrow

    def theta(self, arrow: str) -> Matrix:
        return self.certificate.theta(self.original(arrow))


def double_prospecies(Lam: ProSpecies, certificate: Optional[DualisableCertificate] = None) -> DoubledProSpecies:
    certificate = certificate or is_dualisable(Lam)
    if not certificate.dualisable:
        logger.error(f"{Lam.name} is not dualisable ({certificate.verdict.value})")
        raise NotDualisable(f"{Lam.name} is not dualisable", verdict=certificate.verdict.value)
    Lbar = DoubledProSpecies(Lam, certificate)
    logger.info(f"✓ Doubled pro-species {Lbar.name} built ({len(Lbar.quiver.arrows)} arrows)")
    return Lbar


def flip_orientation(Lam: ProSpecies, arrow: str) -> ProSpecies:
    """Reverse one arrow, carrying the right dual of its bimodule"""
    a = Lam.quiver.arrow(arrow)
    flipped = a.label + FLIP
    arrows, bimodules = [], {}
    for b in Lam.quiver.arrows:
        if b.label == arrow:
            arrows.append(Arrow(label=flipped, source=b.target, target=b.source))
            bimodules[flipped] = dual_bimodule(Lam, arrow)
        else:
            arrows.append(b)
            bimodules[b.label] = Lam.bimodule(b.label)
    Q = Quiver(vertices=Lam.quiver.vertices, arrows=tuple(arrows))
    return build_prospecies(Q, dict(Lam.vertex_algebras), bimodules, Lam.presentations, name=f"{Lam.name}'")


# ==================== CASIMIR RELATION ====================

def _two_arrow_path(Lbar: DoubledProSpecies, first: str, second: str) -> Path:
    a = Lbar.quiver.arrow(first)
    return Path(source=a.source, target=Lbar.quiver.arrow(second).target, arrows=(first, second))


def casimir_element(T: GradedAlgebra, arrow: str, generators: Optional[Sequence[Sequence]] = None) -> Vector:
    """c_arrow inside T(Λ̄), in degree 2 at the target of arrow

    Q1 arrows use a right dual basis of Λ_α; starred arrows a left dual basis of
    Λ_α whose functionals are carried back along θ⁻¹.
    """
    Lbar: DoubledProSpecies = T.prospecies
    field = T.algebra.field
    alpha = Lbar.original(arrow)
    X = Lbar.bimodule(alpha)
    D = right_dual(X)
    if not Lbar.is_starred(arrow):
        path = _two_arrow_path(Lbar, alpha + STAR, alpha)
        tensor = T.block(path).tensor
        basis = dual_basis(X.right_module(), generators)
        terms = [tensor.pure(x, D.coords(f)) for x, f in zip(basis.elements, basis.functionals)]
    else:
        path = _two_arrow_path(Lbar, alpha, alpha + STAR)
        tensor = T.block(path).tensor
        theta_inv = Lbar.theta(alpha).inverse()
        Dstar = left_dual(X)
        basis = dual_basis(X.left_module(), generators)
        terms = [tensor.pure(theta_inv.apply(Dstar.coords(f)), x) for x, f in zip(basis.elements, basis.functionals)]
    local = combine(field, [field.one()] * len(terms), terms, tensor.dim) if terms else zero_vector(field, tensor.dim)
    return T.embed(path, local)


def preprojective_relation(T: GradedAlgebra) -> Tuple[Vector, Dict[str, Vector]]:
    """c = Σ c_α − Σ c_α*, with its vertex components ε_i c ε_i"""
    Lbar: DoubledProSpecies = T.prospecies
    field = T.algebra.field
    if T.max_degree is not None and T.max_degree < 2:
        raise DomainError("The Casimir relation lives in degree 2; truncate at 2 or above")
    c = zero_vector(field, T.dim)
    for a in Lbar.source.quiver.arrows:
        c = combine(field, [field.one(), field.one()], [c, casimir_element(T, a.label)], T.dim)
        c = combine(field, [field.one(), -field.one()], [c, casimir_element(T, a.label + STAR)], T.dim)
    components = {}
    for v in Lbar.quiver.vertices:
        e = T.vertex_units[v]
        components[v] = T.algebra.mul(T.algebra.mul(e, c), e)
    return c, components


def two_sided_ideal(A: Algebra, generators: Sequence[Sequence]) -> List[Vector]:
    """Basis of the ideal A·g·A"""
    left = []
    for g in generators:
        if any(g):
            left.extend(L.apply(g) for L in A.left_mats)
    left = span_basis(A.field, left, A.dim)
    vectors = []
    for x in left:
        vectors.extend(A.left_mult(x).columns())
    return span_basis(A.field, vectors, A.dim)


# ==================== PREPROJECTIVE ALGEBRA ====================

class TruncatedGradedAlgebra:
    """Π(Λ) truncated above degree N, as a quotient of T(Λ̄)_{≤N}

    finite_certified: some graded piece in degrees 1..N vanished, so every higher
    piece vanishes too and the truncation is Π(Λ) itself.
    """

    def __init__(self, doubled: DoubledProSpecies, tensor: GradedAlgebra, algebra: Algebra,
                 quotient: QuotientSpace, relation: Vector, components: Dict[str, Vector], truncation: int):
        self.doubled = doubled
        self.tensor = tensor
        self.algebra = algebra
        self.quotient = quotient
        self.relation = relation
        self.components = components
        self.truncation = truncation
        self.degrees = algebra.degrees
        self.projection = quotient.projection()
        self.vertex_units = {v: self.projection.apply(e) for v, e in tensor.vertex_units.items()}
        counts = [sum(1 for d in self.degrees if d == k) for k in range(truncation + 1)]
        zero = next((k for k in range(1, truncation + 1) if counts[k] == 0), None)
        self.finite_certified = zero is not None
        self._graded = counts[:zero + 1] if zero is not None else counts

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def graded_dimensions(self) -> List[int]:
        return list(self._graded)

    def project(self, x: Sequence) -> Vector:
        return self.projection.apply(x)

    def lift(self, y: Sequence) -> Vector:
        return self.quotient.lift(y)

    def pull_back(self, V: Module) -> Module:
        """A Π-module as a module over T(Λ̄)_{≤N}"""
        action = [V.act(self.projection.column(k)) for k in range(self.tensor.dim)]
        return Module(self.tensor.algebra, V.dim, action, name=V.name, verify=False)

    def push_forward(self, V: Module) -> Module:
        """A T(Λ̄)-module killed by c as a Π-module; NotPiModule otherwise"""
        if not annihilated_by_relation(self, V):
            raise NotPiModule(f"{V.name} is not annihilated by the Casimir relation")
        action = [V.action[f] for f in self.quotient.free]
        return Module(self.algebra, V.dim, action, name=V.name)

    def require_finite(self) -> None:
        if not self.finite_certified:
            raise NotFiniteDimensional(f"{self.algebra.name} is not certified finite-dimensional up to degree {self.truncation}")

    def summary(self) -> AlgebraSummary:
        return AlgebraSummary(
            name=self.algebra.name,
            dimension=self.dim,
            graded_dimensions=self.graded_dimensions(),
            finite_certified=self.finite_certified,
            truncation=self.truncation,
            cartan_matrix=cartan_matrix(self.algebra) if self.finite_certified else None,
        )


def preprojective_algebra(Lam: ProSpecies, truncation: Optional[int] = None,
                          certificate: Optional[DualisableCertificate] = None) -> TruncatedGradedAlgebra:
    """T(Λ̄)_{≤N} modulo the degreewise ideal generated by the Casimir relation"""
    N = settings.TRUNCATION_DEGREE if truncation is None else truncation
    if N < 2:
        raise DomainError(f"Truncation degree must be at least 2, got {N}")
    Lbar = double_prospecies(Lam, certificate)
    T = tensor_algebra(Lbar, max_degree=N)
    c, components = preprojective_relation(T)
    ideal = two_sided_ideal(T.algebra, [x for x in components.values() if any(x)])
    algebra, quotient = quotient_algebra(T.algebra, ideal, name=f"Π({Lam.name})")
    Pi = TruncatedGradedAlgebra(Lbar, T, algebra, quotient, c, components, N)
    if Pi.finite_certified:
        logger.info(f"✓ Preprojective algebra {algebra.name}: dim {Pi.dim}, graded {Pi.graded_dimensions()}")
    else:
        logger.warning(f"{algebra.name} not certified finite up to degree {N}; graded {Pi.graded_dimensions()}")
    return Pi


# ==================== Π-MODULES ====================

def annihilated_by_relation(Pi: TruncatedGradedAlgebra, V: Module) -> bool:
    """c acts as zero on a T(Λ̄)-module, so the whole ideal does"""
    return V.act(Pi.relation).is_zero()


def is_pi_module(T: GradedAlgebra, V: Module) -> bool:
    """in∘out = 0 at every vertex of the representation underlying V"""
    from prospecies_entry.engine.prospecies import module_to_rep
    from prospecies_entry.engine.reflection import is_pi_representation

    return is_pi_representation(module_to_rep(T, V))


# ==================== VERTEX IDEALS ====================

class VertexIdeal:
    """I_i = Π(1 − ε_i)Π as a Π–Π bimodule inside Π"""

    def __init__(self, Pi: TruncatedGradedAlgebra, vertex: str, subspace: Subspace, bimodule: Bimodule):
        self.pi = Pi
        self.vertex = vertex
        self.subspace = subspace
        self.bimodule = bimodule

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def left_module(self) -> Module:
        return self.bimodule.left_module()


def vertex_ideal(Pi: TruncatedGradedAlgebra, vertex: str) -> VertexIdeal:
    Pi.require_finite()
    A = Pi.algebra
    field = A.field
    g = combine(field, [field.one(), -field.one()], [A.unit, Pi.vertex_units[vertex]], A.dim)
    S = Subspace(field, A.dim, two_sided_ideal(A, [g]), independent=True)
    if S.dim:
        left = [S.coordinate_matrix(L @ S.matrix) for L in A.left_mats]
        right = [S.coordinate_matrix(R @ S.matrix) for R in A.right_mats()]
    else:
        left = right = [Matrix.zeros(field, 0, 0) for _ in range(A.dim)]
    I = Bimodule(A, A, S.dim, left, right, name=f"I[{vertex}]", verify=False)
    logger.debug(f"Vertex ideal I[{vertex}] of {A.name}: dim {S.dim}")
    return VertexIdeal(Pi, vertex, S, I)


# ==================== BIMODULE COMPLEX ====================

class BimoduleComplexCheck:
    """d¹(1⊗1) in ⊕ Πε_t ⊗ Λ_α ⊗ ε_sΠ and its image under d⁰ in ⊕ Πε_i ⊗ ε_iΠ, per vertex"""

    def __init__(self, d1: Dict[str, Vector], composite: Dict[str, Vector]):
        self.d1 = d1
        self.composite = composite

    @property
    def is_complex(self) -> bool:
        return all(not any(v) for v in self.composite.values())


def _corner_bimodules(Pi: TruncatedGradedAlgebra, vertex: str, k: Algebra) -> Tuple[Subspace, Bimodule, Subspace, Bimodule]:
    """Πε_i as a k–Λ_i bimodule and ε_iΠ as a Λ_i–k bimodule"""
    A = Pi.algebra
    field = A.field
    T = Pi.tensor
    L = T.prospecies.algebra(vertex)
    e = Pi.vertex_units[vertex]
    units = [Pi.project(T.embed(Path(source=vertex, target=vertex), L.basis_element(b))) for b in range(L.dim)]
    left = Subspace(field, A.dim, image_basis(A.right_mult(e)), independent=True)
    right = Subspace(field, A.dim, image_basis(A.left_mult(e)), independent=True)
    PiE = Bimodule(k, L, left.dim, [Matrix.identity(field, left.dim)],
                   [left.coordinate_matrix(A.right_mult(u) @ left.matrix) for u in units],
                   name=f"Πe[{vertex}]", verify=False)
    EPi = Bimodule(L, k, right.dim, [right.coordinate_matrix(A.left_mult(u) @ right.matrix) for u in units],
                   [Matrix.identity(field, right.dim)], name=f"eΠ[{vertex}]", verify=False)
    return left, PiE, right, EPi


def bimodule_complex(Pi: TruncatedGradedAlgebra, relation: Optional[Vector] = None) -> BimoduleComplexCheck:
    """Evaluate d⁰∘d¹ on the generators 1⊗1 of ⊕ Πε_i ⊗_{Λ_i} ε_iΠ

    d⁰(a⊗x⊗b) = ax⊗b − a⊗xb and d¹(1⊗1) = Σ (c'⊗1 + 1⊗c') over the two-arrow
    terms c' of ε_i c ε_i, signs included in c. Both are bimodule maps, so the
    outer Π actions are left out of the tensor spaces.
    """
    Pi.require_finite()
    T = Pi.tensor
    Lbar: DoubledProSpecies = T.prospecies
    A = Pi.algebra
    field = A.field
    c = Pi.relation if relation is None else relation
    k = ground_algebra(field)
    corners = {v: _corner_bimodules(Pi, v, k) for v in Lbar.quiver.vertices}

    V, v_offsets, off = {}, {}, 0
    for v in Lbar.quiver.vertices:
        _, PiE, _, EPi = corners[v]
        V[v] = TensorSpace(PiE, EPi)
        v_offsets[v] = off
        off += V[v].dim
    v_total = off

    inner, W, w_offsets, off = {}, {}, {}, 0
    for a in Lbar.quiver.arrows:
        inner[a.label] = TensorSpace(Lbar.bimodule(a.label), corners[a.source][3])
        W[a.label] = TensorSpace(corners[a.target][1], inner[a.label].bimodule())
        w_offsets[a.label] = off
        off += W[a.label].dim
    w_total = off

    def arrow_element(label: str, vector: Sequence) -> Vector:
        a = Lbar.quiver.arrow(label)
        return Pi.project(T.embed(Path(source=a.source, target=a.target, arrows=(label,)), vector))

    def basis(X: Bimodule, i: int) -> Vector:
        return standard_vector(field, X.dim, i)

    columns = []
    for a in Lbar.quiver.arrows:
        s, t = a.source, a.target
        left_t, PiE_t, right_t, _ = corners[t]
        left_s, _, right_s, EPi_s = corners[s]
        X = Lbar.bimodule(a.label)
        for ia, j in W[a.label].lift_indices():
            ix, ib = inner[a.label].lift_indices()[j]
            p = left_t.basis[ia]
            x = arrow_element(a.label, basis(X, ix))
            q = right_s.basis[ib]
            column = zero_vector(field, v_total)
            ax = V[s].pure(left_s.coords(A.mul(p, x)), basis(EPi_s, ib))
            xb = V[t].pure(basis(PiE_t, ia), right_t.coords(A.mul(x, q)))
            for i, value in enumerate(ax):
                column[v_offsets[s] + i] += value
            for i, value in enumerate(xb):
                column[v_offsets[t] + i] -= value
            columns.append([field.coerce(value) for value in column])
    d0 = Matrix.from_columns(field, columns, v_total)

    d1, composite = {}, {}
    for v in Lbar.quiver.vertices:
        e = T.vertex_units[v]
        component = T.algebra.mul(T.algebra.mul(e, c), e)
        image = zero_vector(field, w_total)
        for block in T.blocks:
            if block.path.length != 2 or block.path.source != v or block.path.target != v:
                continue
            first, second = block.path.arrows
            local = T.restrict(block.path, component)
            for j, (iy, ix) in enumerate(block.tensor.lift_indices()):
                coeff = local[j]
                if not coeff:
                    continue
                y = arrow_element(second, basis(Lbar.bimodule(second), iy))
                x = arrow_element(first, basis(Lbar.bimodule(first), ix))
                # y⊗x⊗1 in the summand of the first arrow, 1⊗y⊗x̂ in that of the second
                mid = Lbar.quiver.arrow(first).target
                head = inner[first].pure(basis(Lbar.bimodule(first), ix), corners[v][2].coords(Pi.vertex_units[v]))
                tail = inner[second].pure(basis(Lbar.bimodule(second), iy), corners[mid][2].coords(x))
                terms = [
                    (first, W[first].pure(corners[mid][0].coords(y), head)),
                    (second, W[second].pure(corners[v][0].coords(Pi.vertex_units[v]), tail)),
                ]
                for label, vector in terms:
                    for i, value in enumerate(vector):
                        image[w_offsets[label] + i] += coeff * value
        image = [field.coerce(value) for value in image]
        d1[v] = image
        composite[v] = d0.apply(image) if w_total else zero_vector(field, v_total)
    check = BimoduleComplexCheck(d1, composite)
    if check.is_complex:
        logger.info(f"✓ d⁰∘d¹ vanishes on the bimodule complex of {A.name}")
    else:
        logger.warning(f"d⁰∘d¹ does not vanish on the bimodule complex of {A.name}")
    return check
