# ============================================================================
# FILE: prospecies_entry/engine/presentation.py
# ============================================================================
"""Quivers with relations for T(Λ) and Π(Λ) from bimodule projective covers"""

from typing import Dict, List, Optional, Sequence, Tuple
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.core.errors import DomainError, NoSolution, PresentationMismatch, StructureError
from prospecies_entry.engine.algebra import Algebra, bound_quiver_algebra, cartan_matrix, jacobson_radical
from prospecies_entry.engine.exactla import (
    Matrix, QuotientSpace, Vector, extend_basis, image_basis, kernel_basis, solve_vector, span_basis, zero_vector,
)
from prospecies_entry.engine.modules import Bimodule
from prospecies_entry.engine.preprojective import (
    DualisableCertificate, double_prospecies, preprojective_algebra, preprojective_relation,
)
from prospecies_entry.engine.prospecies import GradedAlgebra, ProSpecies, outer_vertex_label, tensor_algebra
from prospecies_entry.engine.quiver import is_acyclic
from prospecies_entry.schemas.presentation import (
    ArrowOrigin, ArrowTag, Presentation, RelationOrigin, RelationTag,
)
from prospecies_entry.schemas.quiver import Arrow, Path, Quiver, Relation, Term

logger = logging.getLogger(__name__)


def inner_arrow_label(arrow: str, vertex: str) -> str:
    return f"{arrow}_{vertex}"


def cover_arrow_label(arrow: str, k: int) -> str:
    return f"{arrow}#{k}"


def _path_basis(A: Algebra) -> List[Path]:
    if A.paths is None:
        raise DomainError(f"{A.name} carries no path basis; give it as a bound quiver algebra")
    return A.paths


def _rename(path: Path, vertex: str, A: Algebra) -> Path:
    """A path of the vertex quiver at `vertex` as a path of Q̃"""
    return Path(
        source=outer_vertex_label(vertex, A, path.source),
        target=outer_vertex_label(vertex, A, path.target),
        arrows=tuple(inner_arrow_label(x, vertex) for x in path.arrows),
    )


# ==================== FREE AND PRESENTED BIMODULES ====================

class FreeBimodule:
    """⊕_k L·e_b ⊗ e_a·R on basis triples (k, u, w) of basis paths"""

    def __init__(self, left: Algebra, right: Algebra, summands: List[Tuple[int, int]], name: str = "F"):
        Lp, Rp = _path_basis(left), _path_basis(right)
        self.left = left
        self.right = right
        self.summands = summands
        self.basis: List[Tuple[int, int, int]] = []
        for k, (b, a) in enumerate(summands):
            vb, va = left.idempotent_labels[b], right.idempotent_labels[a]
            for u, pu in enumerate(Lp):
                if pu.source != vb:
                    continue
                for w, pw in enumerate(Rp):
                    if pw.target == va:
                        self.basis.append((k, u, w))
        self.index = {key: n for n, key in enumerate(self.basis)}
        self.dim = len(self.basis)
        left_action = [self._act(y, True) for y in range(left.dim)]
        right_action = [self._act(z, False) for z in range(right.dim)]
        self.bimodule = Bimodule(left, right, self.dim, left_action, right_action, name=name, verify=False)

    def _act(self, y: int, on_left: bool) -> Matrix:
        M = Matrix.zeros(self.left.field, self.dim, self.dim)
        for col, (k, u, w) in enumerate(self.basis):
            product = self.left.left_mats[y].column(u) if on_left else self.right.left_mats[w].column(y)
            for j, c in enumerate(product):
                if not c:
                    continue
                key = (k, j, w) if on_left else (k, u, j)
                if key not in self.index:
                    raise StructureError(f"{self.bimodule_name} is not closed under the actions")
                M.data[self.index[key]][col] = c
        return M

    @property
    def bimodule_name(self) -> str:
        return f"free bimodule on {len(self.summands)} summands"

    def element(self, k: int, u: Sequence, w: Sequence) -> Vector:
        """u ⊗ w in summand k; u ∈ L·e_b and w ∈ e_a·R"""
        field = self.left.field
        v = zero_vector(field, self.dim)
        for i, x in enumerate(u):
            if not x:
                continue
            for j, y in enumerate(w):
                if not y:
                    continue
                n = self.index.get((k, i, j))
                if n is None:
                    raise DomainError(f"Element is not in summand {k} of the {self.bimodule_name}")
                v[n] = v[n] + x * y
        return [field.coerce(c) for c in v]


def presented_bimodule(F: FreeBimodule, relations: Sequence[Sequence], name: str = "X") -> Bimodule:
    """F modulo the sub-bimodule generated by relations"""
    field = F.left.field
    X = F.bimodule
    basis = span_basis(field, [r for r in relations if any(r)], F.dim) if relations else []
    while basis:
        images = [m.apply(v) for m in X.left_action + X.right_action for v in basis]
        new = extend_basis(field, basis, images, F.dim)
        if not new:
            break
        basis = basis + new
    Q = QuotientSpace(field, F.dim, basis)
    P, S = Q.projection(), Q.section()
    left = [P @ m @ S for m in X.left_action]
    right = [P @ m @ S for m in X.right_action]
    return Bimodule(F.left, F.right, Q.dim, left, right, name=name)


def path_element(A: Algebra, path: Path) -> Vector:
    """Image of a path of the vertex quiver in A"""
    paths = _path_basis(A)
    if path.is_trivial:
        return list(A.idempotents[A.idempotent_index(path.source)])
    letters = {}
    for k, p in enumerate(paths):
        if p.length == 1:
            letters[p.arrows[0]] = A.basis_element(k)
    if any(x not in letters for x in path.arrows):
        raise DomainError(f"Path {path.render()} uses an arrow outside {A.name}")
    acc = letters[path.arrows[0]]
    for x in path.arrows[1:]:
        acc = A.mul(letters[x], acc)
    return acc


def _power(A: Algebra, x: Vector, f: int) -> Vector:
    acc = list(A.unit)
    for _ in range(f):
        acc = A.mul(x, acc)
    return acc


def _loop_generator(A: Algebra, c: int) -> Vector:
    """x in A = k[x]/(x^c), checked"""
    loops = [k for k, p in enumerate(_path_basis(A)) if p.length == 1]
    if c == 1 and A.dim == 1:
        return A.zero()
    if len(A.idempotents) != 1 or len(loops) != 1 or A.dim != c:
        raise DomainError(f"{A.name} is not k[x]/(x^{c})")
    return A.basis_element(loops[0])


def gls_bimodule(left: Algebra, right: Algebra, c_s: int, c_t: int, f_st: int, f_ts: int, g: int,
                 name: str = "X") -> Bimodule:
    """g copies of (k[x_t]/(x^c_t) ⊗ k[x_s]/(x^c_s)) / (x_t^f_st ⊗ 1 − 1 ⊗ x_s^f_ts)"""
    if g < 1:
        raise DomainError("gls needs g >= 1")
    xt = _loop_generator(left, c_t)
    xs = _loop_generator(right, c_s)
    F = FreeBimodule(left, right, [(0, 0)] * g, name=f"{name}_free")
    field = left.field
    relations = []
    for k in range(g):
        a = F.element(k, _power(left, xt, f_st), right.unit)
        b = F.element(k, left.unit, _power(right, xs, f_ts))
        relations.append([field.coerce(p - q) for p, q in zip(a, b)])
    return presented_bimodule(F, relations, name=name)


# ==================== BIMODULE PROJECTIVE COVERS ====================

class BimoduleCover:
    """P̃_α = ⊕_k Λ_t e_b ⊗ e_a Λ_s → Λ_α with u⊗w ↦ u·t_k·w

    tops[k] = (b, a, t_k): t_k spans a top basis element in e_b Λ_α e_a.
    """

    def __init__(self, arrow: str, bimodule: Bimodule, tops: List[Tuple[int, int, Vector]],
                 free: FreeBimodule, matrix: Matrix, kernel_generators: List[Vector]):
        self.arrow = arrow
        self.bimodule = bimodule
        self.tops = tops
        self.free = free
        self.matrix = matrix
        self.kernel_generators = kernel_generators

    @property
    def cover(self) -> Bimodule:
        return self.free.bimodule

    @property
    def basis(self) -> List[Tuple[int, int, int]]:
        return self.free.basis

    @property
    def top_dimension(self) -> int:
        return len(self.tops)


def _top_elements(X: Bimodule) -> List[Tuple[int, int, Vector]]:
    """Basis of X/(rad·X + X·rad) lifted into the corners e_b X e_a"""
    field = X.field
    L, R = X.left, X.right
    rad = []
    for r in jacobson_radical(L):
        rad.extend(X.act_left(r).columns())
    for r in jacobson_radical(R):
        rad.extend(X.act_right(r).columns())
    current = span_basis(field, rad, X.dim) if rad else []
    tops = []
    for b, eb in enumerate(L.idempotents):
        for a, ea in enumerate(R.idempotents):
            corner = X.act_left(eb) @ X.act_right(ea)
            new = extend_basis(field, current, image_basis(corner), X.dim)
            tops.extend((b, a, t) for t in new)
            current = current + new
    if len(current) != X.dim:
        raise StructureError(f"Corners of {X.name} do not span it")
    return tops


def bimodule_projective_cover(Lam: ProSpecies, arrow: str) -> BimoduleCover:
    """Projective cover of Λ_α over Λ_t ⊗ Λ_s^op with a minimal kernel generating set"""
    X = Lam.bimodule(arrow)
    field = X.field
    L, R = X.left, X.right
    tops = _top_elements(X)
    F = FreeBimodule(L, R, [(b, a) for b, a, _ in tops], name=f"P({arrow})")

    columns = []
    for k, u, w in F.basis:
        t = tops[k][2]
        columns.append(X.act_left(L.basis_element(u)).apply(X.act_right(R.basis_element(w)).apply(t)))
    pi = Matrix.from_columns(field, columns, X.dim)
    if pi.rank() != X.dim:
        raise StructureError(f"Cover of Λ_{arrow} is not surjective", arrow=arrow)

    cover = F.bimodule
    kernel = kernel_basis(pi)
    rad = []
    for r in jacobson_radical(L):
        rad.extend(cover.act_left(r).apply(x) for x in kernel)
    for r in jacobson_radical(R):
        rad.extend(cover.act_right(r).apply(x) for x in kernel)
    rad_basis = span_basis(field, rad, F.dim) if rad else []
    candidates = []
    for eb in L.idempotents:
        for ea in R.idempotents:
            corner = cover.act_left(eb) @ cover.act_right(ea)
            candidates.extend(corner.apply(x) for x in kernel)
    generators = extend_basis(field, rad_basis, [c for c in candidates if any(c)], F.dim)
    logger.debug(f"Cover of Λ_{arrow}: {len(tops)} summands, {len(generators)} kernel generators")
    return BimoduleCover(arrow, X, tops, F, pi, generators)


def _cover_path(Lam: ProSpecies, cover: BimoduleCover, n: int) -> Path:
    """Basis element u⊗w of summand k as the path u · α#k · w in Q̃"""
    a = Lam.quiver.arrow(cover.arrow)
    k, u, w = cover.basis[n]
    L, R = cover.bimodule.left, cover.bimodule.right
    pu = _rename(L.paths[u], a.target, L)
    pw = _rename(R.paths[w], a.source, R)
    return Path(source=pw.source, target=pu.target, arrows=pw.arrows + (cover_arrow_label(a.label, k),) + pu.arrows)


def _relation(field, terms: List[Tuple[object, Path]], name: str) -> Relation:
    return Relation(terms=tuple(Term(coefficient=field.render(c), path=p) for c, p in terms if c), name=name)


# ==================== PRESENTATIONS ====================

def _assemble(Lam: ProSpecies) -> Tuple[Presentation, Dict[str, BimoduleCover]]:
    Q = Lam.quiver
    field = Lam.field
    vertices: List[str] = []
    arrows: List[Arrow] = []
    arrow_tags: Dict[str, ArrowTag] = {}
    relations: List[Relation] = []
    relation_tags: List[RelationTag] = []

    for v in Q.vertices:
        if v not in Lam.presentations:
            raise DomainError(f"Vertex {v} has no bound quiver presentation", vertex=v)
        P = Lam.presentations[v]
        A = Lam.algebra(v)
        vertices.extend(outer_vertex_label(v, A, u) for u in P.quiver.vertices)
        for x in P.quiver.arrows:
            label = inner_arrow_label(x.label, v)
            arrows.append(Arrow(label=label, source=outer_vertex_label(v, A, x.source),
                                target=outer_vertex_label(v, A, x.target)))
            arrow_tags[label] = ArrowTag(origin=ArrowOrigin.VERTEX, outer=v)
        for r in P.relations:
            terms = tuple(Term(coefficient=t.coefficient, path=_rename(t.path, v, A)) for t in r.terms)
            relations.append(Relation(terms=terms, name=r.name))
            relation_tags.append(RelationTag(origin=RelationOrigin.VERTEX, outer=v))

    covers: Dict[str, BimoduleCover] = {}
    for a in Q.arrows:
        cover = bimodule_projective_cover(Lam, a.label)
        covers[a.label] = cover
        L, R = cover.bimodule.left, cover.bimodule.right
        for k, (b, i, _) in enumerate(cover.tops):
            label = cover_arrow_label(a.label, k)
            arrows.append(Arrow(label=label, source=outer_vertex_label(a.source, R, R.idempotent_labels[i]),
                                target=outer_vertex_label(a.target, L, L.idempotent_labels[b])))
            arrow_tags[label] = ArrowTag(origin=ArrowOrigin.BIMODULE, outer=a.label, index=k)
        for g in cover.kernel_generators:
            terms = [(c, _cover_path(Lam, cover, n)) for n, c in enumerate(g) if c]
            relations.append(_relation(field, terms, name=f"R[{a.label}]"))
            relation_tags.append(RelationTag(origin=RelationOrigin.ARROW, outer=a.label))

    presentation = Presentation(
        name=f"T({Lam.name})",
        quiver=Quiver(vertices=tuple(vertices), arrows=tuple(arrows)),
        relations=tuple(relations),
        arrow_tags=arrow_tags,
        relation_tags=tuple(relation_tags),
    )
    if not presentation.is_admissible():
        raise StructureError(f"Presentation of T({Lam.name}) has a relation term of length < 2")
    return presentation, covers


def generator_images(T: GradedAlgebra, presentation: Presentation,
                     covers: Dict[str, BimoduleCover]) -> Tuple[Dict[str, Vector], Dict[str, Vector]]:
    """Images in T(Λ) of the vertices and arrows of Q̃"""
    Lam = T.prospecies
    vertex_images: Dict[str, Vector] = {}
    arrow_images: Dict[str, Vector] = {}
    for v in Lam.quiver.vertices:
        A = Lam.algebra(v)
        e_v = Path(source=v, target=v)
        for e, label in zip(A.idempotents, A.idempotent_labels):
            vertex_images[outer_vertex_label(v, A, label)] = T.embed(e_v, e)
        for k, p in enumerate(_path_basis(A)):
            if p.length == 1:
                arrow_images[inner_arrow_label(p.arrows[0], v)] = T.embed(e_v, A.basis_element(k))
    for a in Lam.quiver.arrows:
        block = Path(source=a.source, target=a.target, arrows=(a.label,))
        for k, (_, _, t) in enumerate(covers[a.label].tops):
            arrow_images[cover_arrow_label(a.label, k)] = T.embed(block, t)
    missing = [x.label for x in presentation.quiver.arrows if x.label not in arrow_images]
    if missing:
        raise StructureError(f"No image for arrows {missing}")
    return vertex_images, arrow_images


class AlgebraMapCertificate:
    """A generator-determined map kQ̃/R → A with its checks"""

    def __init__(self, matrix: Matrix, bijective: bool, multiplicative: Optional[bool], method: str):
        self.matrix = matrix
        self.bijective = bijective
        self.multiplicative = multiplicative
        self.method = method

    @property
    def certified(self) -> bool:
        return self.bijective and self.multiplicative is True


def certify_algebra_map(B: Algebra, target: Algebra, vertex_images: Dict[str, Vector],
                        arrow_images: Dict[str, Vector]) -> AlgebraMapCertificate:
    """Send each basis path of B to the product of its letters and check the result

    Above ALGEBRA_ISO_MAX_DIM only bijectivity and the Cartan matrices are compared.
    """
    field = target.field
    columns = []
    for p in _path_basis(B):
        if p.is_trivial:
            columns.append(list(vertex_images[p.source]))
            continue
        acc = list(arrow_images[p.arrows[0]])
        for x in p.arrows[1:]:
            acc = target.mul(arrow_images[x], acc)
        columns.append(acc)
    Phi = Matrix.from_columns(field, columns, target.dim)
    bijective = B.dim == target.dim and Phi.rank() == B.dim
    if B.dim > settings.ALGEBRA_ISO_MAX_DIM:
        agree = bijective and cartan_matrix(B) == cartan_matrix(target)
        logger.warning(f"{B.name} has dim {B.dim} > {settings.ALGEBRA_ISO_MAX_DIM}; compared dimension and Cartan matrix only")
        return AlgebraMapCertificate(Phi, agree, None, "dimension+cartan")
    multiplicative = Phi.apply(B.unit) == list(target.unit)
    if multiplicative:
        for i in range(B.dim):
            for j in range(B.dim):
                lhs = target.mul(Phi.column(i), Phi.column(j))
                rhs = Phi.apply(B.left_mats[i].column(j))
                if lhs != rhs:
                    multiplicative = False
                    break
            if not multiplicative:
                break
    return AlgebraMapCertificate(Phi, bijective, multiplicative, "generator images")


def presentation_graded_dimensions(presentation: Presentation, B: Algebra) -> List[int]:
    """Basis paths counted by the number of cover arrows they use"""
    weights = presentation.cover_weights()
    degrees = [sum(weights[x] for x in p.arrows) for p in _path_basis(B)]
    top = max(degrees, default=0)
    return [degrees.count(d) for d in range(top + 1)]


def present_tensor_algebra(Lam: ProSpecies, validate: bool = True) -> Presentation:
    """Q̃ = vertex quivers plus one arrow per cover summand; R = vertex relations plus kernel generators"""
    presentation, _ = _assemble(Lam)
    if validate and is_acyclic(Lam.quiver):
        B = bound_quiver_algebra(presentation.bound_quiver(), Lam.field, name=presentation.name)
        T = tensor_algebra(Lam)
        if B.dim != T.dim:
            logger.error(f"Rebuilt {presentation.name} has dim {B.dim}, expected {T.dim}")
            raise PresentationMismatch(f"Rebuilt algebra has dimension {B.dim}, expected {T.dim}")
    logger.info(f"✓ Presented {presentation.name}: {len(presentation.quiver.vertices)} vertices, "
                f"{len(presentation.quiver.arrows)} arrows, {len(presentation.relations)} relations")
    return presentation


def certify_tensor_presentation(Lam: ProSpecies, presentation: Optional[Presentation] = None) -> AlgebraMapCertificate:
    """kQ̃/R → T(Λ) on generators, checked multiplicative and bijective"""
    built, covers = _assemble(Lam)
    presentation = presentation or built
    B = bound_quiver_algebra(presentation.bound_quiver(), Lam.field, name=presentation.name)
    T = tensor_algebra(Lam)
    return certify_algebra_map(B, T.algebra, *generator_images(T, presentation, covers))


def present_preprojective(Lam: ProSpecies, check_degree: Optional[int] = None,
                          certificate: Optional[DualisableCertificate] = None) -> Presentation:
    """Presentation of T(Λ̄) plus the Casimir relation, split over the vertex idempotents"""
    N = settings.PRESENTATION_CHECK_DEGREE if check_degree is None else check_degree
    Lbar = double_prospecies(Lam, certificate)
    field = Lam.field
    base, covers = _assemble(Lbar)

    T2 = tensor_algebra(Lbar, max_degree=2)
    B2 = bound_quiver_algebra(base.bound_quiver(max_weight=2), field, name=f"{base.name}_<=2")
    phi = certify_algebra_map(B2, T2.algebra, *generator_images(T2, base, covers))
    if not phi.bijective:
        raise PresentationMismatch(f"Degree ≤ 2 part of {base.name} is not reproduced")
    _, components = preprojective_relation(T2)

    relations = list(base.relations)
    tags = list(base.relation_tags)
    for v in Lam.quiver.vertices:
        A = Lam.algebra(v)
        e_v = Path(source=v, target=v)
        for e, label in zip(A.idempotents, A.idempotent_labels):
            unit = T2.embed(e_v, e)
            part = T2.algebra.mul(T2.algebra.mul(unit, components[v]), unit)
            if not any(part):
                continue
            try:
                y = solve_vector(phi.matrix, part)
            except NoSolution:
                raise PresentationMismatch(f"Casimir component at {v} has no path expression")
            terms = [(c, B2.paths[k]) for k, c in enumerate(y) if c]
            relations.append(_relation(field, terms, name=f"c[{outer_vertex_label(v, A, label)}]"))
            tags.append(RelationTag(origin=RelationOrigin.CASIMIR, outer=v))

    presentation = Presentation(
        name=f"Π({Lam.name})",
        quiver=base.quiver,
        relations=tuple(relations),
        arrow_tags=base.arrow_tags,
        relation_tags=tuple(tags),
    )
    if N >= 2:
        Pi = preprojective_algebra(Lam, N, certificate=Lbar.certificate)
        rebuilt = bound_quiver_algebra(presentation.bound_quiver(max_weight=N), field, name=presentation.name)
        got = presentation_graded_dimensions(presentation, rebuilt)
        expected = Pi.graded_dimensions()
        width = N + 1
        got = (got + [0] * width)[:width]
        expected = (expected + [0] * width)[:width]
        if got != expected:
            logger.error(f"Rebuilt {presentation.name} has graded dims {got}, expected {expected}")
            raise PresentationMismatch(f"Graded dimensions {got} differ from {expected}")
    logger.info(f"✓ Presented {presentation.name}: {len(presentation.relations)} relations "
                f"({len(presentation.relations_of(RelationOrigin.CASIMIR))} from the Casimir element)")
    return presentation
