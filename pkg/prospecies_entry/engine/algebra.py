# ============================================================================
# FILE: prospecies_entry/engine/algebra.py
# ============================================================================
"""Finite-dimensional algebras given by structure constants

An algebra stores one left-multiplication matrix per basis element:
L_a @ coords(x) = coords(b_a · x). Products x·y follow function composition for
paths, so for bound quiver algebras p·q means q first.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.core.dependencies import get_cache
from prospecies_entry.core.errors import CharTooSmall, NotAdmissible, NotNilpotent, StructureError
from prospecies_entry.engine.exactla import (
    FieldSpec, Matrix, QuotientSpace, Subspace, Vector, combine, combine_matrices, kernel_basis, kron,
    span_basis, standard_vector, zero_vector,
)
from prospecies_entry.engine.quiver import compose, path_weight, paths_of_length
from prospecies_entry.schemas.quiver import BoundQuiverPresentation, Path

logger = logging.getLogger(__name__)


class Algebra:
    """Associative unital algebra with a distinguished basis

    idempotents: orthogonal idempotents summing to 1 (vertex idempotents for
    basic algebras); generators: elements generating the algebra, used to
    shorten module axiom checks and Hom systems; radical_hint: a known basis
    of the Jacobson radical; split: whether the semisimple quotient is a
    product of copies of the ground field.
    """

    def __init__(
        self,
        field: FieldSpec,
        left_mats: List[Matrix],
        unit: Vector,
        labels: Optional[List[str]] = None,
        idempotents: Optional[List[Vector]] = None,
        idempotent_labels: Optional[List[str]] = None,
        generators: Optional[List[Vector]] = None,
        radical_hint: Optional[List[Vector]] = None,
        split: bool = False,
        name: str = "A",
        paths: Optional[List[Path]] = None,
        degrees: Optional[List[int]] = None,
        verify: bool = True,
    ):
        self.field = field
        self.dim = len(left_mats)
        self.left_mats = left_mats
        self.unit = list(unit)
        self.labels = labels or [f"b{i}" for i in range(self.dim)]
        self.idempotents = idempotents if idempotents is not None else ([list(unit)] if self.dim else [])
        self.idempotent_labels = idempotent_labels or [str(i) for i in range(len(self.idempotents))]
        self.generators = generators if generators is not None else [
            standard_vector(field, self.dim, i) for i in range(self.dim)]
        self.radical_hint = radical_hint
        self.split = split
        self.name = name
        self.paths = paths
        self.degrees = degrees
        self._opposite: Optional["Algebra"] = None
        self._right_mats: Optional[List[Matrix]] = None

        if verify and self.dim <= settings.VERIFY_MAX_DIM:
            self.verify()

    # ==================== ELEMENTS ====================

    def basis_element(self, i: int) -> Vector:
        return standard_vector(self.field, self.dim, i)

    def zero(self) -> Vector:
        return zero_vector(self.field, self.dim)

    def left_mult(self, x: Sequence) -> Matrix:
        """Matrix of y ↦ x·y"""
        return combine_matrices(self.field, x, self.left_mats, self.dim, self.dim)

    def right_mult(self, y: Sequence) -> Matrix:
        """Matrix of x ↦ x·y"""
        cols = [L.apply(y) for L in self.left_mats]
        return Matrix.from_columns(self.field, cols, self.dim)

    def right_mats(self) -> List[Matrix]:
        """Right multiplication by each basis element"""
        if self._right_mats is None:
            self._right_mats = [self.right_mult(self.basis_element(b)) for b in range(self.dim)]
        return self._right_mats

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        return self.left_mult(x).apply(y)

    def idempotent_index(self, label: str) -> int:
        return self.idempotent_labels.index(label)

    def is_commutative(self) -> bool:
        return all(self.left_mats[a].column(b) == self.left_mats[b].column(a)
                   for a in range(self.dim) for b in range(a + 1, self.dim))

    # ==================== AXIOMS ====================

    def verify(self) -> None:
        """Associativity on generators, unit law, idempotent laws; StructureError on failure"""
        I = Matrix.identity(self.field, self.dim)
        if self.dim and self.left_mult(self.unit) != I:
            raise StructureError(f"Unit of {self.name} does not act as the identity")
        if self.dim and self.right_mult(self.unit) != I:
            raise StructureError(f"Unit of {self.name} is not a right unit")
        for g in self.generators:
            Lg = self.left_mult(g)
            for b in range(self.dim):
                if Lg @ self.left_mats[b] != self.left_mult(Lg.column(b)):
                    raise StructureError(f"{self.name} is not associative", generator=g, basis=b)
        total = self.zero()
        for i, e in enumerate(self.idempotents):
            if self.mul(e, e) != list(e):
                raise StructureError(f"Idempotent {self.idempotent_labels[i]} of {self.name} is not idempotent")
            for j, f in enumerate(self.idempotents):
                if i != j and any(self.mul(e, f)):
                    raise StructureError(f"Idempotents of {self.name} are not orthogonal")
            total = [a + b for a, b in zip(total, e)]
        if self.idempotents and [self.field.coerce(a) for a in total] != self.unit:
            raise StructureError(f"Idempotents of {self.name} do not sum to 1")
        logger.debug(f"Verified axioms of {self.name} (dim {self.dim})")

    # ==================== DERIVED ====================

    def opposite(self) -> "Algebra":
        """A^op; L^op_a[c][b] = L_b[c][a]"""
        if self._opposite is None:
            mats = [Matrix.from_columns(self.field, [self.left_mats[b].column(a) for b in range(self.dim)], self.dim)
                    for a in range(self.dim)]
            opp = Algebra(
                self.field, mats, self.unit, labels=self.labels, idempotents=self.idempotents,
                idempotent_labels=self.idempotent_labels, generators=self.generators,
                radical_hint=self.radical_hint, split=self.split, name=f"{self.name}^op",
                paths=self.paths, degrees=self.degrees, verify=False,
            )
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    def corner_dimension(self, a: int, b: int) -> int:
        """dim e_a A e_b"""
        M = self.left_mult(self.idempotents[a]) @ self.right_mult(self.idempotents[b])
        return M.rank()

    def __repr__(self) -> str:
        return f"Algebra({self.name}, dim={self.dim}, {self.field.label})"


def ground_algebra(field: FieldSpec) -> Algebra:
    """The ground field k as a one-dimensional algebra"""
    return Algebra(field, [Matrix.identity(field, 1)], [field.one()], labels=["1"],
                   radical_hint=[], split=True, name="k", degrees=[0], verify=False)


def cartan_matrix(A: Algebra) -> List[List[int]]:
    """C[a][b] = dim e_a A e_b over the stored idempotents"""
    n = len(A.idempotents)
    return [[A.corner_dimension(a, b) for b in range(n)] for a in range(n)]


# ==================== BOUND QUIVER ALGEBRAS ====================

def _coerce_relations(P: BoundQuiverPresentation, field: FieldSpec) -> List[List[Tuple[object, Path]]]:
    """Field coefficients per relation; checks admissibility"""
    out = []
    for r in P.relations:
        if not r.terms:
            raise NotAdmissible("Empty relation")
        first = r.terms[0].path
        terms = []
        for t in r.terms:
            if t.path.length < 2:
                raise NotAdmissible(f"Relation term {t.path.render()} has length < 2", relation=r.render())
            if (t.path.source, t.path.target) != (first.source, first.target):
                raise NotAdmissible(f"Relation {r.render()} mixes non-parallel paths", relation=r.render())
            c = field.coerce(Fraction(t.coefficient))
            if c:
                terms.append((c, t.path))
        if terms:
            out.append(terms)
    return out


def _ideal_vectors(P: BoundQuiverPresentation, relations, layers: List[List[Path]],
                   index: Dict[Path, int], degree: int, field: FieldSpec) -> List[Vector]:
    """Spanning set of the ideal truncated to paths of length ≤ degree: l·r·m for paths l, m"""
    size = len(index)
    short: List[Path] = [p for layer in layers for p in layer]
    vectors = []
    for terms in relations:
        mu = min(p.length for _, p in terms)
        src, tgt = terms[0][1].source, terms[0][1].target
        budget = degree - mu
        if budget < 0:
            continue
        lefts = [l for l in short if l.length <= budget and l.source == tgt]
        rights = [m for m in short if m.length <= budget and m.target == src]
        for l in lefts:
            for m in rights:
                if l.length + m.length > budget:
                    continue
                v = zero_vector(field, size)
                hit = False
                for c, p in terms:
                    q = compose(l, compose(p, m))
                    j = index.get(q)
                    if j is not None:
                        v[j] = v[j] + c
                        hit = True
                if hit and any(v):
                    vectors.append([field.coerce(x) for x in v])
    return vectors


def bound_quiver_algebra(P: BoundQuiverPresentation, field: FieldSpec, name: str = "A") -> Algebra:
    """kQ/I by degreewise linear reduction

    Finds the least D with every length-D path in the ideal modulo longer paths,
    then takes paths of length < D modulo the truncated ideal. Columns are ordered
    (length, labels) and pivots are leftmost, so shorter and lexicographically
    smaller paths are the ones eliminated.
    """
    Q = P.quiver
    relations = _coerce_relations(P, field)
    weights, W = P.weights, P.max_weight

    layers: List[List[Path]] = [paths_of_length(Q, 0)]
    stop = None
    quotient = None
    for D in range(1, P.nilpotency_bound + 1):
        layer = paths_of_length(Q, D, weights, W)
        if not layer:
            stop = D
            break
        layers.append(layer)
        flat = [p for lay in layers for p in lay]
        index = {p: j for j, p in enumerate(flat)}
        ideal = _ideal_vectors(P, relations, layers, index, D, field)
        quotient = QuotientSpace(field, len(flat), ideal)
        offset = len(flat) - len(layer)
        if all(not any(quotient.coords(standard_vector(field, len(flat), offset + k))) for k in range(len(layer))):
            stop = D
            layers.pop()
            break
    if stop is None:
        logger.error(f"Arrow ideal not nilpotent within bound {P.nilpotency_bound}")
        raise NotNilpotent(f"No nilpotency certificate up to degree {P.nilpotency_bound}",
                           bound=P.nilpotency_bound)

    flat = [p for lay in layers for p in lay]
    index = {p: j for j, p in enumerate(flat)}
    ideal = _ideal_vectors(P, relations, layers, index, stop - 1, field)
    quotient = QuotientSpace(field, len(flat), ideal)
    basis_paths = [flat[j] for j in quotient.free]
    n = len(basis_paths)
    projection = quotient.projection()
    reduced = [projection.column(j) for j in range(len(flat))]

    def coords_of(p: Optional[Path]) -> Vector:
        if p is None or p.length >= stop or (W is not None and path_weight(p, weights) > W):
            return zero_vector(field, n)
        return reduced[index[p]]

    left_mats = []
    for pa in basis_paths:
        cols = [coords_of(compose(pa, pb)) for pb in basis_paths]
        left_mats.append(Matrix.from_columns(field, cols, n))

    pos = {p: k for k, p in enumerate(basis_paths)}
    trivial = [p for p in basis_paths if p.is_trivial]
    idempotents = [standard_vector(field, n, pos[p]) for p in trivial]
    unit = combine(field, [field.one()] * len(idempotents), idempotents, n)
    generators = idempotents + [standard_vector(field, n, pos[p]) for p in basis_paths if p.length == 1]
    radical = [standard_vector(field, n, k) for k, p in enumerate(basis_paths) if not p.is_trivial]

    A = Algebra(
        field, left_mats, unit,
        labels=[p.render() for p in basis_paths],
        idempotents=idempotents,
        idempotent_labels=[p.source for p in trivial],
        generators=generators,
        radical_hint=radical,
        split=True,
        name=name,
        paths=basis_paths,
        degrees=[p.length for p in basis_paths],
    )
    logger.info(f"✓ Bound quiver algebra {name} built: dim {n}, paths vanish from length {stop}")
    return A


# ==================== RADICAL ====================

def trace_form_radical(A: Algebra) -> List[Vector]:
    """Kernel of the trace form G[a][b] = tr(L_a L_b)"""
    p = A.field.modulus
    if p and p <= A.dim:
        raise CharTooSmall(f"Trace-form radical needs p > dim; p={p}, dim={A.dim}", p=p, dim=A.dim)
    flat = [L.flatten() for L in A.left_mats]
    transposed = [L.transpose().flatten() for L in A.left_mats]
    z = A.field.zero()
    G = Matrix.zeros(A.field, A.dim, A.dim)
    for a in range(A.dim):
        for b in range(a, A.dim):
            s = z
            for u, v in zip(flat[a], transposed[b]):
                if u and v:
                    s += u * v
            s = A.field.coerce(s)
            G.data[a][b] = s
            G.data[b][a] = s
    return kernel_basis(G)


def jacobson_radical(A: Algebra, use_hint: bool = True) -> List[Vector]:
    """Basis of rad A; the stored hint when present, else the trace form"""
    if use_hint and A.radical_hint is not None:
        return [list(v) for v in A.radical_hint]
    return trace_form_radical(A)


# ==================== PRODUCTS ====================

def tensor_vector(field: FieldSpec, x: Sequence, y: Sequence) -> Vector:
    """Coordinates of x⊗y, index a·dim(y) + b"""
    p = field.modulus
    return [(a * b) % p if p else a * b for a in x for b in y]


def tensor_product(A: Algebra, B: Algebra, name: Optional[str] = None) -> Algebra:
    """A ⊗_k B with L_(a,b) = kron(L_a, L_b)"""
    field = A.field
    mats = [kron(La, Lb) for La in A.left_mats for Lb in B.left_mats]
    idempotents = [tensor_vector(field, e, f) for e in A.idempotents for f in B.idempotents]
    idem_labels = [f"({x},{y})" for x in A.idempotent_labels for y in B.idempotent_labels]
    generators = [tensor_vector(field, g, B.unit) for g in A.generators] + [tensor_vector(field, A.unit, h) for h in B.generators]
    radical = None
    if A.radical_hint is not None and B.radical_hint is not None:
        spanning = [tensor_vector(field, r, B.basis_element(j)) for r in A.radical_hint for j in range(B.dim)]
        spanning += [tensor_vector(field, A.basis_element(i), r) for i in range(A.dim) for r in B.radical_hint]
        radical = span_basis(field, spanning, A.dim * B.dim)
    degrees = None
    if A.degrees is not None and B.degrees is not None:
        degrees = [da + db for da in A.degrees for db in B.degrees]
    return Algebra(
        field, mats, tensor_vector(field, A.unit, B.unit),
        labels=[f"{x}⊗{y}" for x in A.labels for y in B.labels],
        idempotents=idempotents, idempotent_labels=idem_labels, generators=generators,
        radical_hint=radical, split=A.split and B.split,
        name=name or f"{A.name}⊗{B.name}", degrees=degrees, verify=False,
    )


def enveloping_algebra(left: Algebra, right: Algebra) -> Algebra:
    """left ⊗ right^op; its modules are left–right bimodules"""
    return get_cache().get_enveloping(
        left, right, lambda: tensor_product(left, right.opposite(), name=f"{left.name}⊗{right.name}^op"))


def subspace_algebra(field: FieldSpec, matrices: List[Matrix], name: str = "End") -> Algebra:
    """The algebra spanned by a product-closed, unital family of square matrices"""
    n = len(matrices)
    if not n:
        return Algebra(field, [], [], name=name, idempotents=[], verify=False)
    size = matrices[0].rows
    span = Subspace(field, size * size, [M.flatten() for M in matrices], independent=True)
    left_mats = []
    for Ma in matrices:
        cols = [span.coords((Ma @ Mb).flatten()) for Mb in matrices]
        left_mats.append(Matrix.from_columns(field, cols, n))
    unit = span.coords(Matrix.identity(field, size).flatten())
    return Algebra(field, left_mats, unit, name=name, verify=False)


def quotient_algebra(A: Algebra, ideal: Sequence[Sequence], name: Optional[str] = None) -> Tuple[Algebra, QuotientSpace]:
    """A modulo the two-sided ideal spanned by the given vectors

    Basis: the surviving coordinates of the quotient space, so homogeneous
    ideals of graded algebras give homogeneous bases.
    """
    field = A.field
    quotient = QuotientSpace(field, A.dim, ideal)
    P, S = quotient.projection(), quotient.section()
    left_mats = [P @ A.left_mats[f] @ S for f in quotient.free]

    idempotents, idem_labels = [], []
    for e, label in zip(A.idempotents, A.idempotent_labels):
        image = P.apply(e)
        if any(image):
            idempotents.append(image)
            idem_labels.append(label)
    generators = [g for g in (P.apply(x) for x in A.generators) if any(g)]
    radical = None
    if A.radical_hint is not None:
        radical = span_basis(field, [P.apply(r) for r in A.radical_hint], quotient.dim)
    quotient_name = name or f"{A.name}/I"
    B = Algebra(
        field, left_mats, P.apply(A.unit),
        labels=[A.labels[f] for f in quotient.free],
        idempotents=idempotents, idempotent_labels=idem_labels, generators=generators,
        radical_hint=radical, split=A.split, name=quotient_name,
        degrees=[A.degrees[f] for f in quotient.free] if A.degrees is not None else None,
    )
    logger.debug(f"Quotient {quotient_name}: {A.dim} -> {B.dim}")
    return B, quotient
