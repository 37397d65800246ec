# ============================================================================
# FILE: prospecies_entry/engine/prospecies.py
# ============================================================================
"""Pro-species, their representations, the tensor algebra T(Λ) and its homological tests"""

from typing import Callable, Dict, List, Optional, Tuple
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.core.errors import (
    CyclicQuiver, NotLocallyFree, NotLocallyGorenstein, NotLocallyProjective, NotProjective,
    NotProjectiveLeft, NotProjectiveRight, ShapeMismatch, StructureError,
)
from prospecies_entry.engine.algebra import Algebra
from prospecies_entry.engine.exactla import (
    Matrix, Subspace, Vector, block_diagonal, combine, image_basis, span_basis, standard_vector, zero_vector,
)
from prospecies_entry.engine.modules import (
    Bimodule, Module, TensorSpace, cokernel_module, dual_basis, is_isomorphic, tensor_over,
)
from prospecies_entry.engine.quiver import compose, enumerate_paths, is_acyclic, longest_path_length
from prospecies_entry.engine.resolutions import (
    ext_dim, gorenstein_dimension, inj_dim, is_iwanaga_gorenstein, is_selfinjective, proj_dim,
)
from prospecies_entry.schemas.quiver import BoundQuiverPresentation, Path, Quiver
from prospecies_entry.schemas.reports import Dimension, GorensteinReport, GPVerdict, IsoVerdict, ValuationReport

logger = logging.getLogger(__name__)


def arrow_sign(label: str) -> int:
    """-1 on starred arrows, +1 otherwise"""
    return -1 if label.endswith("_star") else 1


def outer_vertex_label(vertex: str, algebra: Algebra, inner: str) -> str:
    """Name of an inner idempotent inside T(Λ): the outer label for local algebras"""
    if len(algebra.idempotents) == 1:
        return vertex
    return f"{inner}_{vertex}"


class ProSpecies:
    """Quiver with an algebra per vertex and a projective bimodule per arrow

    Λ_α is a Λ_{t(α)}-Λ_{s(α)}-bimodule; both one-sided dual bases are stored.
    """

    def __init__(self, quiver: Quiver, vertex_algebras: Dict[str, Algebra], arrow_bimodules: Dict[str, Bimodule],
                 presentations: Optional[Dict[str, BoundQuiverPresentation]] = None, name: str = "Λ"):
        self.quiver = quiver
        self.vertex_algebras = vertex_algebras
        self.arrow_bimodules = arrow_bimodules
        self.presentations = presentations or {}
        self.name = name
        self.left_bases = {}
        self.right_bases = {}
        self.validate()
        self.field = vertex_algebras[quiver.vertices[0]].field if quiver.vertices else None

    def validate(self) -> None:
        Q = self.quiver
        if set(self.vertex_algebras) != set(Q.vertices):
            raise ShapeMismatch("Vertex algebras do not match the quiver vertices")
        if set(self.arrow_bimodules) != {a.label for a in Q.arrows}:
            raise ShapeMismatch("Arrow bimodules do not match the quiver arrows")
        for a in Q.arrows:
            X = self.arrow_bimodules[a.label]
            if X.left is not self.vertex_algebras[a.target] or X.right is not self.vertex_algebras[a.source]:
                raise ShapeMismatch(f"Bimodule on {a.label} is not a Λ_{a.target}-Λ_{a.source}-bimodule", arrow=a.label)
            try:
                self.left_bases[a.label] = dual_basis(X.left_module())
            except NotProjective:
                logger.error(f"Bimodule on {a.label} is not projective on the left")
                raise NotProjectiveLeft(f"Λ_{a.label} is not projective as a left module", arrow=a.label)
            try:
                self.right_bases[a.label] = dual_basis(X.right_module())
            except NotProjective:
                logger.error(f"Bimodule on {a.label} is not projective on the right")
                raise NotProjectiveRight(f"Λ_{a.label} is not projective as a right module", arrow=a.label)

    def algebra(self, vertex: str) -> Algebra:
        return self.vertex_algebras[vertex]

    def bimodule(self, arrow: str) -> Bimodule:
        return self.arrow_bimodules[arrow]

    def __repr__(self) -> str:
        return f"ProSpecies({self.name}, {len(self.quiver.vertices)} vertices, {len(self.quiver.arrows)} arrows)"


def build_prospecies(Q: Quiver, algebras: Dict[str, Algebra], bimodules: Dict[str, Bimodule],
                     presentations: Optional[Dict[str, BoundQuiverPresentation]] = None, name: str = "Λ") -> ProSpecies:
    Lam = ProSpecies(Q, algebras, bimodules, presentations, name)
    logger.info(f"✓ Pro-species {name} validated ({len(Q.vertices)} vertices, {len(Q.arrows)} arrows)")
    return Lam


# ==================== REPRESENTATIONS ====================

class Representation:
    """Λ_i-modules M_i and Λ_{t(α)}-linear maps Λ_α ⊗ M_{s(α)} → M_{t(α)}"""

    def __init__(self, prospecies: ProSpecies, modules: Dict[str, Module], maps: Dict[str, Matrix], verify: bool = True):
        self.prospecies = prospecies
        self.modules = modules
        self.maps = maps
        if verify:
            self.verify()

    @classmethod
    def zero(cls, Lam: ProSpecies) -> "Representation":
        modules = {v: Module.zero(Lam.algebra(v)) for v in Lam.quiver.vertices}
        rep = cls(Lam, modules, {}, verify=False)
        rep.maps = {a.label: Matrix.zeros(Lam.field, 0, rep.tensor(a.label).dim) for a in Lam.quiver.arrows}
        return rep

    def tensor(self, arrow: str) -> TensorSpace:
        a = self.prospecies.quiver.arrow(arrow)
        return tensor_over(self.prospecies.bimodule(arrow), self.modules[a.source])

    def verify(self) -> None:
        Lam = self.prospecies
        for v in Lam.quiver.vertices:
            if self.modules[v].algebra is not Lam.algebra(v):
                raise ShapeMismatch(f"M_{v} is not a module over Λ_{v}")
        for a in Lam.quiver.arrows:
            T = self.tensor(a.label)
            f = self.maps[a.label]
            target = self.modules[a.target]
            if f.rows != target.dim or f.cols != T.dim:
                raise ShapeMismatch(f"Map on {a.label} has shape {f.rows}x{f.cols}")
            for x, y in zip(T.module().generator_actions(), target.generator_actions()):
                if f @ x != y @ f:
                    raise StructureError(f"Map on {a.label} is not Λ_{a.target}-linear", arrow=a.label)

    def dimension_vector(self) -> Dict[str, int]:
        return {v: self.modules[v].dim for v in self.prospecies.quiver.vertices}

    def total_dimension(self) -> int:
        return sum(m.dim for m in self.modules.values())


def in_map(rep: Representation, vertex: str, signed: bool = False) -> Tuple[Matrix, List[Tuple[str, TensorSpace]]]:
    """⊕_{t(α)=i} Λ_α ⊗ M_{s(α)} → M_i, optionally with sgn(α) on each summand"""
    Lam = rep.prospecies
    field = Lam.field
    target = rep.modules[vertex]
    parts = []
    blocks = []
    for a in Lam.quiver.arrows_into(vertex):
        T = rep.tensor(a.label)
        f = rep.maps[a.label]
        if signed and arrow_sign(a.label) < 0:
            f = -f
        parts.append((a.label, T))
        blocks.append(f)
    if not blocks:
        return Matrix.zeros(field, target.dim, 0), parts
    return blocks[0].hstack(*blocks[1:]), parts


def in_domain_module(parts: List[Tuple[str, TensorSpace]], algebra: Algebra) -> Module:
    mods = [T.module() for _, T in parts]
    if not mods:
        return Module.zero(algebra)
    return mods[0].direct_sum(*mods[1:])


def is_rep_hom(M: Representation, N: Representation, fs: Dict[str, Matrix]) -> bool:
    """f_t ∘ M_α = N_α ∘ (1 ⊗ f_s) for every arrow, and each f_i Λ_i-linear"""
    Lam = M.prospecies
    for v in Lam.quiver.vertices:
        for x, y in zip(M.modules[v].generator_actions(), N.modules[v].generator_actions()):
            if fs[v] @ x != y @ fs[v]:
                return False
    for a in Lam.quiver.arrows:
        lifted = M.tensor(a.label).map_right(fs[a.source], N.tensor(a.label))
        if fs[a.target] @ M.maps[a.label] != N.maps[a.label] @ lifted:
            return False
    return True


def is_locally_projective(rep: Representation) -> bool:
    for v, M in rep.modules.items():
        try:
            dual_basis(M)
        except NotProjective:
            return False
    return True


# ==================== TENSOR ALGEBRA ====================

class PathBlock:
    """Λ_p inside T(Λ): the bimodule, its offset and the nesting Λ_α ⊗ Λ_{p'}"""

    def __init__(self, path: Path, bimodule: Bimodule, offset: int, tensor: Optional[TensorSpace] = None):
        self.path = path
        self.bimodule = bimodule
        self.offset = offset
        self.tensor = tensor

    @property
    def dim(self) -> int:
        return self.bimodule.dim

    @property
    def indices(self) -> range:
        return range(self.offset, self.offset + self.dim)


class GradedAlgebra:
    """T(Λ) (or its truncation at max_degree) graded by path length"""

    def __init__(self, prospecies: ProSpecies, algebra: Algebra, blocks: List[PathBlock], max_degree: Optional[int]):
        self.prospecies = prospecies
        self.algebra = algebra
        self.blocks = blocks
        self.max_degree = max_degree
        self.degrees = algebra.degrees
        self._by_path = {b.path: b for b in blocks}
        field = algebra.field
        self.vertex_units = {}
        for v in prospecies.quiver.vertices:
            block = self._by_path[Path(source=v, target=v)]
            self.vertex_units[v] = self.embed(block.path, prospecies.algebra(v).unit)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def block(self, path: Path) -> PathBlock:
        return self._by_path[path]

    def has_path(self, path: Path) -> bool:
        return path in self._by_path

    def embed(self, path: Path, vector) -> Vector:
        b = self._by_path[path]
        v = zero_vector(self.algebra.field, self.dim)
        v[b.offset:b.offset + b.dim] = list(vector)
        return v

    def restrict(self, path: Path, vector) -> Vector:
        b = self._by_path[path]
        return list(vector[b.offset:b.offset + b.dim])

    def degree_indices(self, d: int) -> List[int]:
        return [k for k, deg in enumerate(self.degrees) if deg == d]

    def graded_dimensions(self) -> List[int]:
        top = max(self.degrees, default=0)
        return [len(self.degree_indices(d)) for d in range(top + 1)]


def _path_blocks(Lam: ProSpecies, paths: List[Path], tensor_factory: Callable) -> List[PathBlock]:
    blocks: List[PathBlock] = []
    by_path: Dict[Path, PathBlock] = {}
    offset = 0
    for p in paths:
        if p.is_trivial:
            block = PathBlock(p, Bimodule.regular(Lam.algebra(p.source)), offset)
        elif p.length == 1:
            block = PathBlock(p, Lam.bimodule(p.arrows[0]), offset)
        else:
            rest = Path(source=p.source, target=Lam.quiver.arrow(p.arrows[-2]).target, arrows=p.arrows[:-1])
            T = tensor_factory(Lam.bimodule(p.arrows[-1]), by_path[rest].bimodule)
            block = PathBlock(p, T.bimodule(), offset, T)
        blocks.append(block)
        by_path[p] = block
        offset += block.dim
    return blocks


def _split_last(Q: Quiver, p: Path) -> Tuple[str, Path]:
    """p = α·p' with α the last arrow"""
    rest = Path(source=p.source, target=Q.arrow(p.arrows[-1]).source, arrows=p.arrows[:-1])
    return p.arrows[-1], rest


def tensor_algebra(Lam: ProSpecies, max_degree: Optional[int] = None) -> GradedAlgebra:
    """T(Λ) = ⊕_p Λ_p with concatenation; truncated above max_degree when given"""
    Q = Lam.quiver
    field = Lam.field
    if max_degree is None:
        if not is_acyclic(Q):
            logger.error(f"T({Lam.name}) is infinite-dimensional: quiver has an oriented cycle")
            raise CyclicQuiver(f"Quiver of {Lam.name} has an oriented cycle")
        top = longest_path_length(Q)
    else:
        top = max_degree
    paths = enumerate_paths(Q, top)
    blocks = _path_blocks(Lam, paths, tensor_over)
    by_path = {b.path: b for b in blocks}
    n = sum(b.dim for b in blocks)

    memo: Dict[Tuple[Path, Path, int, int], Vector] = {}

    def product(p: Path, q: Path, u: int, v: int) -> Vector:
        """basis u of Λ_p times basis v of Λ_q, inside Λ_{pq}"""
        key = (p, q, u, v)
        if key in memo:
            return memo[key]
        Bp, Bq = by_path[p].bimodule, by_path[q].bimodule
        pq = compose(p, q)
        if p.is_trivial:
            out = Bq.left_action[u].column(v)
        elif q.is_trivial:
            out = Bp.right_action[v].column(u)
        elif p.length == 1:
            out = by_path[pq].tensor.pure(standard_vector(field, Bp.dim, u), standard_vector(field, Bq.dim, v))
        else:
            alpha, rest = _split_last(Q, p)
            a, w = by_path[p].tensor.lift_indices()[u]
            inner = product(rest, q, w, v)
            da = Lam.bimodule(alpha).dim
            out = by_path[pq].tensor.pure(standard_vector(field, da, a), inner)
        memo[key] = out
        return out

    left_mats = []
    for bp in blocks:
        for u in range(bp.dim):
            cols = []
            for bq in blocks:
                pq = compose(bp.path, bq.path)
                for v in range(bq.dim):
                    col = zero_vector(field, n)
                    if pq is not None and pq in by_path:
                        target = by_path[pq]
                        col[target.offset:target.offset + target.dim] = product(bp.path, bq.path, u, v)
                    cols.append(col)
            left_mats.append(Matrix.from_columns(field, cols, n))

    def embed(path: Path, vector) -> Vector:
        b = by_path[path]
        out = zero_vector(field, n)
        out[b.offset:b.offset + b.dim] = list(vector)
        return out

    idempotents, idem_labels, generators, radical = [], [], [], []
    hints = True
    for v in Q.vertices:
        A = Lam.algebra(v)
        e_v = Path(source=v, target=v)
        for e, label in zip(A.idempotents, A.idempotent_labels):
            idempotents.append(embed(e_v, e))
            idem_labels.append(outer_vertex_label(v, A, label))
        generators.extend(embed(e_v, g) for g in A.generators)
        if A.radical_hint is None:
            hints = False
        else:
            radical.extend(embed(e_v, r) for r in A.radical_hint)
    for b in blocks:
        if b.path.length >= 1:
            radical.extend(standard_vector(field, n, k) for k in b.indices)
            if b.path.length == 1:
                generators.extend(standard_vector(field, n, k) for k in b.indices)

    unit = combine(field, [field.one()] * len(idempotents), idempotents, n)
    degrees = [b.path.length for b in blocks for _ in range(b.dim)]
    labels = [f"{b.path.render()}|{k}" for b in blocks for k in range(b.dim)]
    name = f"T({Lam.name})" if max_degree is None else f"T({Lam.name})_<={max_degree}"
    algebra = Algebra(
        field, left_mats, unit, labels=labels, idempotents=idempotents, idempotent_labels=idem_labels,
        generators=generators, radical_hint=radical if hints else None,
        split=all(Lam.algebra(v).split for v in Q.vertices), name=name, degrees=degrees,
    )
    logger.info(f"✓ Tensor algebra {name} built: dim {n}")
    return GradedAlgebra(Lam, algebra, blocks, max_degree)


def path_dimension_oracle(Lam: ProSpecies, max_degree: Optional[int] = None) -> int:
    """Σ_p dim Λ_p with the tensor factors associated from the right, no multiplication"""
    Q = Lam.quiver
    if max_degree is None:
        if not is_acyclic(Q):
            raise CyclicQuiver(f"Quiver of {Lam.name} has an oriented cycle")
        max_degree = longest_path_length(Q)
    dims: Dict[Path, Bimodule] = {}
    total = 0
    for p in enumerate_paths(Q, max_degree):
        if p.is_trivial:
            B = Bimodule.regular(Lam.algebra(p.source))
        elif p.length == 1:
            B = Lam.bimodule(p.arrows[0])
        else:
            first = p.arrows[0]
            tail = Path(source=Q.arrow(first).target, target=p.target, arrows=p.arrows[1:])
            B = TensorSpace(dims[tail], Lam.bimodule(first)).bimodule()
        dims[p] = B
        total += B.dim
    return total


# ==================== REPRESENTATIONS AND MODULES ====================

def rep_to_module(T: GradedAlgebra, rep: Representation) -> Module:
    """⊕ M_i with Λ_p acting through the arrow maps along p"""
    Lam = T.prospecies
    Q = Lam.quiver
    field = T.algebra.field
    offsets, off = {}, 0
    for v in Q.vertices:
        offsets[v] = off
        off += rep.modules[v].dim
    total = off

    memo: Dict[Tuple[Path, int], Matrix] = {}

    def path_action(p: Path, u: int) -> Matrix:
        """Basis u of Λ_p as a map M_{s(p)} → M_{t(p)}"""
        key = (p, u)
        if key in memo:
            return memo[key]
        source = rep.modules[p.source]
        if p.length == 1:
            Ta = rep.tensor(p.arrows[0])
            da = Lam.bimodule(p.arrows[0]).dim
            cols = [rep.maps[p.arrows[0]].apply(Ta.pure(standard_vector(field, da, u), standard_vector(field, source.dim, m)))
                    for m in range(source.dim)]
        else:
            alpha, rest = _split_last(Q, p)
            a, w = T.block(p).tensor.lift_indices()[u]
            inner = path_action(rest, w)
            Ta = rep.tensor(alpha)
            da = Lam.bimodule(alpha).dim
            cols = [rep.maps[alpha].apply(Ta.pure(standard_vector(field, da, a), inner.column(m)))
                    for m in range(source.dim)]
        result = Matrix.from_columns(field, cols, rep.modules[p.target].dim)
        memo[key] = result
        return result

    action = []
    for b in T.blocks:
        for u in range(b.dim):
            X = Matrix.zeros(field, total, total)
            p = b.path
            if p.is_trivial:
                block = rep.modules[p.source].action[u]
            else:
                block = path_action(p, u)
            r0, c0 = offsets[p.target], offsets[p.source]
            for i in range(block.rows):
                X.data[r0 + i][c0:c0 + block.cols] = list(block.data[i])
            action.append(X)
    return Module(T.algebra, total, action, name="rep")


def vertex_subspaces(T: GradedAlgebra, V: Module) -> Dict[str, Subspace]:
    """ε_i V for every vertex"""
    return {v: Subspace(V.field, V.dim, image_basis(V.act(T.vertex_units[v])), independent=True)
            for v in T.prospecies.quiver.vertices}


def module_to_rep(T: GradedAlgebra, V: Module) -> Representation:
    """Restrict along ε_i and Λ_α ⊗ ε_{s(α)}V → ε_{t(α)}V"""
    Lam = T.prospecies
    field = V.field
    spaces = vertex_subspaces(T, V)
    modules = {}
    for v in Lam.quiver.vertices:
        S = spaces[v]
        e_v = Path(source=v, target=v)
        A = Lam.algebra(v)
        if S.dim:
            action = [S.coordinate_matrix(V.act(T.embed(e_v, A.basis_element(a))) @ S.matrix) for a in range(A.dim)]
        else:
            action = [Matrix.zeros(field, 0, 0) for _ in range(A.dim)]
        modules[v] = Module(A, S.dim, action, name=f"{V.name}[{v}]", verify=False)
    rep = Representation(Lam, modules, {}, verify=False)
    for a in Lam.quiver.arrows:
        Ta = rep.tensor(a.label)
        block = T.block(Path(source=a.source, target=a.target, arrows=(a.label,)))
        cols = []
        for h, m in Ta.lift_indices():
            image = V.act(T.embed(block.path, standard_vector(field, block.dim, h))).apply(spaces[a.source].matrix.column(m))
            cols.append(spaces[a.target].coords(image))
        rep.maps[a.label] = Matrix.from_columns(field, cols, modules[a.target].dim)
    return rep


def module_to_rep_basis(T: GradedAlgebra, V: Module) -> Matrix:
    """Columns: the ε_i V bases in vertex order; conjugates V onto rep_to_module(module_to_rep(V))"""
    spaces = vertex_subspaces(T, V)
    cols = [c for v in T.prospecies.quiver.vertices for c in spaces[v].basis]
    return Matrix.from_columns(V.field, cols, V.dim)


def local_module(T: GradedAlgebra, vertex: str) -> Module:
    """Λ_i regarded as a T(Λ)-module"""
    Lam = T.prospecies
    modules = {}
    for v in Lam.quiver.vertices:
        A = Lam.algebra(v)
        modules[v] = Module.regular(A) if v == vertex else Module.zero(A)
    rep = Representation(Lam, modules, {}, verify=False)
    for a in Lam.quiver.arrows:
        rep.maps[a.label] = Matrix.zeros(Lam.field, modules[a.target].dim, rep.tensor(a.label).dim)
    M = rep_to_module(T, rep)
    M.name = f"Λ_{vertex}"
    return M


# ==================== STANDARD RESOLUTION ====================

class StandardResolution:
    """0 → P1 → P0 → M → 0 with the differential of the standard sequence"""

    def __init__(self, P1: Module, P0: Module, module: Module, d: Matrix, eps: Matrix):
        self.P1 = P1
        self.P0 = P0
        self.module = module
        self.d = d
        self.eps = eps

    def is_exact(self) -> bool:
        if self.P1.dim and self.d.rank() != self.P1.dim:
            return False
        if self.module.dim and self.eps.rank() != self.module.dim:
            return False
        if self.P1.dim and self.module.dim and not (self.eps @ self.d).is_zero():
            return False
        return self.P0.dim == self.P1.dim + self.module.dim


def _corner_bimodule(T: GradedAlgebra, vertex: str) -> Tuple[Bimodule, List[int]]:
    """T·ε_i as a T–Λ_i bimodule on the blocks of paths starting at i"""
    A = T.algebra
    Lam = T.prospecies
    indices = [k for b in T.blocks if b.path.source == vertex for k in b.indices]
    Li = Lam.algebra(vertex)
    e_v = Path(source=vertex, target=vertex)
    left = [L.submatrix(indices, indices) for L in A.left_mats]
    right = [A.right_mult(T.embed(e_v, Li.basis_element(u))).submatrix(indices, indices) for u in range(Li.dim)]
    return Bimodule(A, Li, len(indices), left, right, name=f"T·e[{vertex}]", verify=False), indices


def standard_resolution(T: GradedAlgebra, rep: Representation) -> StandardResolution:
    """d(p⊗h⊗m) = ph⊗m − p⊗M_α(h⊗m); ε(p⊗m) = p·m"""
    if not is_locally_projective(rep):
        raise NotLocallyProjective("Representation is not locally projective")
    Lam = T.prospecies
    Q = Lam.quiver
    field = T.algebra.field
    M = rep_to_module(T, rep)

    corners = {v: _corner_bimodule(T, v) for v in Q.vertices}
    U = {v: tensor_over(corners[v][0], rep.modules[v]) for v in Q.vertices}
    u_off, off = {}, 0
    for v in Q.vertices:
        u_off[v] = off
        off += U[v].dim
    dim0 = off

    W = {a.label: rep.tensor(a.label) for a in Q.arrows}
    V = {a.label: tensor_over(corners[a.target][0], W[a.label].module()) for a in Q.arrows}

    m_off, off = {}, 0
    for v in Q.vertices:
        m_off[v] = off
        off += rep.modules[v].dim

    d_cols = []
    for a in Q.arrows:
        Xa, idx_t = corners[a.target]
        _, idx_s = corners[a.source]
        pos_s = {k: j for j, k in enumerate(idx_s)}
        block = T.block(Path(source=a.source, target=a.target, arrows=(a.label,)))
        for p_local, w in V[a.label].lift_indices():
            h, m = W[a.label].lift_indices()[w]
            p_vec = standard_vector(field, T.dim, idx_t[p_local])
            ph = T.algebra.mul(p_vec, T.embed(block.path, standard_vector(field, block.dim, h)))
            ph_local = [ph[k] for k in idx_s]
            if any(ph[k] for k in range(T.dim) if k not in pos_s):
                raise StructureError("Product left the corner T·e")
            col = zero_vector(field, dim0)
            first = U[a.source].pure(ph_local, standard_vector(field, rep.modules[a.source].dim, m))
            second = U[a.target].pure(standard_vector(field, Xa.dim, p_local), rep.maps[a.label].column(w))
            for k, x in enumerate(first):
                col[u_off[a.source] + k] += x
            for k, x in enumerate(second):
                col[u_off[a.target] + k] -= x
            d_cols.append([field.coerce(x) for x in col])
    dim1 = len(d_cols)
    d = Matrix.from_columns(field, d_cols, dim0) if d_cols else Matrix.zeros(field, dim0, 0)

    eps_cols = []
    for v in Q.vertices:
        _, idx = corners[v]
        for p_local, m in U[v].lift_indices():
            x = M.act(standard_vector(field, T.dim, idx[p_local])).column(m_off[v] + m)
            eps_cols.append(x)
    eps = Matrix.from_columns(field, eps_cols, M.dim) if eps_cols else Matrix.zeros(field, M.dim, 0)

    P0_parts = [U[v].module() for v in Q.vertices]
    P1_parts = [V[a.label].module() for a in Q.arrows]
    P0 = P0_parts[0].direct_sum(*P0_parts[1:]) if P0_parts else Module.zero(T.algebra)
    P1 = P1_parts[0].direct_sum(*P1_parts[1:]) if P1_parts else Module.zero(T.algebra)
    return StandardResolution(P1, P0, M, d, eps)


# ==================== VALUATION ====================

def _free_rank(M: Module) -> Optional[int]:
    """r with M ≅ A^r, certified; None otherwise"""
    A = M.algebra
    if A.dim == 0 or M.dim % A.dim:
        return None
    r = M.dim // A.dim
    if r == 0:
        return 0
    regular = Module.regular(A)
    free = regular.direct_sum(*([regular] * (r - 1)))
    return r if is_isomorphic(M, free).verdict == IsoVerdict.TRUE else None


def valuation(Lam: ProSpecies) -> ValuationReport:
    """c_i = dim Λ_i; (c_α, c_α*) = (right rank, left rank) of Λ_α"""
    vertex_dims = {v: Lam.algebra(v).dim for v in Lam.quiver.vertices}
    ranks = {}
    for a in Lam.quiver.arrows:
        X = Lam.bimodule(a.label)
        right = _free_rank(X.right_module())
        left = _free_rank(X.left_module())
        if right is None or left is None:
            raise NotLocallyFree(f"Λ_{a.label} is not free on both sides", arrow=a.label)
        if right * vertex_dims[a.source] != left * vertex_dims[a.target]:
            raise StructureError(f"Valuation of {a.label} is inconsistent")
        ranks[a.label] = [right, left]
    return ValuationReport(vertex_dimensions=vertex_dims, arrow_ranks=ranks)


# ==================== GORENSTEIN ====================

def is_locally_gorenstein(Lam: ProSpecies, n: int) -> bool:
    return all(is_iwanaga_gorenstein(Lam.algebra(v), n) for v in Lam.quiver.vertices)


def gorenstein_conditions(T: GradedAlgebra, n: int, U: Module, bound: Optional[int] = None) -> GorensteinReport:
    """Six conditions: pd ≤ n+1, pd finite, id ≤ n+1, id finite, local pd ≤ n, local id ≤ n

    Finiteness is tested up to the resolution bound.
    """
    Lam = T.prospecies
    bound = settings.RESOLUTION_BOUND if bound is None else bound
    for v in Lam.quiver.vertices:
        if not is_iwanaga_gorenstein(Lam.algebra(v), n):
            raise NotLocallyGorenstein(f"Λ_{v} is not {n}-Iwanaga-Gorenstein", vertex=v)
    pd = proj_dim(U, bound)
    injd = inj_dim(U, bound)
    rep = module_to_rep(T, U)
    local_pd = all(proj_dim(M, n).at_most(n) for M in rep.modules.values())
    local_id = all(inj_dim(M, n).at_most(n) for M in rep.modules.values())
    conditions = [pd.at_most(n + 1), pd.exact, injd.at_most(n + 1), injd.exact, local_pd, local_id]
    regular_id = inj_dim(Module.regular(T.algebra), n + 1).at_most(n + 1)
    logger.debug(f"Gorenstein conditions for {U.name}: {conditions}")
    return GorensteinReport(n=n, conditions=conditions, resolution_bound=bound,
                            injective_dimension_bound_met=regular_id)


def bounded_gp_oracle(C: Module, bound: Optional[int] = None) -> GPVerdict:
    """Ext^k(C, A) for k ≤ B; TRUE once the Gorenstein dimension of A is within the checked range"""
    A = C.algebra
    bound = settings.GP_ORACLE_BOUND if bound is None else bound
    if C.dim == 0 or is_selfinjective(A):
        return GPVerdict.TRUE
    regular = Module.regular(A)
    for k in range(1, bound + 1):
        if ext_dim(C, regular, k):
            return GPVerdict.FALSE
    d = gorenstein_dimension(A, bound)
    if d.exact and d.value <= bound:
        return GPVerdict.TRUE
    return GPVerdict.UNKNOWN


def is_gorenstein_projective(T: GradedAlgebra, X: Module,
                             local_oracle: Optional[Callable[[Module], GPVerdict]] = None) -> GPVerdict:
    """In-maps injective and their cokernels Gorenstein projective at every vertex"""
    oracle = local_oracle or bounded_gp_oracle
    rep = module_to_rep(T, X)
    unknown = False
    for v in T.prospecies.quiver.vertices:
        f, _ = in_map(rep, v)
        if f.cols and f.rank() != f.cols:
            return GPVerdict.FALSE
        C, _ = cokernel_module(rep.modules[v], f) if f.cols else (rep.modules[v], None)
        verdict = oracle(C)
        if verdict == GPVerdict.FALSE:
            return GPVerdict.FALSE
        if verdict == GPVerdict.UNKNOWN:
            unknown = True
    if unknown:
        logger.warning(f"Gorenstein projectivity of {X.name} undecided within the oracle bound")
        return GPVerdict.UNKNOWN
    return GPVerdict.TRUE
