# ============================================================================
# FILE: prospecies_entry/engine/modules.py
# ============================================================================
"""Modules, bimodules, Hom spaces, balanced tensor products and dual bases

A left module stores one action matrix per algebra basis element. A right
R-module is a left R^op-module. A bimodule over (L, R) keeps both actions and
is a module over the enveloping algebra L ⊗ R^op when needed.
"""

from itertools import product
from typing import List, Optional, Sequence, Tuple
import logging

from prospecies_entry.core.config import settings
from prospecies_entry.core.dependencies import get_cache, get_rng
from prospecies_entry.core.errors import (
    CharTooSmall, NoSolution, NotGenerating, NotProjective, ShapeMismatch, StructureError,
)
from prospecies_entry.engine.algebra import (
    Algebra, enveloping_algebra, jacobson_radical, subspace_algebra, trace_form_radical,
)
from prospecies_entry.engine.exactla import (
    Matrix, QuotientSpace, Subspace, Vector, block_diagonal, combine, combine_matrices, extend_basis,
    image_basis, is_irreducible_polynomial, kernel_basis, minimal_polynomial, solve_vector, span_basis,
    standard_vector, zero_vector,
)
from prospecies_entry.schemas.reports import IsoVerdict

logger = logging.getLogger(__name__)


class Module:
    """Left module over an algebra"""

    def __init__(self, algebra: Algebra, dim: int, action: List[Matrix], name: str = "M", verify: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.action = action
        self.name = name
        self._generator_actions: Optional[List[Matrix]] = None
        if verify and dim <= settings.VERIFY_MAX_DIM:
            self.verify()

    @classmethod
    def zero(cls, algebra: Algebra) -> "Module":
        return cls(algebra, 0, [Matrix.zeros(algebra.field, 0, 0) for _ in range(algebra.dim)], name="0", verify=False)

    @classmethod
    def regular(cls, algebra: Algebra) -> "Module":
        return cls(algebra, algebra.dim, list(algebra.left_mats), name=f"{algebra.name}_reg", verify=False)

    def act(self, x: Sequence) -> Matrix:
        """Matrix of m ↦ x·m"""
        return combine_matrices(self.field, x, self.action, self.dim, self.dim)

    def generator_actions(self) -> List[Matrix]:
        if self._generator_actions is None:
            self._generator_actions = [self.act(g) for g in self.algebra.generators]
        return self._generator_actions

    def verify(self) -> None:
        """Module axioms on generators; StructureError on failure"""
        A = self.algebra
        if len(self.action) != A.dim or any(m.rows != self.dim or m.cols != self.dim for m in self.action):
            raise StructureError(f"Action matrices of {self.name} have the wrong shape")
        if self.dim == 0:
            return
        if self.act(A.unit) != Matrix.identity(self.field, self.dim):
            raise StructureError(f"Unit does not act as the identity on {self.name}")
        for g, rho in zip(A.generators, self.generator_actions()):
            Lg = A.left_mult(g)
            for b in range(A.dim):
                if rho @ self.action[b] != self.act(Lg.column(b)):
                    raise StructureError(f"{self.name} violates the module axiom", basis=b)

    def dual(self) -> "Module":
        """D(M) = Hom_k(M, k) as a left module over the opposite algebra"""
        return Module(self.algebra.opposite(), self.dim, [m.transpose() for m in self.action],
                      name=f"D({self.name})", verify=False)

    def direct_sum(self, *others: "Module") -> "Module":
        mods = (self,) + others
        action = [block_diagonal(self.field, [m.action[b] for m in mods]) for b in range(self.algebra.dim)]
        return Module(self.algebra, sum(m.dim for m in mods), action, name="⊕".join(m.name for m in mods), verify=False)

    def component_dimension(self, idempotent: Sequence) -> int:
        return self.act(idempotent).rank()

    def dimension_vector(self) -> List[int]:
        return [self.component_dimension(e) for e in self.algebra.idempotents]

    def submodule(self, vectors: Sequence[Sequence]) -> Tuple["Module", Matrix]:
        """Submodule generated by vectors, with its inclusion"""
        basis = span_basis(self.field, vectors, self.dim) if vectors else []
        while basis:
            images = [rho.apply(v) for rho in self.generator_actions() for v in basis]
            new = extend_basis(self.field, basis, images, self.dim)
            if not new:
                break
            basis = basis + new
        S = Subspace(self.field, self.dim, basis, independent=True)
        action = [S.coordinate_matrix(a @ S.matrix) if S.dim else Matrix.zeros(self.field, 0, 0) for a in self.action]
        return Module(self.algebra, S.dim, action, name=f"sub({self.name})", verify=False), S.matrix

    def quotient(self, vectors: Sequence[Sequence]) -> Tuple["Module", Matrix]:
        """M modulo the submodule generated by vectors, with the projection"""
        _, inc = self.submodule(vectors)
        Q = QuotientSpace(self.field, self.dim, inc.columns())
        P, S = Q.projection(), Q.section()
        action = [P @ a @ S for a in self.action]
        return Module(self.algebra, Q.dim, action, name=f"{self.name}/sub", verify=False), P

    def radical_submodule(self) -> List[Vector]:
        """Basis of rad(A)·M"""
        vectors = []
        for r in jacobson_radical(self.algebra):
            vectors.extend(self.act(r).columns())
        return span_basis(self.field, vectors, self.dim) if vectors else []

    def __repr__(self) -> str:
        return f"Module({self.name}, dim={self.dim} over {self.algebra.name})"


class ModuleHom:
    """A matrix from source to target that intertwines the actions"""

    def __init__(self, source: Module, target: Module, matrix: Matrix):
        self.source = source
        self.target = target
        self.matrix = matrix

    def is_homomorphism(self) -> bool:
        return all(self.matrix @ a == b @ self.matrix
                   for a, b in zip(self.source.generator_actions(), self.target.generator_actions()))

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """self ∘ other"""
        return ModuleHom(other.source, self.target, self.matrix @ other.matrix)


# ==================== HOM SPACES ====================

def intertwiners(field, pairs: Sequence[Tuple[Matrix, Matrix]], dim_source: int, dim_target: int) -> List[Matrix]:
    """Basis of {X : X·A = B·X for every pair (A, B)}; unknowns X[i][j] row-major"""
    n, m = dim_target, dim_source
    if n == 0 or m == 0:
        return []
    equations = []
    p = field.modulus
    for A, B in pairs:
        for i in range(n):
            for j in range(m):
                row = [field.zero()] * (n * m)
                for k in range(m):
                    a = A.data[k][j]
                    if a:
                        row[i * m + k] += a
                for k in range(n):
                    b = B.data[i][k]
                    if b:
                        row[k * m + j] -= b
                if any(row):
                    equations.append([x % p for x in row] if p else row)
    if not equations:
        return [Matrix(field, n, m, [[field.one() if i * m + j == idx else field.zero() for j in range(m)] for i in range(n)])
                for idx in range(n * m)]
    basis = kernel_basis(Matrix(field, len(equations), n * m, equations))
    return [Matrix(field, n, m, [v[i * m:(i + 1) * m] for i in range(n)]) for v in basis]


def hom_space(M: Module, N: Module) -> List[Matrix]:
    """Basis of Hom_A(M, N) as dim N × dim M matrices"""
    if M.algebra is not N.algebra:
        raise ShapeMismatch(f"{M.name} and {N.name} live over different algebras")
    return intertwiners(M.field, list(zip(M.generator_actions(), N.generator_actions())), M.dim, N.dim)


def end_algebra(M: Module) -> Algebra:
    return subspace_algebra(M.field, hom_space(M, M), name=f"End({M.name})")


# ==================== BIMODULES ====================

class Bimodule:
    """Left L-, right R-module with commuting actions

    right_action[b] is the matrix of m ↦ m·b_b.
    """

    def __init__(self, left: Algebra, right: Algebra, dim: int, left_action: List[Matrix],
                 right_action: List[Matrix], name: str = "X", verify: bool = True):
        self.left = left
        self.right = right
        self.field = left.field
        self.dim = dim
        self.left_action = left_action
        self.right_action = right_action
        self.name = name
        self._left_module: Optional[Module] = None
        self._right_module: Optional[Module] = None
        if verify and dim <= settings.VERIFY_MAX_DIM:
            self.verify()

    @classmethod
    def regular(cls, A: Algebra) -> "Bimodule":
        return cls(A, A, A.dim, list(A.left_mats), list(A.right_mats()), name=f"{A.name}_bimod", verify=False)

    def act_left(self, x: Sequence) -> Matrix:
        return combine_matrices(self.field, x, self.left_action, self.dim, self.dim)

    def act_right(self, y: Sequence) -> Matrix:
        return combine_matrices(self.field, y, self.right_action, self.dim, self.dim)

    def left_module(self) -> Module:
        if self._left_module is None:
            self._left_module = Module(self.left, self.dim, self.left_action, name=f"{self.name}_L", verify=False)
        return self._left_module

    def right_module(self) -> Module:
        """As a left module over right^op"""
        if self._right_module is None:
            self._right_module = Module(self.right.opposite(), self.dim, self.right_action,
                                        name=f"{self.name}_R", verify=False)
        return self._right_module

    def enveloping_module(self) -> Module:
        E = enveloping_algebra(self.left, self.right)
        action = [la @ rb for la in self.left_action for rb in self.right_action]
        return Module(E, self.dim, action, name=f"{self.name}_env", verify=False)

    def verify(self) -> None:
        if len(self.left_action) != self.left.dim or len(self.right_action) != self.right.dim:
            raise StructureError(f"Bimodule {self.name} has the wrong number of action matrices")
        self.left_module().verify()
        self.right_module().verify()
        for g in self.left.generators:
            lg = self.act_left(g)
            for h in self.right.generators:
                rh = self.act_right(h)
                if lg @ rh != rh @ lg:
                    raise StructureError(f"Left and right actions of {self.name} do not commute")

    def direct_sum(self, *others: "Bimodule") -> "Bimodule":
        mods = (self,) + others
        la = [block_diagonal(self.field, [m.left_action[a] for m in mods]) for a in range(self.left.dim)]
        ra = [block_diagonal(self.field, [m.right_action[b] for m in mods]) for b in range(self.right.dim)]
        return Bimodule(self.left, self.right, sum(m.dim for m in mods), la, ra,
                        name="⊕".join(m.name for m in mods), verify=False)

    def __repr__(self) -> str:
        return f"Bimodule({self.name}, dim={self.dim}, {self.left.name}-{self.right.name})"


def bimodule_hom_space(X: Bimodule, Y: Bimodule) -> List[Matrix]:
    """Basis of bimodule maps X → Y"""
    if X.left is not Y.left or X.right is not Y.right:
        raise ShapeMismatch(f"{X.name} and {Y.name} are bimodules over different algebras")
    pairs = [(X.act_left(g), Y.act_left(g)) for g in X.left.generators]
    pairs += [(X.act_right(h), Y.act_right(h)) for h in X.right.generators]
    return intertwiners(X.field, pairs, X.dim, Y.dim)


# ==================== TENSOR PRODUCTS ====================

class TensorSpace:
    """X ⊗_R Y for an L–R bimodule X and a left R-module (or R–S bimodule) Y

    Realised as the quotient of X ⊗_k Y by the columns of
    kron(ρ_g, I) − kron(I, λ_g) over the generators g of R.
    """

    def __init__(self, X: Bimodule, Y):
        R = X.right
        is_bimodule = isinstance(Y, Bimodule)
        base = Y.left if is_bimodule else Y.algebra
        if base is not R:
            raise ShapeMismatch(f"Cannot tensor {X.name} with {Y.name} over different algebras")
        self.X = X
        self.Y = Y
        self.field = X.field
        self.dx = X.dim
        self.dy = Y.dim
        self._y_left = Y.act_left if is_bimodule else Y.act
        relations: List[Vector] = []
        for g in R.generators:
            rho = X.act_right(g)
            lam = self._y_left(g)
            relations.extend(self._balancing_columns(rho, lam))
        self.quotient = QuotientSpace(self.field, self.dx * self.dy, relations)
        self.dim = self.quotient.dim
        self.left_action = [self._outer(X.left_action[a], None) for a in range(X.left.dim)]
        self.right_action = [self._outer(None, Y.right_action[b]) for b in range(Y.right.dim)] if is_bimodule else None
        self._module: Optional[Module] = None
        self._bimodule: Optional[Bimodule] = None
        logger.debug(f"Tensor {X.name}⊗{Y.name}: {self.dx * self.dy} -> {self.dim}")

    def _balancing_columns(self, rho: Matrix, lam: Matrix) -> List[Vector]:
        cols = []
        p = self.field.modulus
        for x in range(self.dx):
            rx = rho.column(x)
            for y in range(self.dy):
                v = zero_vector(self.field, self.dx * self.dy)
                for i, a in enumerate(rx):
                    if a:
                        v[i * self.dy + y] += a
                for k in range(self.dy):
                    b = lam.data[k][y]
                    if b:
                        v[x * self.dy + k] -= b
                if any(v):
                    cols.append([c % p for c in v] if p else v)
        return cols

    def raw(self, x: Sequence, y: Sequence) -> Vector:
        """x⊗y in X ⊗_k Y"""
        p = self.field.modulus
        return [(a * b) % p if p else a * b for a in x for b in y]

    def pure(self, x: Sequence, y: Sequence) -> Vector:
        """Class of x⊗y"""
        return self.quotient.coords(self.raw(x, y))

    def lift_indices(self) -> List[Tuple[int, int]]:
        """Pure basis tensors (x, y) representing the basis of the quotient"""
        return [divmod(j, self.dy) for j in self.quotient.free]

    def _outer(self, on_x: Optional[Matrix], on_y: Optional[Matrix]) -> Matrix:
        cols = []
        for x, y in self.lift_indices():
            vx = on_x.column(x) if on_x is not None else standard_vector(self.field, self.dx, x)
            vy = on_y.column(y) if on_y is not None else standard_vector(self.field, self.dy, y)
            cols.append(self.pure(vx, vy))
        return Matrix.from_columns(self.field, cols, self.dim)

    def map_right(self, f: Matrix, target: "TensorSpace") -> Matrix:
        """id ⊗ f into target = X ⊗ Y'"""
        cols = [target.pure(standard_vector(self.field, self.dx, x), f.column(y)) for x, y in self.lift_indices()]
        return Matrix.from_columns(self.field, cols, target.dim)

    def map_left(self, g: Matrix, target: "TensorSpace") -> Matrix:
        """g ⊗ id into target = X' ⊗ Y"""
        cols = [target.pure(g.column(x), standard_vector(self.field, self.dy, y)) for x, y in self.lift_indices()]
        return Matrix.from_columns(self.field, cols, target.dim)

    def module(self) -> Module:
        """As a left module over X.left"""
        if self._module is None:
            self._module = Module(self.X.left, self.dim, self.left_action,
                                  name=f"{self.X.name}⊗{self.Y.name}", verify=False)
        return self._module

    def bimodule(self) -> Bimodule:
        if self.right_action is None:
            raise ShapeMismatch("Right factor is not a bimodule")
        if self._bimodule is None:
            self._bimodule = Bimodule(self.X.left, self.Y.right, self.dim, self.left_action, self.right_action,
                                      name=f"{self.X.name}⊗{self.Y.name}", verify=False)
        return self._bimodule


def tensor_over(X: Bimodule, Y) -> TensorSpace:
    """Cached X ⊗_R Y"""
    return get_cache().get_tensor(X, Y, lambda: TensorSpace(X, Y))


# ==================== DUALS ====================

class DualBimodule(Bimodule):
    """Hom-dual of an L–R bimodule X, an R–L bimodule

    side="right": Hom_{R^op}(X, R), (r·f·l)(x) = r·f(l·x).
    side="left":  Hom_L(X, L),      (r·f·l)(x) = f(x·r)·l.
    Each basis element is stored as a functional matrix.
    """

    def __init__(self, source: Bimodule, side: str):
        L, R = source.left, source.right
        field = source.field
        if side == "right":
            pairs = [(source.act_right(h), R.right_mult(h)) for h in R.generators]
            functionals = intertwiners(field, pairs, source.dim, R.dim)
        elif side == "left":
            pairs = [(source.act_left(g), L.left_mult(g)) for g in L.generators]
            functionals = intertwiners(field, pairs, source.dim, L.dim)
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side}")
        self.source = source
        self.side = side
        self.functionals = functionals
        self.span = Subspace(field, (R.dim if side == "right" else L.dim) * source.dim,
                             [f.flatten() for f in functionals], independent=True)
        n = len(functionals)

        def induced(op) -> Matrix:
            return Matrix.from_columns(field, [self.coords(op(f)) for f in functionals], n)

        if side == "right":
            left_action = [induced(lambda f, r=r: R.left_mats[r] @ f) for r in range(R.dim)]
            right_action = [induced(lambda f, l=l: f @ source.left_action[l]) for l in range(L.dim)]
        else:
            left_action = [induced(lambda f, r=r: f @ source.right_action[r]) for r in range(R.dim)]
            right_action = [induced(lambda f, l=l: L.right_mats()[l] @ f) for l in range(L.dim)]
        super().__init__(R, L, n, left_action, right_action,
                         name=f"{'D' if side == 'right' else 'D*'}({source.name})", verify=False)

    def coords(self, functional: Matrix) -> Vector:
        return self.span.coords(functional.flatten())

    def functional(self, coords: Sequence) -> Matrix:
        f = self.functionals[0]
        return combine_matrices(self.field, coords, self.functionals, f.rows, f.cols)

    def evaluate(self, coords: Sequence, x: Sequence) -> Vector:
        """f(x) for the element with the given coordinates"""
        return self.functional(coords).apply(x)


def right_dual(X: Bimodule) -> DualBimodule:
    """Hom_{R^op}(X, R)"""
    return get_cache().get_dual(X, "right", lambda: DualBimodule(X, "right"))


def left_dual(X: Bimodule) -> DualBimodule:
    """Hom_L(X, L)"""
    return get_cache().get_dual(X, "left", lambda: DualBimodule(X, "left"))


# ==================== DUAL BASES ====================

class DualBasis:
    """Elements x_i and functionals f_i with p = Σ f_i(p)·x_i"""

    def __init__(self, module: Module, elements: List[Vector], functionals: List[Matrix]):
        self.module = module
        self.elements = elements
        self.functionals = functionals

    def reconstruct(self, p: Sequence) -> Vector:
        M = self.module
        out = zero_vector(M.field, M.dim)
        for x, f in zip(self.elements, self.functionals):
            out = combine(M.field, [M.field.one(), M.field.one()], [out, M.act(f.apply(p)).apply(x)], M.dim)
        return out


def _generates(M: Module, generators: Sequence[Sequence]) -> bool:
    vectors = [a.apply(x) for a in M.action for x in generators]
    return bool(vectors) and len(span_basis(M.field, vectors, M.dim)) == M.dim


def dual_basis(P: Module, generators: Optional[Sequence[Sequence]] = None) -> DualBasis:
    """Solve Σ act(f_i(p))·x_i = p with each f_i in Hom_A(P, A)

    NotProjective when unsolvable; NotGenerating when the elements do not generate.
    """
    if generators is None:
        return get_cache().get_dual_basis(P, lambda: _solve_dual_basis(P, None))
    return _solve_dual_basis(P, generators)


def _solve_dual_basis(P: Module, generators: Optional[Sequence[Sequence]]) -> DualBasis:
    field, A = P.field, P.algebra
    if P.dim == 0:
        return DualBasis(P, [], [])
    xs = [list(x) for x in generators] if generators is not None else [
        standard_vector(field, P.dim, i) for i in range(P.dim)]
    if not _generates(P, xs):
        raise NotGenerating(f"Elements do not generate {P.name}")
    homs = hom_space(P, Module.regular(A))
    if not homs:
        raise NotProjective(f"{P.name} has no nonzero maps to the regular module", module=P.name)
    columns = []
    unknowns = []
    for i, x in enumerate(xs):
        for j, h in enumerate(homs):
            T = Matrix.from_columns(field, [P.act(h.column(k)).apply(x) for k in range(P.dim)], P.dim)
            columns.append(T.flatten())
            unknowns.append((i, j))
    system = Matrix.from_columns(field, columns, P.dim * P.dim)
    try:
        c = solve_vector(system, Matrix.identity(field, P.dim).flatten())
    except NoSolution:
        logger.debug(f"No dual basis for {P.name}")
        raise NotProjective(f"{P.name} is not projective", module=P.name)
    functionals = []
    for i in range(len(xs)):
        coeffs = [c[k] for k, (ii, _) in enumerate(unknowns) if ii == i]
        functionals.append(combine_matrices(field, coeffs, homs, A.dim, P.dim))
    result = DualBasis(P, xs, functionals)
    for k in range(P.dim):
        e = standard_vector(field, P.dim, k)
        if result.reconstruct(e) != e:
            raise StructureError(f"Dual basis of {P.name} fails to reconstruct")
    return result


def casimir(X: Bimodule, generators: Optional[Sequence[Sequence]] = None) -> Tuple[TensorSpace, Vector]:
    """Σ x_i ⊗ f_i in X ⊗_R Hom_{R^op}(X, R), for the right dual basis of X"""
    db = dual_basis(X.right_module(), generators)
    D = right_dual(X)
    T = tensor_over(X, D)
    total = zero_vector(X.field, T.dim)
    for x, f in zip(db.elements, db.functionals):
        total = combine(X.field, [X.field.one(), X.field.one()], [total, T.pure(x, D.coords(f))], T.dim)
    return T, total


class HomTensorIso:
    """Hom_L(X, L) ⊗_L N → Hom_L(X, N), φ⊗n ↦ (x ↦ φ(x)·n), and its inverse"""

    def __init__(self, tensor: TensorSpace, hom_basis: List[Matrix], forward: Matrix, inverse: Matrix):
        self.tensor = tensor
        self.hom_basis = hom_basis
        self.forward = forward
        self.inverse = inverse


def hom_tensor_iso(X: Bimodule, N: Module) -> HomTensorIso:
    """Certified inverse pair; StructureError if the composites are not identities"""
    if N.algebra is not X.left:
        raise ShapeMismatch(f"{N.name} is not a module over {X.left.name}")
    field = X.field
    D = left_dual(X)
    T = tensor_over(D, N)
    H = hom_space(X.left_module(), N)
    span = Subspace(field, N.dim * X.dim, [h.flatten() for h in H], independent=True)

    forward_cols = []
    for f_idx, n_idx in T.lift_indices():
        phi = D.functionals[f_idx]
        g = Matrix.from_columns(field, [N.act(phi.column(x)).column(n_idx) for x in range(X.dim)], N.dim)
        forward_cols.append(span.coords(g.flatten()))
    forward = Matrix.from_columns(field, forward_cols, len(H))

    db = dual_basis(X.left_module())
    inverse_cols = []
    for psi in H:
        total = zero_vector(field, T.dim)
        for x, f in zip(db.elements, db.functionals):
            total = combine(field, [field.one(), field.one()], [total, T.pure(D.coords(f), psi.apply(x))], T.dim)
        inverse_cols.append(total)
    inverse = Matrix.from_columns(field, inverse_cols, T.dim)

    if forward @ inverse != Matrix.identity(field, len(H)) or inverse @ forward != Matrix.identity(field, T.dim):
        raise StructureError(f"Hom-tensor map for {X.name} and {N.name} is not invertible")
    logger.debug(f"Hom-tensor isomorphism certified, dim {T.dim}")
    return HomTensorIso(T, H, forward, inverse)


# ==================== ISOMORPHISM AND DECOMPOSITION ====================

class IsoResult:
    """Verdict with an invertible certificate when TRUE"""

    def __init__(self, verdict: IsoVerdict, certificate: Optional[Matrix] = None, method: str = ""):
        self.verdict = verdict
        self.certificate = certificate
        self.method = method

    def __bool__(self) -> bool:
        return self.verdict == IsoVerdict.TRUE


def _top_dimension(M: Module) -> Optional[int]:
    try:
        return M.dim - len(M.radical_submodule())
    except CharTooSmall:
        return None


def is_isomorphic(M: Module, N: Module) -> IsoResult:
    """Search Hom(M, N) for an invertible element

    Dimension, component, top and Hom-dimension mismatches are certified FALSE.
    Small Hom spaces are walked on a dehomogenised grid whose exhaustion is a
    certified FALSE when the grid has more than dim M values per coordinate;
    otherwise random combinations are tried and failure is PROBABLY_NOT.
    """
    if M.algebra is not N.algebra:
        raise ShapeMismatch(f"{M.name} and {N.name} live over different algebras")
    field = M.field
    if M.dim != N.dim:
        return IsoResult(IsoVerdict.FALSE, method="dimension")
    if M.dim == 0:
        return IsoResult(IsoVerdict.TRUE, Matrix.zeros(field, 0, 0), method="zero")
    if M.dimension_vector() != N.dimension_vector():
        return IsoResult(IsoVerdict.FALSE, method="dimension-vector")
    top_m, top_n = _top_dimension(M), _top_dimension(N)
    if top_m is not None and top_n is not None and top_m != top_n:
        return IsoResult(IsoVerdict.FALSE, method="top")
    H = hom_space(M, N)
    if len(H) != len(hom_space(M, M)) or not H:
        return IsoResult(IsoVerdict.FALSE, method="hom-dimension")

    m, n = len(H), M.dim
    values = field.grid_values(n + 1)
    grid_size = sum(len(values) ** (m - k - 1) for k in range(m))
    if m <= settings.ISO_EXHAUSTIVE_MAX_HOM_DIM and grid_size <= settings.ISO_GRID_CAP:
        for k in range(m):
            for rest in product(values, repeat=m - k - 1):
                coeffs = [field.zero()] * k + [field.one()] + list(rest)
                X = combine_matrices(field, coeffs, H, N.dim, M.dim)
                if X.is_invertible():
                    return IsoResult(IsoVerdict.TRUE, X, method="grid")
        if len(values) >= n + 1:
            return IsoResult(IsoVerdict.FALSE, method="grid")
        logger.warning(f"Grid over {field.label} too small to certify non-isomorphism of {M.name}, {N.name}")
        return IsoResult(IsoVerdict.PROBABLY_NOT, method="grid")

    rng = get_rng()
    for _ in range(settings.ISO_RANDOM_SAMPLES):
        coeffs = [field.random_element(rng, settings.RANDOM_COEFFICIENT_RANGE) for _ in H]
        X = combine_matrices(field, coeffs, H, N.dim, M.dim)
        if X.is_invertible():
            return IsoResult(IsoVerdict.TRUE, X, method="random")
    logger.warning(f"No isomorphism {M.name} -> {N.name} found in {settings.ISO_RANDOM_SAMPLES} samples")
    return IsoResult(IsoVerdict.PROBABLY_NOT, method="random")


def is_isomorphic_bimodules(X: Bimodule, Y: Bimodule) -> IsoResult:
    """Isomorphism as modules over the enveloping algebra"""
    return is_isomorphic(X.enveloping_module(), Y.enveloping_module())


def is_indecomposable(M: Module) -> bool:
    """End(M) local: the semisimple quotient D = End/rad is a division algebra

    An element of D whose minimal polynomial factors gives zero divisors, hence
    a non-trivial idempotent of End(M). A commutative D generated by a single
    element with irreducible minimal polynomial is a field.
    """
    if M.dim == 0:
        return False
    E = end_algebra(M)
    rad = trace_form_radical(E)
    q = E.dim - len(rad)
    if q == 1:
        return True
    field = M.field
    quotient = QuotientSpace(field, E.dim, rad)
    P, S = quotient.projection(), quotient.section()
    D = [P @ E.left_mult(S.column(i)) @ S for i in range(q)]
    rng = get_rng()
    samples = [standard_vector(field, q, i) for i in range(q)]
    samples += [[field.random_element(rng, settings.RANDOM_COEFFICIENT_RANGE) for _ in range(q)]
                for _ in range(settings.ISO_RANDOM_SAMPLES)]
    generates = False
    for c in samples:
        if not any(c):
            continue
        mu = minimal_polynomial(combine_matrices(field, c, D, q, q))
        if not is_irreducible_polynomial(field, mu):
            return False
        generates = generates or len(mu) == q + 1
    commutative = all(D[a] @ D[b] == D[b] @ D[a] for a in range(q) for b in range(a + 1, q))
    if not (commutative and generates):
        logger.warning(f"Indecomposability of {M.name} is not certified: End/rad is not a simple field extension")
    return True


# ==================== PROJECTIVES ====================

def indecomposable_projective(A: Algebra, a: int) -> Tuple[Module, Subspace]:
    """A·e_a with its basis inside A"""
    cache = getattr(A, "_projectives", None)
    if cache is None:
        cache = {}
        A._projectives = cache
    if a not in cache:
        S = Subspace(A.field, A.dim, image_basis(A.right_mult(A.idempotents[a])), independent=True)
        action = [S.coordinate_matrix(L @ S.matrix) for L in A.left_mats]
        cache[a] = (Module(A, S.dim, action, name=f"P[{A.idempotent_labels[a]}]", verify=False), S)
    return cache[a]


def simple_module(A: Algebra, a: int) -> Module:
    """Top of A·e_a"""
    P, _ = indecomposable_projective(A, a)
    S, _ = P.quotient(P.radical_submodule())
    S.name = f"S[{A.idempotent_labels[a]}]"
    return S


class ProjectiveCover:
    """π: P → M with P = ⊕ A·e_a, one summand per top generator"""

    def __init__(self, module: Module, projective: Module, matrix: Matrix, summands: List[int], tops: List[Vector]):
        self.module = module
        self.projective = projective
        self.matrix = matrix
        self.summands = summands
        self.tops = tops

    def kernel(self) -> Tuple[Module, Matrix]:
        return self.projective.submodule(kernel_basis(self.matrix))


def projective_cover(M: Module) -> ProjectiveCover:
    """Cover of a module over a split basic algebra with primitive stored idempotents"""
    A, field = M.algebra, M.field
    if M.dim == 0:
        return ProjectiveCover(M, Module.zero(A), Matrix.zeros(field, 0, 0), [], [])
    rad = M.radical_submodule()
    summands, tops, blocks, columns = [], [], [], []
    for a, e in enumerate(A.idempotents):
        Ea = M.act(e)
        local_rad = span_basis(field, [Ea.apply(v) for v in rad], M.dim) if rad else []
        local = image_basis(Ea)
        for t in extend_basis(field, local_rad, local, M.dim):
            Pa, S = indecomposable_projective(A, a)
            summands.append(a)
            tops.append(t)
            blocks.append(Pa)
            columns.extend(M.act(y).apply(t) for y in S.basis)
    projective = blocks[0].direct_sum(*blocks[1:]) if blocks else Module.zero(A)
    projective.name = f"P({M.name})"
    pi = Matrix.from_columns(field, columns, M.dim)
    if pi.rank() != M.dim:
        raise StructureError(f"Projective cover of {M.name} is not surjective")
    return ProjectiveCover(M, projective, pi, summands, tops)


def is_projective(M: Module) -> bool:
    return projective_cover(M).projective.dim == M.dim


def factors_through_projective(f: ModuleHom) -> bool:
    """f lifts along the projective cover of its target"""
    M, N = f.source, f.target
    if f.matrix.is_zero():
        return True
    if not f.is_homomorphism():
        raise StructureError(f"Matrix {M.name} -> {N.name} is not a module homomorphism")
    cover = projective_cover(N)
    G = hom_space(M, cover.projective)
    if not G:
        return False
    system = Matrix.from_columns(M.field, [(cover.matrix @ g).flatten() for g in G], N.dim * M.dim)
    try:
        solve_vector(system, f.matrix.flatten())
        return True
    except NoSolution:
        return False


def stable_hom_dim(M: Module, N: Module) -> int:
    """dim Hom(M, N) minus the maps factoring through a projective"""
    H = hom_space(M, N)
    if not H:
        return 0
    cover = projective_cover(N)
    G = hom_space(M, cover.projective)
    if not G:
        return len(H)
    factoring = Matrix.from_columns(M.field, [(cover.matrix @ g).flatten() for g in G], N.dim * M.dim)
    return len(H) - factoring.rank()


# ==================== KERNELS AND COKERNELS ====================

def kernel_module(M: Module, f: Matrix) -> Tuple[Module, Matrix]:
    return M.submodule(kernel_basis(f))


def image_module(N: Module, f: Matrix) -> Tuple[Module, Matrix]:
    return N.submodule(image_basis(f))


def cokernel_module(N: Module, f: Matrix) -> Tuple[Module, Matrix]:
    return N.quotient(image_basis(f))
