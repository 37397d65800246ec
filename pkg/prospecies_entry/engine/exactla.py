# ============================================================================
# FILE: prospecies_entry/engine/exactla.py
# ============================================================================
"""Exact linear algebra over Q (fractions) and F_p (integers mod p)

Matrices are dense row-major lists; elimination skips zero entries so the sparse
systems produced by Hom and tensor computations stay cheap.
"""

from enum import Enum
from fractions import Fraction
from random import Random
from typing import Any, Iterable, List, Optional, Sequence, Tuple
import logging

from pydantic import BaseModel, ConfigDict, Field, model_validator
import sympy as sp

from prospecies_entry.core.errors import NoSolution

logger = logging.getLogger(__name__)

Vector = List[Any]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldKind(str, Enum):
    """Ground field families"""
    RATIONALS = "Q"
    PRIME = "F"


class FieldSpec(BaseModel):
    """The ground field k: Q or F_p"""
    model_config = ConfigDict(frozen=True)

    kind: FieldKind = Field(FieldKind.RATIONALS, description="Q or a prime field")
    p: Optional[int] = Field(None, description="Characteristic of the prime field")

    @model_validator(mode='after')
    def validate_characteristic(self):
        """p must be given and prime exactly for prime fields"""
        if self.kind == FieldKind.PRIME:
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"F<p> needs a prime p, got {self.p}")
        elif self.p is not None:
            raise ValueError("Q takes no characteristic")
        return self

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(kind=FieldKind.RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "FieldSpec":
        return cls(kind=FieldKind.PRIME, p=p)

    @property
    def modulus(self) -> int:
        """p for F_p, 0 for Q"""
        return self.p if self.kind == FieldKind.PRIME else 0

    @property
    def label(self) -> str:
        return "Q" if self.kind == FieldKind.RATIONALS else f"F{self.p}"

    def zero(self):
        return Fraction(0) if not self.modulus else 0

    def one(self):
        return Fraction(1) if not self.modulus else 1

    def coerce(self, x: Any):
        """Bring an int, Fraction or numeric string into the field"""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if not self.modulus:
            return Fraction(x)
        p = self.modulus
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} is not defined in F{p}")
            return (x.numerator * pow(x.denominator, p - 2, p)) % p
        return int(x) % p

    def inv(self, x: Any):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if not self.modulus:
            return Fraction(1) / x
        return pow(int(x), self.modulus - 2, self.modulus)

    def render(self, x: Any) -> str:
        if not self.modulus:
            return str(Fraction(x))
        return str(int(x) % self.modulus)

    def random_element(self, rng: Random, bound: int):
        if not self.modulus:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.modulus)

    def grid_values(self, n: int) -> List[Any]:
        """n distinct field elements 0, 1, ... (fewer when p < n)"""
        if self.modulus:
            n = min(n, self.modulus)
        return [self.coerce(v) for v in range(n)]


# ==================== MATRICES ====================

class Matrix:
    """Dense matrix over a FieldSpec"""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: Optional[List[List[Any]]] = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            z = field.zero()
            data = [[z] * cols for _ in range(rows)]
        self.data = data

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        m = cls(field, n, n)
        one = field.one()
        for i in range(n):
            m.data[i][i] = one
        return m

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        data = [[field.coerce(x) for x in r] for r in rows]
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence[Any]], rows: Optional[int] = None) -> "Matrix":
        nrows = rows if rows is not None else (len(columns[0]) if columns else 0)
        data = [[columns[j][i] for j in range(len(columns))] for i in range(nrows)]
        return cls(field, nrows, len(columns), data)

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, [list(r) for r in self.data])

    def __getitem__(self, idx: Tuple[int, int]):
        i, j = idx
        return self.data[i][j]

    def column(self, j: int) -> Vector:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def row(self, i: int) -> Vector:
        return list(self.data[i])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def apply(self, v: Sequence[Any]) -> Vector:
        """Matrix times column vector"""
        p = self.field.modulus
        z = self.field.zero()
        out = []
        for r in self.data:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s += a * b
            out.append(s % p if p else s)
        return out

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        p = self.field.modulus
        z = self.field.zero()
        odata = other.data
        result = []
        for r in self.data:
            out = [z] * other.cols
            for k, a in enumerate(r):
                if a:
                    brow = odata[k]
                    for j, b in enumerate(brow):
                        if b:
                            out[j] += a * b
            if p:
                out = [x % p for x in out]
            result.append(out)
        return Matrix(self.field, self.rows, other.cols, result)

    def __add__(self, other: "Matrix") -> "Matrix":
        p = self.field.modulus
        data = [[(a + b) % p if p else a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        p = self.field.modulus
        data = [[(a - b) % p if p else a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix(self.field, self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        return self.scale(self.field.coerce(-1))

    def scale(self, s: Any) -> "Matrix":
        p = self.field.modulus
        data = [[(a * s) % p if p else a * s for a in r] for r in self.data]
        return Matrix(self.field, self.rows, self.cols, data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and all(
            a == b for r, s in zip(self.data, other.data) for a, b in zip(r, s))

    def __hash__(self):
        return id(self)

    def is_zero(self) -> bool:
        return not any(a for r in self.data for a in r)

    def hstack(self, *others: "Matrix") -> "Matrix":
        data = [list(r) for r in self.data]
        cols = self.cols
        for o in others:
            for i in range(self.rows):
                data[i].extend(o.data[i])
            cols += o.cols
        return Matrix(self.field, self.rows, cols, data)

    def vstack(self, *others: "Matrix") -> "Matrix":
        data = [list(r) for r in self.data]
        rows = self.rows
        for o in others:
            data.extend(list(r) for r in o.data)
            rows += o.rows
        return Matrix(self.field, rows, self.cols, data)

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(row_indices), len(col_indices),
                      [[self.data[i][j] for j in col_indices] for i in row_indices])

    def flatten(self) -> Vector:
        """Row-major entries"""
        return [a for r in self.data for a in r]

    def rref(self) -> Tuple["Matrix", List[int]]:
        rows = [list(r) for r in self.data]
        pivots = _rref_rows(rows, self.cols, self.field)
        return Matrix(self.field, self.rows, self.cols, rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> List[Vector]:
        return kernel_basis(self)

    def image_basis(self) -> List[Vector]:
        return image_basis(self)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise NoSolution("non-square matrix has no inverse")
        if self.rank() != self.rows:
            raise NoSolution("singular matrix")
        return solve_right(self, Matrix.identity(self.field, self.rows))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def to_lists(self) -> List[List[str]]:
        return [[self.field.render(a) for a in r] for r in self.data]

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, {self.field.label})"


def _rref_rows(rows: List[List[Any]], ncols: int, field: FieldSpec) -> List[int]:
    """In-place reduced row echelon form on the first ncols columns; leftmost pivots"""
    p = field.modulus
    pivots: List[int] = []
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if p:
            prow = [(x * inv) % p for x in rows[r]]
        else:
            prow = [x * inv for x in rows[r]]
        rows[r] = prow
        nz = [(j, prow[j]) for j in range(c, len(prow)) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                if p:
                    for j, v in nz:
                        row[j] = (row[j] - f * v) % p
                else:
                    for j, v in nz:
                        row[j] = row[j] - f * v
        pivots.append(c)
        r += 1
    return pivots


# ==================== CORE OPERATIONS ====================

def kernel_basis(A: Matrix) -> List[Vector]:
    """Basis of {v : Av = 0}, one vector per free column"""
    rows = [list(r) for r in A.data]
    pivots = _rref_rows(rows, A.cols, A.field)
    pivot_set = set(pivots)
    free = [j for j in range(A.cols) if j not in pivot_set]
    z, one = A.field.zero(), A.field.one()
    p = A.field.modulus
    basis = []
    for f in free:
        x = [z] * A.cols
        x[f] = one
        for row_idx, pc in enumerate(pivots):
            v = rows[row_idx][f]
            if v:
                x[pc] = (-v) % p if p else -v
        basis.append(x)
    return basis


def solve_right(A: Matrix, B: Matrix) -> Matrix:
    """X with AX = B, the reduced-echelon particular solution; NoSolution otherwise"""
    if A.rows != B.rows:
        raise ValueError("solve_right needs A.rows == B.rows")
    rows = [list(a) + list(b) for a, b in zip(A.data, B.data)]
    pivots = _rref_rows(rows, A.cols, A.field)
    for i in range(len(pivots), A.rows):
        if any(rows[i][A.cols:]):
            raise NoSolution("inconsistent linear system")
    X = Matrix.zeros(A.field, A.cols, B.cols)
    for row_idx, pc in enumerate(pivots):
        X.data[pc] = list(rows[row_idx][A.cols:])
    return X


def solve_vector(A: Matrix, b: Sequence[Any]) -> Vector:
    """x with Ax = b"""
    return solve_right(A, Matrix.from_columns(A.field, [list(b)], A.rows)).column(0)


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product; entry (i,j)⊗(k,l) sits at (i·B.rows+k, j·B.cols+l)"""
    p = A.field.modulus
    z = A.field.zero()
    rows = A.rows * B.rows
    cols = A.cols * B.cols
    data = [[z] * cols for _ in range(rows)]
    for i, arow in enumerate(A.data):
        for j, a in enumerate(arow):
            if not a:
                continue
            for k, brow in enumerate(B.data):
                target = data[i * B.rows + k]
                off = j * B.cols
                for l, b in enumerate(brow):
                    if b:
                        target[off + l] = (a * b) % p if p else a * b
    return Matrix(A.field, rows, cols, data)


def rank(A: Matrix) -> int:
    return A.rank()


def image_basis(A: Matrix) -> List[Vector]:
    """Columns of A at the pivot positions: a basis of the column space"""
    rows = [list(r) for r in A.data]
    pivots = _rref_rows(rows, A.cols, A.field)
    return [A.column(j) for j in pivots]


def span_basis(field: FieldSpec, vectors: Sequence[Sequence[Any]], dim: int) -> List[Vector]:
    """Independent subset (earliest first) spanning the same space"""
    if not vectors:
        return []
    return image_basis(Matrix.from_columns(field, [list(v) for v in vectors], dim))


def extend_basis(field: FieldSpec, basis: Sequence[Sequence[Any]], candidates: Sequence[Sequence[Any]], dim: int) -> List[Vector]:
    """Candidates that extend an independent set to the span of both"""
    if not candidates:
        return []
    cols = [list(v) for v in basis] + [list(v) for v in candidates]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(dim)]
    pivots = _rref_rows(rows, len(cols), field)
    return [cols[j] for j in pivots if j >= len(basis)]


# ==================== VECTORS ====================

def zero_vector(field: FieldSpec, n: int) -> Vector:
    return [field.zero()] * n


def standard_vector(field: FieldSpec, n: int, i: int) -> Vector:
    v = zero_vector(field, n)
    v[i] = field.one()
    return v


def add_vectors(field: FieldSpec, u: Sequence[Any], v: Sequence[Any]) -> Vector:
    p = field.modulus
    return [(a + b) % p if p else a + b for a, b in zip(u, v)]


def scale_vector(field: FieldSpec, s: Any, v: Sequence[Any]) -> Vector:
    p = field.modulus
    return [(s * a) % p if p else s * a for a in v]


def combine(field: FieldSpec, coefficients: Sequence[Any], vectors: Sequence[Sequence[Any]], n: int) -> Vector:
    """Σ c_k v_k"""
    p = field.modulus
    out = zero_vector(field, n)
    for c, v in zip(coefficients, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return [x % p for x in out] if p else out


def combine_matrices(field: FieldSpec, coefficients: Sequence[Any], matrices: Sequence[Matrix], rows: int, cols: int) -> Matrix:
    """Σ c_k M_k"""
    out = Matrix.zeros(field, rows, cols)
    p = field.modulus
    for c, m in zip(coefficients, matrices):
        if not c:
            continue
        for i, r in enumerate(m.data):
            target = out.data[i]
            for j, a in enumerate(r):
                if a:
                    target[j] += c * a
    if p:
        out.data = [[x % p for x in r] for r in out.data]
    return out


def is_zero_vector(v: Iterable[Any]) -> bool:
    return not any(v)


def block_diagonal(field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = Matrix.zeros(field, rows, cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out.data[r0 + i][c0:c0 + b.cols] = list(b.data[i])
        r0 += b.rows
        c0 += b.cols
    return out


# ==================== SUBSPACES AND QUOTIENTS ====================

class Subspace:
    """A subspace of k^n with a fixed basis and exact coordinates"""

    def __init__(self, field: FieldSpec, ambient_dim: int, vectors: Sequence[Sequence[Any]], independent: bool = False):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis: List[Vector] = [list(v) for v in vectors] if independent else span_basis(field, vectors, ambient_dim)
        self.dim = len(self.basis)
        self.matrix = Matrix.from_columns(field, self.basis, ambient_dim)
        self._rows: List[int] = []
        self._left: Optional[Matrix] = None
        if self.dim:
            _, self._rows = self.matrix.transpose().rref()
            self._left = self.matrix.submatrix(self._rows, list(range(self.dim))).inverse()

    def coords(self, v: Sequence[Any], check: bool = True) -> Vector:
        """Coordinates of v in the basis; NoSolution when v is outside"""
        if not self.dim:
            if check and any(v):
                raise NoSolution("vector outside the zero subspace")
            return []
        c = self._left.apply([v[i] for i in self._rows])
        if check and self.matrix.apply(c) != list(v):
            raise NoSolution("vector outside the subspace")
        return c

    def contains(self, v: Sequence[Any]) -> bool:
        try:
            self.coords(v)
            return True
        except NoSolution:
            return False

    def coordinate_matrix(self, M: Matrix) -> Matrix:
        """Columns of M rewritten in the basis"""
        return Matrix.from_columns(self.field, [self.coords(c) for c in M.columns()], self.dim)


class QuotientSpace:
    """k^n modulo the span of relation vectors

    Surviving coordinates are the non-pivot columns of the reduced relations, so the
    column order decides which basis vectors are eliminated.
    """

    def __init__(self, field: FieldSpec, ambient_dim: int, relations: Sequence[Sequence[Any]]):
        self.field = field
        self.ambient_dim = ambient_dim
        rows = [list(v) for v in relations if any(v)]
        self.pivots = _rref_rows(rows, ambient_dim, field)
        self.relation_rows = rows[:len(self.pivots)]
        pivot_set = set(self.pivots)
        self.free: List[int] = [j for j in range(ambient_dim) if j not in pivot_set]
        self.dim = len(self.free)
        self._position = {j: k for k, j in enumerate(self.free)}

    def reduce(self, v: Sequence[Any]) -> Vector:
        p = self.field.modulus
        w = list(v)
        for row, pc in zip(self.relation_rows, self.pivots):
            f = w[pc]
            if f:
                for j, a in enumerate(row):
                    if a:
                        w[j] = (w[j] - f * a) % p if p else w[j] - f * a
        return w

    def coords(self, v: Sequence[Any]) -> Vector:
        w = self.reduce(v)
        return [w[j] for j in self.free]

    def lift(self, c: Sequence[Any]) -> Vector:
        v = zero_vector(self.field, self.ambient_dim)
        for k, j in enumerate(self.free):
            v[j] = c[k]
        return v

    def projection(self) -> Matrix:
        """dim × n matrix of v ↦ coords(v)"""
        cols = [self.coords(standard_vector(self.field, self.ambient_dim, j)) for j in range(self.ambient_dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def section(self) -> Matrix:
        """n × dim matrix of the standard lift"""
        m = Matrix.zeros(self.field, self.ambient_dim, self.dim)
        one = self.field.one()
        for k, j in enumerate(self.free):
            m.data[j][k] = one
        return m

    def is_zero(self, v: Sequence[Any]) -> bool:
        return not any(self.coords(v))


# ==================== POLYNOMIALS ====================

def minimal_polynomial(A: Matrix) -> Vector:
    """Monic minimal polynomial of a square matrix, coefficients low degree first"""
    field = A.field
    n = A.rows
    powers = [Matrix.identity(field, n)]
    while True:
        cols = [P.flatten() for P in powers]
        ker = kernel_basis(Matrix.from_columns(field, cols, n * n))
        if ker:
            rel = ker[0]
            lead = rel[len(powers) - 1]
            if lead:
                inv = field.inv(lead)
                return [field.coerce(c * inv) for c in rel]
        powers.append(powers[-1] @ A)


def factor_polynomial(field: FieldSpec, coefficients: Sequence[Any]) -> List[Tuple[Vector, int]]:
    """Monic irreducible factors with multiplicities, coefficients low degree first"""
    t = sp.Symbol("t")
    high_first = list(reversed([field.coerce(c) for c in coefficients]))
    if field.modulus:
        poly = sp.Poly([int(c) for c in high_first], t, modulus=field.modulus)
    else:
        poly = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in high_first], t, domain=sp.QQ)
    factors = []
    for factor, multiplicity in poly.factor_list()[1]:
        coeffs = [field.coerce(Fraction(int(sp.numer(c)), int(sp.denom(c)))) for c in reversed(factor.all_coeffs())]
        inv = field.inv(coeffs[-1])
        factors.append(([field.coerce(c * inv) for c in coeffs], multiplicity))
    return factors


def is_irreducible_polynomial(field: FieldSpec, coefficients: Sequence[Any]) -> bool:
    factors = factor_polynomial(field, coefficients)
    return len(factors) == 1 and factors[0][1] == 1
