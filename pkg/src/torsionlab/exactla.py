"""
Exact dense linear algebra over small prime fields and the rationals.

Everything here is a pure function of immutable values. Vectors are plain
tuples of field elements; matrices are :class:`Matrix` instances.  F_p
elements are canonical residues ``0..p-1``; rationals are ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import SizeError

SUPPORTED_PRIMES = (2, 3, 5, 7)
SUBSPACE_DIM_BOUND = 4


@dataclass(frozen=True)
class Field:
    """A prime field F_p (``p`` in 2, 3, 5, 7) or the rationals (``p == 0``)."""

    p: int = 2

    def __post_init__(self):
        if self.p != 0 and self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported field characteristic {self.p}")

    @classmethod
    def parse(cls, name: str) -> "Field":
        key = name.strip().upper()
        if key in ("Q", "QQ", "RATIONALS"):
            return cls(0)
        if key.startswith("GF"):
            key = "F" + key[2:]
        if key.startswith("F") and key[1:].isdigit():
            return cls(int(key[1:]))
        raise ValueError(f"unknown field {name!r}")

    @property
    def name(self) -> str:
        return f"F{self.p}" if self.p else "Q"

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def inv(self, a):
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def elements(self) -> tuple:
        if not self.p:
            raise SizeError("the rationals cannot be enumerated")
        return tuple(range(self.p))

    def __repr__(self):
        return f"Field({self.name})"


class Matrix:
    """Dense ``rows x cols`` matrix over a :class:`Field`, stored row-major."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: Field, rows: int, cols: int, data: Iterable[Sequence] = ()):
        self.field = field
        self.rows = rows
        self.cols = cols
        if rows == 0 or cols == 0:
            data = tuple(() for _ in range(rows))
        else:
            data = tuple(tuple(field(x) for x in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entries do not match shape {rows}x{cols}")
        self.data = data
        self._hash = None

    @classmethod
    def _raw(cls, field, rows, cols, data):
        m = cls.__new__(cls)
        m.field, m.rows, m.cols, m._hash = field, rows, cols, None
        m.data = data if rows and cols else tuple(() for _ in range(rows))
        return m

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = list(columns)
        data = [[col[i] for col in columns] for i in range(rows)]
        return cls(field, rows, len(columns), data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.p, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.field.name}, {self.rows}x{self.cols}, {[list(r) for r in self.data]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        p = self.field.p
        if p:
            data = tuple(tuple((a + b) % p for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        else:
            data = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        return Matrix._raw(self.field, self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        p = self.field.p
        if p:
            data = tuple(tuple((c * a) % p for a in r) for r in self.data)
        else:
            data = tuple(tuple(c * a for a in r) for r in self.data)
        return Matrix._raw(self.field, self.rows, self.cols, data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        z = self.field.zero
        ocols = list(zip(*other.data)) if other.rows else [() for _ in range(other.cols)]
        rows = []
        for r in self.data:
            if p:
                rows.append(tuple(sum(a * b for a, b in zip(r, c)) % p for c in ocols))
            else:
                rows.append(tuple(sum((a * b for a, b in zip(r, c)), z) for c in ocols))
        return Matrix._raw(self.field, self.rows, other.cols, tuple(rows))

    def apply(self, v: Sequence) -> tuple:
        p = self.field.p
        if p:
            return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.data)
        return tuple(sum((a * b for a, b in zip(r, v)), self.field.zero) for r in self.data)

    @property
    def T(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.cols, self.rows)
        return Matrix._raw(self.field, self.cols, self.rows, tuple(zip(*self.data)))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def rank(self) -> int:
        return len(rref(self)[1])

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, len(idx), self.cols, tuple(self.data[i] for i in idx))


def hstack(field: Field, rows: int, mats: Sequence[Matrix]) -> Matrix:
    mats = [m for m in mats]
    cols = sum(m.cols for m in mats)
    data = tuple(tuple(x for m in mats for x in m.data[i]) for i in range(rows))
    return Matrix._raw(field, rows, cols, data)


def vstack(field: Field, cols: int, mats: Sequence[Matrix]) -> Matrix:
    data = tuple(r for m in mats for r in m.data)
    return Matrix._raw(field, len(data), cols, data)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    z = field.zero
    out = []
    c0 = 0
    for m in mats:
        for r in m.data:
            out.append((z,) * c0 + tuple(r) + (z,) * (cols - c0 - m.cols))
        c0 += m.cols
    return Matrix._raw(field, rows, cols, tuple(out))


def _rref_rows(field: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan elimination on a list of mutable rows."""
    p = field.p
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if p:
            rows[r] = [(x * inv) % p for x in rows[r]]
        else:
            rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    if p:
                        rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
                    else:
                        rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.data], m.cols)
    return Matrix._raw(m.field, m.rows, m.cols, tuple(tuple(r) for r in rows)), pivots


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the right null space ``{x : m x = 0}``, one vector per free column."""
    field = m.field
    rows, pivots = _rref_rows(field, [list(r) for r in m.data], m.cols)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [field.zero] * m.cols
        v[free] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field(-rows[i][free])
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution of ``m x = b`` or ``None`` when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    field = m.field
    aug = [list(r) + [field(x)] for r, x in zip(m.data, b)]
    rows, pivots = _rref_rows(field, aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [field.zero] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.cols]
    return tuple(x)


def solve_matrix(a: Matrix, b: Matrix) -> Matrix | None:
    """A matrix ``x`` with ``a x = b``, or ``None``."""
    if a.rows != b.rows:
        raise ValueError("row mismatch")
    field = a.field
    if b.cols == 0:
        return Matrix.zeros(field, a.cols, 0)
    aug = [list(r) + list(s) for r, s in zip(a.data, b.data)]
    rows, pivots = _rref_rows(field, aug, a.cols + b.cols)
    if any(pc >= a.cols for pc in pivots):
        return None
    x = [[field.zero] * b.cols for _ in range(a.cols)]
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][a.cols:]
    return Matrix._raw(field, a.cols, b.cols, tuple(tuple(r) for r in x))


def row_space(m: Matrix) -> Matrix:
    """Canonical basis (nonzero RREF rows) of the row space."""
    rows, pivots = _rref_rows(m.field, [list(r) for r in m.data], m.cols)
    return Matrix._raw(m.field, len(pivots), m.cols, tuple(tuple(r) for r in rows[: len(pivots)]))


def column_space(m: Matrix) -> Matrix:
    """Canonical column basis of the image (transpose of the RREF row basis)."""
    return row_space(m.T).T if m.cols else Matrix.zeros(m.field, m.rows, 0)


def left_kernel(m: Matrix) -> Matrix:
    """Rows spanning ``{y : y m = 0}``; as a matrix its kernel is the column space of ``m``."""
    vecs = kernel_basis(m.T)
    return Matrix._raw(m.field, len(vecs), m.rows, tuple(vecs))


def is_injective(m: Matrix) -> bool:
    return m.rank == m.cols


def is_surjective(m: Matrix) -> bool:
    return m.rank == m.rows


def span_dim(field: Field, n: int, vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return Matrix._raw(field, len(vectors), n, tuple(tuple(v) for v in vectors)).rank


def preimage_dim(a: Matrix, w: Matrix) -> int:
    """``dim {x : a x in colspan(w)}`` for ``a: V -> U`` and ``w`` with columns in U."""
    proj = left_kernel(w) if w.cols else Matrix.identity(a.field, a.rows)
    if proj.rows == 0:
        return a.cols
    return a.cols - (proj @ a).rank


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def _subspaces(dim: int, p: int) -> tuple[Matrix, ...]:
    field = Field(p)
    out = [Matrix.zeros(field, 0, dim)]
    for k in range(1, dim + 1):
        for piv in combinations(range(dim), k):
            # free slots: row i, column j > piv[i], j not a pivot
            slots = [(i, j) for i in range(k) for j in range(piv[i] + 1, dim) if j not in piv]
            for vals in product(range(p), repeat=len(slots)):
                rows = [[0] * dim for _ in range(k)]
                for i, c in enumerate(piv):
                    rows[i][c] = 1
                for (i, j), v in zip(slots, vals):
                    rows[i][j] = v
                out.append(Matrix._raw(field, k, dim, tuple(tuple(r) for r in rows)))
    return tuple(out)


def enumerate_subspaces(dim: int, field: Field, bound: int = SUBSPACE_DIM_BOUND) -> list[Matrix]:
    """All subspaces of ``field^dim``, each as its RREF row-basis matrix."""
    if not field.is_finite:
        raise SizeError("subspace enumeration needs a finite field")
    if dim > bound:
        raise SizeError(f"dimension {dim} exceeds subspace enumeration bound {bound}")
    return list(_subspaces(dim, field.p))
