"""Exact field arithmetic and dense linear algebra.

Two ground fields are supported: the rationals (``fractions.Fraction``) and
prime fields F_p (the :class:`Fp` element type).  Matrices are dense, immutable
and tagged with their :class:`FieldSpec`; mixing fields raises
:class:`FieldMismatchError`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class FieldMismatchError(TypeError):
    """Raised when scalars or matrices over different fields are combined."""


class SingularMatrixError(ValueError):
    """Raised when inverting a matrix that is not invertible."""


class DimensionError(ValueError):
    """Raised on incompatible matrix shapes."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Fp:
    """Element of the prime field F_p, stored as a reduced residue."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} and F_{other.p} do not mix")
            return other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise FieldMismatchError(f"cannot combine F_{self.p} with {type(other).__name__}")

    def __add__(self, other):
        return Fp(self.v + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.v - self._other(other), self.p)

    def __rsub__(self, other):
        return Fp(self._other(other) - self.v, self.p)

    def __mul__(self, other):
        return Fp(self.v * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other) % self.p
        if o == 0:
            raise ZeroDivisionError(f"division by 0 in F_{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._other(other), self.p) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"


Scalar = "Fraction | Fp"


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``FieldSpec.rational()`` or ``FieldSpec.prime(p)``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("rational", "prime"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime" and not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``rational`` or ``fp:<p>``."""
        text = text.strip()
        if text in ("rational", "Q", "QQ"):
            return cls.rational()
        if text.startswith("fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls.prime(p)
        raise ValueError(f"bad field spec {text!r}")

    def __str__(self):
        return "rational" if self.kind == "rational" else f"fp:{self.p}"

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rational" else Fp(0, self.p)

    @property
    def one(self):
        return Fraction(1) if self.kind == "rational" else Fp(1, self.p)

    def __call__(self, x):
        """Coerce an int, Fraction, string or same-field element."""
        if isinstance(x, str):
            return self.parse_scalar(x)
        if self.kind == "rational":
            if isinstance(x, Fp):
                raise FieldMismatchError("prime-field element used as a rational")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldMismatchError(f"F_{x.p} element used in F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} is not defined in F_{self.p}")
            return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)
        return Fp(int(x), self.p)

    def owns(self, x) -> bool:
        if self.kind == "rational":
            return isinstance(x, Fraction)
        return isinstance(x, Fp) and x.p == self.p

    def format(self, x) -> str:
        if self.kind == "rational":
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return f"{self(x).v} mod {self.p}"

    def parse_scalar(self, text: str):
        text = text.strip()
        if self.kind == "rational":
            if "mod" in text:
                raise FieldMismatchError(f"prime-field scalar {text!r} in a rational context")
            return Fraction(text)
        if "mod" in text:
            r, _, p = text.partition("mod")
            if int(p) != self.p:
                raise FieldMismatchError(f"scalar {text!r} is not in F_{self.p}")
            return Fp(int(r), self.p)
        return self(Fraction(text))

    def elements(self):
        if self.kind == "rational":
            raise ValueError("the rationals are infinite")
        return [Fp(v, self.p) for v in range(self.p)]

    def random(self, rng: random.Random, bound: int = 5):
        """A random element; rationals have numerators and denominators up to ``bound``."""
        if self.kind == "rational":
            return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        return Fp(rng.randrange(self.p), self.p)


def _field_of(x) -> FieldSpec:
    if isinstance(x, Fp):
        return FieldSpec.prime(x.p)
    return FieldSpec.rational()


class Matrix:
    """Dense immutable matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: FieldSpec, rows: int, cols: int, data: Sequence[Sequence]):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(r) for r in data)
        self._hash = None
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise DimensionError(f"entries do not match shape {rows}x{cols}")

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [[field(x) for x in r] for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = [[field(x) for x in c] for c in columns]
        data = [[c[i] for c in columns] for i in range(rows)]
        return cls(field, rows, len(columns), data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_sparse_columns(cls, field: FieldSpec, rows: int, columns: Sequence[dict]) -> "Matrix":
        z = field.zero
        data = [[z] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                data[i][j] = v
        return cls(field, rows, len(columns), data)

    # access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self.data) for j in range(self.cols)]

    def sparse_columns(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self.data):
            for j, v in enumerate(r):
                if v:
                    out[j][i] = v
        return out

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    # arithmetic -------------------------------------------------------
    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.field.zero
        n = other.cols
        bdata = other.data
        out = []
        for r in self.data:
            acc = [z] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(bdata[k]):
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix(self.field, self.rows, n, out)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times a column given as a sequence."""
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} for {self.shape}")
        z = self.field.zero
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), z) for r in self.data)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.field, self.rows, self.cols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(self.field, self.rows, self.cols,
                      [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, self.rows, self.cols, [[c * a for a in r] for r in self.data])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, list(zip(*self.data)) if self.rows else
                      [[] for _ in range(self.cols)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.rows != other.rows:
            raise DimensionError("row counts differ")
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [r + s for r, s in zip(self.data, other.data)])

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.cols:
            raise DimensionError("column counts differ")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    def is_zero(self) -> bool:
        return not any(a for r in self.data for a in r)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all((a == 1) if i == j else (not a)
                   for i, r in enumerate(self.data) for j, a in enumerate(r))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(a) for a in r) for r in self.data)
        return f"Matrix<{self.field}>[{body}]"

    # serialization ----------------------------------------------------
    def to_json(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(a) for a in r] for r in self.data]

    @classmethod
    def from_json(cls, field: FieldSpec, rows: list, cols: int | None = None) -> "Matrix":
        return cls.from_rows(field, [[field.parse_scalar(str(a)) for a in r] for r in rows], cols)


def block_diag(field: FieldSpec, blocks: Iterable[Matrix]) -> Matrix:
    blocks = list(blocks)
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    z = field.zero
    data = [[z] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        if b.field != field:
            raise FieldMismatchError(f"{b.field} vs {field}")
        for i, row in enumerate(b.data):
            data[r0 + i][c0:c0 + b.cols] = row
        r0 += b.rows
        c0 += b.cols
    return Matrix(field, n, m, data)


def _rref_rows(field: FieldSpec, rows: list[list], ncols: int, stop: int | None = None):
    """In-place reduction; pivots only searched in columns < ``stop``."""
    stop = ncols if stop is None else stop
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(stop):
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
        prow = rows[r]
        inv = 1 / prow[c] if field.is_rational else prow[c].inverse()
        if prow[c] != 1:
            prow = [a * inv if a else a for a in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    Pivoting is deterministic: columns are scanned left to right and the
    first row (smallest index) with a nonzero entry becomes the pivot row.
    """
    rows = [list(r) for r in m.data]
    pivots = _rref_rows(m.field, rows, m.cols)
    return Matrix(m.field, m.rows, m.cols, rows), len(pivots), pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{v : m v = 0}``."""
    red, rk, pivots = rref(m)
    f = m.field
    pset = set(pivots)
    free = [c for c in range(m.cols) if c not in pset]
    cols = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = -red.data[r][fc]
        cols.append(v)
    return Matrix.from_columns(f, cols, m.cols) if cols else Matrix.zeros(f, m.cols, 0)


def solve_linear(a: Matrix, b: Matrix) -> Matrix | None:
    """Some ``x`` with ``a x = b``, or ``None`` if the system is inconsistent."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    if a.rows != b.rows:
        raise DimensionError(f"row counts differ: {a.rows} vs {b.rows}")
    f = a.field
    rows = [list(r) + list(s) for r, s in zip(a.data, b.data)]
    pivots = _rref_rows(f, rows, a.cols + b.cols, stop=a.cols)
    k = len(pivots)
    for r in rows[k:]:
        if any(r[a.cols:]):
            return None
    x = [[f.zero] * b.cols for _ in range(a.cols)]
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][a.cols:]
    return Matrix(f, a.cols, b.cols, x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionError(f"cannot invert non-square {m.shape}")
    n = m.rows
    f = m.field
    o, z = f.one, f.zero
    rows = [list(r) + [o if i == j else z for j in range(n)] for i, r in enumerate(m.data)]
    pivots = _rref_rows(f, rows, 2 * n, stop=n)
    if len(pivots) < n:
        raise SingularMatrixError(f"matrix of rank {len(pivots)} < {n} is singular")
    return Matrix(f, n, n, [r[n:] for r in rows])


def kron(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    data = []
    for ra in a.data:
        for rb in b.data:
            data.append([x * y for x in ra for y in rb])
    return Matrix(a.field, a.rows * b.rows, a.cols * b.cols, data)


def column_space(m: Matrix) -> Matrix:
    """Canonical basis of the column space: the rref of the transpose, as columns."""
    red, rk, _ = rref(m.transpose())
    return Matrix(m.field, rk, m.rows, red.data[:rk]).transpose()


def same_column_space(a: Matrix, b: Matrix) -> bool:
    if a.rows != b.rows:
        return False
    return column_space(a) == column_space(b)


def random_matrix(field: FieldSpec, rows: int, cols: int, rng: random.Random, density: float = 1.0) -> Matrix:
    z = field.zero
    return Matrix(field, rows, cols, [[field.random(rng) if rng.random() < density else z
                                       for _ in range(cols)] for _ in range(rows)])


def random_invertible(field: FieldSpec, n: int, rng: random.Random) -> Matrix:
    while True:
        m = random_matrix(field, n, n, rng)
        if rank(m) == n:
            return m
