"""Exact rational scalars, matrices and the rank / kernel / solve primitives.

Scalars are Python ``int`` or :class:`fractions.Fraction`; integral values are
kept as ``int`` (see :func:`q`), which is several times faster in the inner
loops of elimination and matrix products.  Matrices store only their nonzero
entries, one dict per row, but otherwise behave as ordinary dense matrices.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

Vector = Tuple[Rational, ...]

__all__ = [
    "Matrix",
    "Vector",
    "format_rational",
    "kernel_basis",
    "parse_rational",
    "q",
    "rank",
    "solve",
    "vadd",
    "vscale",
    "vsub",
    "vzero",
    "is_zero_vector",
]


def q(x) -> Rational:
    """Coerce ``x`` to a canonical exact rational (``int`` when integral)."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, Rational):
        return q(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(s: str) -> Rational:
    s = s.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        if not sep:
            return int(num)
        value = Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {s!r}") from exc
    return q(value)


def format_rational(x) -> str:
    x = q(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


# -- vectors -----------------------------------------------------------------

def vzero(n: int) -> Vector:
    return (0,) * n


def vadd(u: Sequence, v: Sequence) -> Vector:
    return tuple(q(a + b) for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    return tuple(q(a - b) for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    return tuple(q(c * a) for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return all(a == 0 for a in v)


# -- matrices ----------------------------------------------------------------

SparseRow = Dict[int, Rational]


class Matrix:
    """Immutable exact matrix.

    Build with ``Matrix(rows, cols, entries)`` from a row-major flat list, or
    with :meth:`from_rows` / :meth:`from_sparse`.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Optional[Iterable] = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        data: List[SparseRow] = [dict() for _ in range(rows)]
        if entries is not None:
            entries = list(entries)
            if len(entries) != rows * cols:
                raise ValueError(
                    f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
                )
            for k, x in enumerate(entries):
                x = q(x)
                if x != 0:
                    data[k // cols][k % cols] = x
        self.rows = rows
        self.cols = cols
        self._data = tuple(data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def from_sparse(cls, rows: int, cols: int, data: Sequence[SparseRow]) -> "Matrix":
        """Wrap sparse rows (column -> value).  Zero values are dropped."""
        if len(data) != rows:
            raise ValueError("row count mismatch")
        m = cls.__new__(cls)
        clean = []
        for r in data:
            row = {}
            for c, x in r.items():
                if not 0 <= c < cols:
                    raise IndexError(f"column {c} out of range")
                x = q(x)
                if x != 0:
                    row[c] = x
            clean.append(row)
        m.rows, m.cols, m._data = rows, cols, tuple(clean)
        return m

    @classmethod
    def _trusted(cls, rows: int, cols: int, data) -> "Matrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, tuple(data)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._trusted(rows, cols, [{} for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._trusted(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        data: List[SparseRow] = [dict() for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, x in enumerate(col):
                x = q(x)
                if x != 0:
                    data[i][j] = x
        return cls._trusted(rows, len(columns), data)

    # -- access ----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: Tuple[int, int]) -> Rational:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i].get(j, 0)

    def row(self, i: int) -> Vector:
        r = self._data[i]
        return tuple(r.get(j, 0) for j in range(self.cols))

    def column(self, j: int) -> Vector:
        return tuple(r.get(j, 0) for r in self._data)

    def sparse_row(self, i: int) -> SparseRow:
        return dict(self._data[i])

    def to_lists(self) -> List[List[Rational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def entries(self) -> List[Rational]:
        return [x for i in range(self.rows) for x in self.row(i)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def iter_nonzero(self) -> Iterator[Tuple[int, int, Rational]]:
        for i, r in enumerate(self._data):
            for j, x in r.items():
                yield i, j, x

    def is_zero(self) -> bool:
        return all(not r for r in self._data)

    # -- algebra ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._data)))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = []
        for a, b in zip(self._data, other._data):
            r = dict(a)
            for j, x in b.items():
                y = q(r.get(j, 0) + sign * x)
                if y:
                    r[j] = y
                else:
                    r.pop(j, None)
            data.append(r)
        return Matrix._trusted(self.rows, self.cols, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = q(c)
        if c == 0:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._trusted(
            self.rows, self.cols, [{j: q(c * x) for j, x in r.items()} for r in self._data]
        )

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            odata = other._data
            data = []
            for r in self._data:
                acc: SparseRow = {}
                for k, x in r.items():
                    for j, y in odata[k].items():
                        acc[j] = acc.get(j, 0) + x * y
                data.append({j: q(v) for j, v in acc.items() if v != 0})
            return Matrix._trusted(self.rows, other.cols, data)
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(q(sum(x * v[j] for j, x in r.items())) for r in self._data)

    def transpose(self) -> "Matrix":
        data: List[SparseRow] = [dict() for _ in range(self.cols)]
        for i, r in enumerate(self._data):
            for j, x in r.items():
                data[j][i] = x
        return Matrix._trusted(self.cols, self.rows, data)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def kron(self, other: "Matrix") -> "Matrix":
        rows, cols = self.rows * other.rows, self.cols * other.cols
        data: List[SparseRow] = [dict() for _ in range(rows)]
        for i, r in enumerate(self._data):
            for j, x in r.items():
                for k, s in enumerate(other._data):
                    row = data[i * other.rows + k]
                    for l, y in s.items():
                        row[j * other.cols + l] = q(x * y)
        return Matrix._trusted(rows, cols, data)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        where = {c: k for k, c in enumerate(col_idx)}
        data = []
        for i in row_idx:
            data.append({where[j]: x for j, x in self._data[i].items() if j in where})
        return Matrix._trusted(len(row_idx), len(col_idx), data)

    @staticmethod
    def vstack(blocks: Sequence["Matrix"]) -> "Matrix":
        if not blocks:
            raise ValueError("nothing to stack")
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("column mismatch in vstack")
        data = [dict(r) for b in blocks for r in b._data]
        return Matrix._trusted(len(data), cols, data)

    @staticmethod
    def hstack(blocks: Sequence["Matrix"]) -> "Matrix":
        if not blocks:
            raise ValueError("nothing to stack")
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("row mismatch in hstack")
        data: List[SparseRow] = [dict() for _ in range(rows)]
        offset = 0
        for b in blocks:
            for i, r in enumerate(b._data):
                for j, x in r.items():
                    data[i][offset + j] = x
            offset += b.cols
        return Matrix._trusted(rows, offset, data)

    def permute_rows(self, perm: Sequence[int]) -> "Matrix":
        """Row ``perm[i]`` of the result is row ``i`` of ``self``."""
        data: List[Optional[SparseRow]] = [None] * self.rows
        for i, target in enumerate(perm):
            data[target] = dict(self._data[i])
        return Matrix._trusted(self.rows, self.cols, data)

    def permute_cols(self, perm: Sequence[int]) -> "Matrix":
        """Column ``perm[j]`` of the result is column ``j`` of ``self``."""
        data = [{perm[j]: x for j, x in r.items()} for r in self._data]
        return Matrix._trusted(self.rows, self.cols, data)

    # -- elimination -----------------------------------------------------

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> List[Vector]:
        return kernel_basis(self)

    def solve(self, b: Sequence) -> Optional[Vector]:
        return solve(self, b)


def _rref(rows: Iterable[SparseRow]) -> Dict[int, SparseRow]:
    """Reduced row echelon form, returned as ``{pivot column: normalized row}``.

    Rows are absorbed one at a time; each pivot row is kept fully reduced
    against every other pivot column, so a new row is reduced in one pass.
    """
    pivots: Dict[int, SparseRow] = {}
    for src in rows:
        row = dict(src)
        hits = [c for c in row if c in pivots]
        for c in hits:
            coef = row.get(c, 0)
            if coef == 0:
                continue
            for j, x in pivots[c].items():
                y = row.get(j, 0) - coef * x
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
        if not row:
            continue
        p = min(row)
        inv = Fraction(1) / row[p]
        row = {j: q(x * inv) for j, x in row.items()}
        for c, prow in pivots.items():
            coef = prow.get(p)
            if coef:
                for j, x in row.items():
                    y = prow.get(j, 0) - coef * x
                    if y:
                        prow[j] = q(y)
                    else:
                        prow.pop(j, None)
        pivots[p] = row
    return pivots


def rank(m: Matrix) -> int:
    """Rank over the rationals."""
    # eliminating along the shorter side is cheaper
    src = m if m.rows <= m.cols else m.transpose()
    return len(_rref(src._data))


def kernel_basis(m: Matrix) -> List[Vector]:
    """Basis of ``{v : m v = 0}``, one vector per non-pivot column."""
    pivots = _rref(m._data)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for c, row in pivots.items():
            x = row.get(f)
            if x:
                v[c] = q(-x)
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> Optional[Vector]:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    aug = m.cols
    rows = []
    for r, bi in zip(m._data, b):
        row = dict(r)
        bi = q(bi)
        if bi:
            row[aug] = bi
        rows.append(row)
    pivots = _rref(rows)
    if aug in pivots:
        return None
    x = [0] * m.cols
    for c, row in pivots.items():
        x[c] = q(row.get(aug, 0))
    return tuple(x)
