"""Exact integer matrix kernel.

Dense matrices of arbitrary-precision integers with fraction-free
determinants, exact rank, saturated integer kernels, and total/weak
unimodularity tests by explicit submatrix enumeration.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundExceededError, DimensionError, FormatError

DEFAULT_TU_BOUND = 10


def _env_bound(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return int(raw)


def tu_bound(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_bound("FLOWLAT_TU_BOUND", DEFAULT_TU_BOUND)


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable dense matrix of Python ints, row-major."""

    entries: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...] | None = None
    col_labels: tuple[str, ...] | None = None
    # column count of a zero-row matrix; ignored when entries is nonempty
    empty_cols: int = 0

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise DimensionError("ragged rows")
        if self.row_labels is not None:
            if len(self.row_labels) != self.rows or len(set(self.row_labels)) != self.rows:
                raise DimensionError("row labels must be unique and match row count")
        if self.col_labels is not None:
            if len(self.col_labels) != self.cols or len(set(self.col_labels)) != self.cols:
                raise DimensionError("column labels must be unique and match column count")

    @staticmethod
    def from_rows(rows, row_labels=None, col_labels=None) -> "IntegerMatrix":
        return IntegerMatrix(
            tuple(tuple(int(x) for x in r) for r in rows),
            None if row_labels is None else tuple(row_labels),
            None if col_labels is None else tuple(col_labels),
        )

    @staticmethod
    def from_columns(cols, nrows: int | None = None) -> "IntegerMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if not cols:
            return IntegerMatrix.from_rows([()] * (nrows or 0))
        return IntegerMatrix.from_rows(zip(*cols))

    @staticmethod
    def empty(rows: int, cols: int) -> "IntegerMatrix":
        if rows == 0:
            return IntegerMatrix((), empty_cols=cols)
        return IntegerMatrix.from_rows([()] * rows) if cols == 0 else \
            IntegerMatrix.zeros(rows, cols)

    @staticmethod
    def identity(n: int) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([[0] * cols for _ in range(rows)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else self.empty_cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntegerMatrix":
        if not self.entries:
            return IntegerMatrix.from_rows([()] * self.empty_cols)
        if self.cols == 0:
            return IntegerMatrix((), empty_cols=self.rows)
        return IntegerMatrix.from_rows(zip(*self.entries))

    def submatrix(self, row_idx, col_idx) -> "IntegerMatrix":
        row_idx, col_idx = list(row_idx), list(col_idx)
        if not row_idx:
            return IntegerMatrix((), empty_cols=len(col_idx))
        return IntegerMatrix.from_rows(
            [[self.entries[i][j] for j in col_idx] for i in row_idx]
        )

    def select_columns(self, col_idx) -> "IntegerMatrix":
        return self.submatrix(range(self.rows), col_idx)

    def select_rows(self, row_idx) -> "IntegerMatrix":
        return self.submatrix(row_idx, range(self.cols))

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise DimensionError("hstack: row counts differ")
        return IntegerMatrix.from_rows(
            [a + b for a, b in zip(self.entries, other.entries)]
        )

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.cols:
            raise DimensionError("vstack: column counts differ")
        return IntegerMatrix.from_rows(self.entries + other.entries)

    def __mul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        if not self.entries:
            return IntegerMatrix((), empty_cols=other.cols)
        ot = list(zip(*other.entries)) if other.entries else [()] * other.cols
        return IntegerMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries]
        )

    def __neg__(self) -> "IntegerMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "IntegerMatrix":
        if not self.entries:
            return IntegerMatrix((), empty_cols=self.empty_cols)
        return IntegerMatrix.from_rows([[c * x for x in r] for r in self.entries])

    def text(self) -> str:
        """Render in the shared matrix text format."""
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(x) for x in r) for r in self.entries]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return self.text().rstrip("\n")


def parse_matrix(text: str) -> IntegerMatrix:
    """Parse the shared matrix text format: "rows cols" then the entries.

    '#' begins a comment line; entries may wrap across lines.
    """
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if len(tokens) < 2:
        raise FormatError("matrix text needs a 'rows cols' header")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
        body = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise FormatError(f"non-integer token in matrix text: {exc}") from exc
    if rows < 0 or cols < 0 or len(body) != rows * cols:
        raise FormatError(
            f"expected {rows}x{cols} = {rows * cols} entries, got {len(body)}"
        )
    if rows == 0:
        return IntegerMatrix((), empty_cols=cols)
    return IntegerMatrix.from_rows(
        [body[i * cols:(i + 1) * cols] for i in range(rows)]
    )


def determinant(m: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise DimensionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: IntegerMatrix) -> int:
    """Rank over the rationals, computed exactly."""
    a = [[Fraction(x) for x in r] for r in m.entries]
    nr, nc = m.rows, m.cols
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return r


def integer_kernel_basis(m: IntegerMatrix) -> IntegerMatrix:
    """Basis of ker(m) over the integers: columns span ker(m) ∩ Z^cols.

    Integer row reduction of [m^T | I] by unimodular operations; the
    identity block rows facing a zeroed m^T row form a saturated basis,
    so every integer kernel vector is an integer combination of the
    columns (not merely a finite-index sublattice).
    """
    n, r = m.cols, m.rows
    work = [list(col) + [1 if i == j else 0 for j in range(n)]
            for i, col in enumerate(zip(*m.entries))] if m.entries else \
           [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # work is n rows of [m^T | I_n]
    pivot_row = 0
    for col in range(r):
        while True:
            live = [i for i in range(pivot_row, n) if work[i][col] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(work[i][col]))
            work[pivot_row], work[best] = work[best], work[pivot_row]
            done = True
            p = work[pivot_row][col]
            for i in range(pivot_row + 1, n):
                if work[i][col] != 0:
                    q = work[i][col] // p
                    work[i] = [x - q * y for x, y in zip(work[i], work[pivot_row])]
                    if work[i][col] != 0:
                        done = False
            if done:
                pivot_row += 1
                break
    kernel_rows = [row[r:] for row in work[pivot_row:]]
    return IntegerMatrix.from_columns(kernel_rows, nrows=n)


def sharp(m: IntegerMatrix) -> IntegerMatrix:
    """Entrywise absolute value."""
    if not m.entries:
        return IntegerMatrix((), empty_cols=m.empty_cols)
    return IntegerMatrix.from_rows([[abs(x) for x in r] for r in m.entries])


@dataclass(frozen=True)
class UnimodularityCheck:
    """Decision with a mandatory witness on failure.

    witness_rows/witness_cols index a square submatrix whose determinant
    lies outside {-1, 0, +1}.
    """

    ok: bool
    witness_rows: tuple[int, ...] | None = None
    witness_cols: tuple[int, ...] | None = None
    witness_det: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _minor_det(m: IntegerMatrix, rows: tuple, cols: tuple, memo: dict) -> int:
    key = (rows, cols)
    got = memo.get(key)
    if got is not None:
        return got
    if len(rows) == 1:
        d = m.entries[rows[0]][cols[0]]
    else:
        d = 0
        rest = rows[1:]
        sign = 1
        for j, c in enumerate(cols):
            a = m.entries[rows[0]][c]
            if a:
                d += sign * a * _minor_det(m, rest, cols[:j] + cols[j + 1:], memo)
            sign = -sign
    memo[key] = d
    return d


def is_totally_unimodular(m: IntegerMatrix, bound: int | None = None) -> UnimodularityCheck:
    """Every square submatrix has determinant in {-1, 0, +1}.

    Enumeration ascends by submatrix order and stops at the first
    (lexicographically least) witness.
    """
    order_cap = min(m.rows, m.cols)
    b = tu_bound(bound)
    if order_cap > b:
        raise BoundExceededError("min(rows, cols)", order_cap, b)
    memo: dict = {}
    for k in range(1, order_cap + 1):
        for rows in itertools.combinations(range(m.rows), k):
            for cols in itertools.combinations(range(m.cols), k):
                d = _minor_det(m, rows, cols, memo)
                if abs(d) > 1:
                    return UnimodularityCheck(False, rows, cols, d)
    return UnimodularityCheck(True)


def is_weakly_unimodular(m: IntegerMatrix, bound: int | None = None) -> UnimodularityCheck:
    """Every maximal square submatrix has determinant in {-1, 0, +1}."""
    k = min(m.rows, m.cols)
    b = tu_bound(bound)
    if k > b:
        raise BoundExceededError("min(rows, cols)", k, b)
    if k == 0:
        return UnimodularityCheck(True)
    memo: dict = {}
    for rows in itertools.combinations(range(m.rows), k):
        for cols in itertools.combinations(range(m.cols), k):
            d = _minor_det(m, rows, cols, memo)
            if abs(d) > 1:
                return UnimodularityCheck(False, rows, cols, d)
    return UnimodularityCheck(True)
