"""Dense square matrices over :class:`TrigScalar`."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterable, Sequence

from .trigring import ONE, ZERO, NotAUnitError, TrigScalar, ts_format

__all__ = [
    "DimensionError",
    "NotInvertibleError",
    "TrigMatrix",
    "mat_mul",
    "commutator",
    "trace",
    "determinant",
    "inverse",
    "matrix_from_strings",
]


class DimensionError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    pass


class TrigMatrix:
    """Immutable ``n x n`` matrix, stored row-major as nested tuples."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[object]]):
        rows = tuple(tuple(TrigScalar.coerce(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise DimensionError("matrix must have at least one row")
        if any(len(row) != n for row in rows):
            raise DimensionError("matrix must be square")
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> TrigMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> TrigMatrix:
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def from_entries(cls, n: int, entries: dict[tuple[int, int], object]) -> TrigMatrix:
        """Sparse constructor: ``entries`` maps ``(row, col)`` to a scalar."""
        rows = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            rows[i][j] = TrigScalar.coerce(v)
        return cls(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> TrigScalar:
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: TrigMatrix) -> None:
        if not isinstance(other, TrigMatrix):
            raise TypeError(f"expected TrigMatrix, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: TrigMatrix) -> TrigMatrix:
        self._check(other)
        return TrigMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: TrigMatrix) -> TrigMatrix:
        self._check(other)
        return TrigMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> TrigMatrix:
        return TrigMatrix([[-a for a in row] for row in self.rows])

    def scale(self, factor) -> TrigMatrix:
        factor = TrigScalar.coerce(factor)
        return TrigMatrix([[factor * a for a in row] for row in self.rows])

    def __mul__(self, factor) -> TrigMatrix:
        if isinstance(factor, TrigMatrix):
            raise TypeError("use '@' for matrix products")
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: TrigMatrix) -> TrigMatrix:
        self._check(other)
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out_row = []
            for j in range(n):
                acc = ZERO
                col = cols[j]
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return TrigMatrix(out)

    def transpose(self) -> TrigMatrix:
        return TrigMatrix(zip(*self.rows))

    def map(self, fn: Callable[[TrigScalar], object]) -> TrigMatrix:
        return TrigMatrix([[fn(a) for a in row] for row in self.rows])

    def trace(self) -> TrigScalar:
        acc = ZERO
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(not a for row in self.rows for a in row)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def determinant(self) -> TrigScalar:
        # Laplace expansion along successive rows, memoised on the set of
        # columns still available; no division, so exact over the ring.
        n = self.n
        full = (1 << n) - 1
        minors = {0: ONE}
        for row in range(n - 1, -1, -1):
            size = n - row
            nxt = {}
            for mask in _masks_of_size(n, size):
                acc = ZERO
                pos = 0
                for j in range(n):
                    if not mask >> j & 1:
                        continue
                    a = self.rows[row][j]
                    if a:
                        sub = minors.get(mask & ~(1 << j))
                        if sub:
                            term = a * sub
                            acc = acc - term if pos % 2 else acc + term
                    pos += 1
                nxt[mask] = acc
            minors = nxt
        return minors[full]

    def minor(self, i: int, j: int) -> TrigMatrix:
        return TrigMatrix(
            [[a for c, a in enumerate(row) if c != j] for r, row in enumerate(self.rows) if r != i]
        )

    def inverse(self) -> TrigMatrix:
        det = self.determinant()
        if not det:
            raise NotInvertibleError("matrix is singular")
        try:
            det_inv = det.inverse()
        except NotAUnitError as exc:
            raise NotInvertibleError(f"determinant {ts_format(det)} is not a unit") from exc
        n = self.n
        if n == 1:
            return TrigMatrix([[det_inv]])
        cof = [
            [self.minor(j, i).determinant() * (-1 if (i + j) % 2 else 1) for j in range(n)]
            for i in range(n)
        ]
        inv = TrigMatrix(cof).scale(det_inv)
        if inv @ self != TrigMatrix.identity(n):
            raise NotInvertibleError("adjugate check failed")
        return inv

    def __eq__(self, other):
        if not isinstance(other, TrigMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return f"TrigMatrix({[[ts_format(a) for a in row] for row in self.rows]})"

    def to_text(self) -> str:
        cells = [[ts_format(a) for a in row] for row in self.rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[a.to_json() for a in row] for row in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> TrigMatrix:
        rows = [[_scalar_from_json(x) for x in row] for row in data["rows"]]
        m = cls(rows)
        if "n" in data and data["n"] != m.n:
            raise DimensionError(f"declared n={data['n']} but rows give {m.n}")
        return m


def _scalar_from_json(x) -> TrigScalar:
    # each cell is a term list; plain strings in the text grammar are also accepted
    if isinstance(x, str):
        return TrigScalar.coerce(x)
    return TrigScalar.from_json(x)


def _masks_of_size(n: int, size: int):
    for cols in combinations(range(n), size):
        mask = 0
        for c in cols:
            mask |= 1 << c
        yield mask


def mat_mul(a: TrigMatrix, b: TrigMatrix) -> TrigMatrix:
    return a @ b


def commutator(a: TrigMatrix, b: TrigMatrix) -> TrigMatrix:
    return a @ b - b @ a


def trace(a: TrigMatrix) -> TrigScalar:
    return a.trace()


def determinant(a: TrigMatrix) -> TrigScalar:
    return a.determinant()


def inverse(a: TrigMatrix) -> TrigMatrix:
    return a.inverse()


def matrix_from_strings(rows: Sequence[Sequence[str]]) -> TrigMatrix:
    return TrigMatrix([[TrigScalar.coerce(x) for x in row] for row in rows])
