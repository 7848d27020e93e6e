"""Dense exact-rational matrices and the elimination kernel.

All arithmetic is exact; pivoting is always "first nonzero" since there is
no roundoff to manage.  Two independent elimination routines are provided on
purpose: ``rank`` uses classic Bareiss single-step fraction-free elimination,
while ``nullspace_basis`` uses a gcd-controlled integer Gauss-Jordan pass.
The test suite plays them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import NonSquareError, SingularMatrixError, SizeMismatchError
from .polynomials import UniPoly
from .scalars import Scalar, exact, parse_scalar, scalar_str


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        ents = tuple(exact(v) for v in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")
        object.__setattr__(self, "entries", ents)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> "QMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(v for r in rows for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: "int | None" = None) -> "QMatrix":
        if cols is None:
            cols = rows
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values) -> "QMatrix":
        vals = list(values)
        n = len(vals)
        return cls(n, n, tuple(vals[i] if i == j else 0 for i in range(n) for j in range(n)))

    # -- access ------------------------------------------------------------

    def __getitem__(self, key) -> Scalar:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> "list[list[Scalar]]":
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    def trace(self) -> Scalar:
        if not self.is_square:
            raise NonSquareError("trace of a non-square matrix")
        return exact(Fraction(sum(self.entries[i * self.cols + i] for i in range(self.rows))))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(self.rows, self.cols,
                       tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(self.rows, self.cols,
                       tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "QMatrix":
        c = exact(c)
        return QMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise SizeMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [0] * (n * m)
        for i in range(n):
            abase = i * k
            obase = i * m
            for t in range(k):
                av = a[abase + t]
                if av == 0:
                    continue
                bbase = t * m
                if av == 1:
                    for j in range(m):
                        bv = b[bbase + j]
                        if bv != 0:
                            out[obase + j] += bv
                else:
                    for j in range(m):
                        bv = b[bbase + j]
                        if bv != 0:
                            out[obase + j] += av * bv
        return QMatrix(n, m, tuple(out))

    def __pow__(self, k: int) -> "QMatrix":
        if not self.is_square:
            raise NonSquareError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power; use inverse()")
        result = QMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       tuple(self.entries[j * self.cols + i]
                             for i in range(self.cols) for j in range(self.rows)))

    def _same_shape(self, other: "QMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise SizeMismatchError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        cells = [[scalar_str(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]
        widths = [max((len(cells[i][j]) for i in range(self.rows)), default=0)
                  for j in range(self.cols)]
        return "\n".join(" ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def block_diag(blocks) -> QMatrix:
    """Block-diagonal assembly of square matrices, in the given order."""
    blocks = list(blocks)
    n = sum(b.rows for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        if not b.is_square:
            raise NonSquareError("block_diag expects square blocks")
        for i in range(b.rows):
            row = out[off + i]
            for j in range(b.cols):
                row[off + j] = b[i, j]
        off += b.rows
    return QMatrix.from_rows(out) if blocks else QMatrix.zeros(0, 0)


def matrix_to_json(m: QMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[scalar_str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)],
    }


def matrix_from_json(data: dict) -> QMatrix:
    rows, cols = int(data["rows"]), int(data["cols"])
    entries = data["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ValueError("entries shape does not match rows/cols")
    return QMatrix(rows, cols, tuple(parse_scalar(v) for r in entries for v in r))


# -- elimination kernel ----------------------------------------------------


def _integer_rows(m: QMatrix) -> "list[list[int]]":
    """Copy of the rows with denominators cleared row-wise (rank-preserving)."""
    out = []
    for i in range(m.rows):
        row = list(m.row(i))
        mult = 1
        for v in row:
            if isinstance(v, Fraction):
                d = v.denominator
                mult = mult * d // gcd(mult, d)
        out.append([int(v * mult) for v in row])
    return out


def common_denominator(matrices) -> int:
    """Least common denominator of all entries of the given matrices."""
    mult = 1
    for m in matrices:
        for v in m.entries:
            if isinstance(v, Fraction):
                d = v.denominator
                mult = mult * d // gcd(mult, d)
    return mult


def int_normalized(m: QMatrix) -> QMatrix:
    """The positive multiple of m with coprime integer entries.

    Span computations may replace any element by a nonzero multiple; doing
    so keeps the worklist arithmetic integral and small.
    """
    d = common_denominator([m])
    entries = m.entries if d == 1 else tuple(v * d for v in m.entries)
    g = 0
    for v in entries:
        if v:
            g = gcd(g, int(v))
            if g == 1:
                break
    if g > 1:
        entries = tuple(int(v) // g for v in entries)
    elif d != 1:
        entries = tuple(int(v) for v in entries)
    return QMatrix(m.rows, m.cols, entries)


def rank(m: QMatrix) -> int:
    """Rank over the rationals via Bareiss fraction-free elimination."""
    rows = _integer_rows(m)
    nr, nc = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        p = pr[c]
        for i in range(r + 1, nr):
            ri = rows[i]
            f = ri[c]
            # Single-step Bareiss update: stays integral, divides by the
            # previous pivot exactly.
            for j in range(c, nc):
                ri[j] = (p * ri[j] - f * pr[j]) // prev
        prev = p
        r += 1
    return r


def _gauss_jordan_int(rows: "list[list[int]]", ncols: int):
    """In-place gcd-controlled integer Gauss-Jordan; returns pivot list.

    Pivot entries are not normalized to 1 (rows stay integral); each row is
    divided by its gcd after every update to control growth.
    """
    pivots = []  # (row index, col index)
    r = 0
    nr = len(rows)
    for c in range(ncols):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        p = pr[c]
        for i in range(nr):
            if i == r:
                continue
            ri = rows[i]
            f = ri[c]
            if f == 0:
                continue
            g = 0
            for j in range(ncols):
                v = p * ri[j] - f * pr[j]
                ri[j] = v
                if v:
                    g = gcd(g, v)
            if g > 1:
                for j in range(ncols):
                    ri[j] //= g
        pivots.append((r, c))
        r += 1
    return pivots


def nullspace_basis(m: QMatrix) -> "list[tuple[Scalar, ...]]":
    """Canonical (reduced-echelon) basis of the right kernel."""
    rows = _integer_rows(m)
    pivots = _gauss_jordan_int(rows, m.cols)
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(m.cols):
        if free in pivot_cols:
            continue
        vec: list[Scalar] = [0] * m.cols
        vec[free] = 1
        for r, c in pivots:
            num = rows[r][free]
            if num:
                vec[c] = exact(Fraction(-num, rows[r][c]))
        basis.append(tuple(vec))
    return basis


def solve(m: QMatrix, rhs) -> "tuple[Scalar, ...] | None":
    """One exact solution of m*x = rhs (free variables set to 0), or None."""
    b = list(rhs)
    if len(b) != m.rows:
        raise SizeMismatchError("right-hand side length does not match rows")
    aug = QMatrix(m.rows, m.cols + 1,
                  tuple(v for i in range(m.rows) for v in (*m.row(i), b[i])))
    rows = _integer_rows(aug)
    pivots = _gauss_jordan_int(rows, m.cols + 1)
    if any(c == m.cols for _, c in pivots):
        return None  # inconsistent system
    vec: list[Scalar] = [0] * m.cols
    for r, c in pivots:
        num = rows[r][m.cols]
        if num:
            vec[c] = exact(Fraction(num, rows[r][c]))
    return tuple(vec)


def inverse(m: QMatrix) -> QMatrix:
    """Exact inverse via Gauss-Jordan; raises SingularMatrixError if singular."""
    if not m.is_square:
        raise NonSquareError("inverse of a non-square matrix")
    n = m.rows
    work = [list(m.row(i)) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if work[i][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        work[r], work[piv] = work[piv], work[r]
        pr = work[r]
        pval = pr[c]
        if pval != 1:
            inv = Fraction(1) / pval
            work[r] = pr = [v * inv for v in pr]
        for i in range(n):
            if i == r:
                continue
            f = work[i][c]
            if f == 0:
                continue
            wi = work[i]
            for j in range(c, 2 * n):
                wi[j] -= f * pr[j]
        r += 1
    return QMatrix(n, n, tuple(work[i][n + j] for i in range(n) for j in range(n)))


def char_poly(m: QMatrix) -> UniPoly:
    """Monic characteristic polynomial det(tI - m) via Faddeev-LeVerrier.

    Fractional input is cleared to an integer matrix first; the coefficients
    of det(tI - m) are recovered from those of det(tI - d*m) by dividing the
    t^k coefficient by d^(n-k).
    """
    if not m.is_square:
        raise NonSquareError("characteristic polynomial of a non-square matrix")
    n = m.rows
    d = common_denominator([m])
    work = m.scale(d) if d != 1 else m
    coeffs: list[Scalar] = [0] * (n + 1)
    coeffs[n] = 1
    am = QMatrix.zeros(n)
    ident = QMatrix.identity(n)
    for k in range(1, n + 1):
        mk = am + ident.scale(coeffs[n - k + 1])
        am = work @ mk
        coeffs[n - k] = exact(Fraction(-am.trace(), k))
    if d != 1:
        scale = 1
        for k in range(n - 1, -1, -1):
            scale *= d
            coeffs[k] = exact(Fraction(coeffs[k], scale))
    return UniPoly(coeffs)


def poly_at_matrix(p: UniPoly, m: QMatrix) -> QMatrix:
    """Evaluate a univariate polynomial at a square matrix (Horner)."""
    if not m.is_square:
        raise NonSquareError("polynomial of a non-square matrix")
    result = QMatrix.zeros(m.rows)
    ident = QMatrix.identity(m.rows)
    for c in reversed(p.coeffs):
        result = result @ m + ident.scale(c)
    return result


def nilpotency_index(m: QMatrix) -> "int | None":
    """Least p with m^p = 0, or None if m^n != 0 (not nilpotent)."""
    if not m.is_square:
        raise NonSquareError("nilpotency of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    # Nilpotency and its index are invariant under nonzero scaling, so work
    # on the denominator-cleared copy where products are integer arithmetic.
    d = common_denominator([m])
    power = m = m.scale(d) if d != 1 else m
    for idx in range(1, n + 1):
        if power.is_zero():
            return idx
        power = power @ m
    return None


def is_nilpotent(m: QMatrix) -> bool:
    """Fast nilpotency test: m^(2^ceil(log2 n)) == 0 iff m^n == 0."""
    if not m.is_square:
        raise NonSquareError("nilpotency of a non-square matrix")
    n = m.rows
    if n == 0:
        return True
    d = common_denominator([m])
    p = m.scale(d) if d != 1 else m
    e = 1
    while True:
        if p.is_zero():
            return True
        if e >= n:
            return False
        p = p @ p
        e *= 2


@dataclass
class SpanBuilder:
    """Incrementally maintained row-echelon span of exact vectors.

    Rows are kept integral (gcd-reduced, pivots not normalized); the
    canonical reduced-echelon basis with unit pivots is produced on demand
    by basis_vectors().
    """

    length: int
    rows: list = field(default_factory=list)    # integer rows, pivot-sorted
    pivots: list = field(default_factory=list)  # pivot column of each row

    @property
    def rank(self) -> int:
        return len(self.rows)

    @staticmethod
    def _clear(vec) -> "list[int]":
        mult = 1
        vec = list(vec)
        for v in vec:
            if isinstance(v, Fraction):
                d = v.denominator
                mult = mult * d // gcd(mult, d)
        if mult == 1:
            return [int(v) for v in vec]
        return [int(v * mult) for v in vec]

    @staticmethod
    def _gcd_reduce(vec: "list[int]") -> "list[int]":
        g = 0
        for v in vec:
            if v:
                g = gcd(g, v)
                if g == 1:
                    return vec
        if g > 1:
            return [v // g for v in vec]
        return vec

    def _reduce(self, vec: "list[int]") -> "list[int]":
        for row, p in zip(self.rows, self.pivots):
            f = vec[p]
            if f != 0:
                pv = row[p]
                for j in range(self.length):
                    rv = row[j]
                    vec[j] = pv * vec[j] - f * rv if rv else pv * vec[j]
                vec = self._gcd_reduce(vec)
        return vec

    def contains(self, vec) -> bool:
        return all(v == 0 for v in self._reduce(self._clear(vec)))

    def add(self, vec) -> bool:
        """Insert a vector; True if it enlarged the span."""
        work = self._reduce(self._clear(vec))
        pivot = next((j for j, v in enumerate(work) if v != 0), None)
        if pivot is None:
            return False
        if work[pivot] < 0:
            work = [-v for v in work]
        # Back-reduce existing rows so extraction stays canonical.
        pv = work[pivot]
        for idx, (row, p) in enumerate(zip(self.rows, self.pivots)):
            f = row[pivot]
            if f != 0:
                new_row = [pv * a - f * b for a, b in zip(row, work)]
                self.rows[idx] = self._gcd_reduce(new_row)
        at = next((k for k, p in enumerate(self.pivots) if p > pivot), len(self.pivots))
        self.rows.insert(at, work)
        self.pivots.insert(at, pivot)
        return True

    def basis_vectors(self) -> "list[tuple[Scalar, ...]]":
        out = []
        for row, p in zip(self.rows, self.pivots):
            pv = row[p]
            if pv == 1:
                out.append(tuple(row))
            else:
                out.append(tuple(exact(Fraction(v, pv)) for v in row))
        return out
