"""Exact dense linear algebra over the Gaussian rationals.

Scalars are complex numbers whose real and imaginary parts are
``fractions.Fraction`` values, so all arithmetic here is exact: row
reduction, kernels, Gram inverses and solvability verdicts never see
rounding.  Matrices are immutable; reduced row echelon form (with
pivots normalised to 1) is the canonical representative used for
subspace identity throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rational = Union[int, Fraction]


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def of(value: "ScalarLike") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(value)

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus; always a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            o = GaussianRational.of(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = f"{self.im}i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        if self.re == 0:
            return im
        sign = "+" if self.im > 0 else ""
        return f"{self.re}{sign}{im}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


ScalarLike = Union[int, Fraction, GaussianRational]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
IM = GaussianRational(0, 1)


def gr(re: Rational = 0, im: Rational = 0) -> GaussianRational:
    return GaussianRational(re, im)


class Matrix:
    """Immutable dense matrix of Gaussian rationals."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[ScalarLike]], cols: Optional[int] = None):
        rows = tuple(tuple(GaussianRational.of(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
            if cols is not None and cols != width:
                raise ValueError("cols mismatch")
            cols = width
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        self.entries = rows
        self.rows = len(rows)
        self.cols = cols

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix([[ZERO] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def row_vector(v: Sequence[ScalarLike]) -> "Matrix":
        return Matrix([list(v)])

    @staticmethod
    def vstack(mats: Sequence["Matrix"]) -> "Matrix":
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column counts differ")
        out = []
        for m in mats:
            out.extend(m.entries)
        return Matrix(out, cols=cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, k: ScalarLike) -> "Matrix":
        k = GaussianRational.of(k)
        return Matrix([[k * x for x in row] for row in self.entries], cols=self.cols)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
        ot = list(zip(*other.entries)) if other.entries else [()] * other.cols
        out = []
        for row in self.entries:
            out_row = []
            for col in ot:
                acc = ZERO
                for a, b in zip(row, col):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out, cols=other.cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def apply(self, vec: Sequence[ScalarLike]) -> tuple:
        """Matrix-vector product, the vector given and returned as a tuple."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        v = [GaussianRational.of(x) for x in vec]
        out = []
        for row in self.entries:
            acc = ZERO
            for a, b in zip(row, v):
                if not (a.is_zero() or b.is_zero()):
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        if not self.entries:
            return Matrix([[] for _ in range(self.cols)], cols=0)
        return Matrix([list(col) for col in zip(*self.entries)], cols=self.rows)

    def conj(self) -> "Matrix":
        return Matrix([[x.conj() for x in row] for row in self.entries], cols=self.cols)

    def conj_transpose(self) -> "Matrix":
        return self.transpose().conj()

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for arow in self.entries:
            for brow in other.entries:
                out.append([a * b for a in arow for b in brow])
        return Matrix(out, cols=self.cols * other.cols)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)

    def __repr__(self):
        return f"Matrix({self.shape[0]}x{self.shape[1]})"

    def _same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def _reduced(self):
        """Gauss-Jordan elimination; returns (rows, pivot column list)."""
        work = [list(row) for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, len(work)):
                if not work[i][c].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            work[r], work[pivot_row] = work[pivot_row], work[r]
            inv = ONE / work[r][c]
            work[r] = [inv * x for x in work[r]]
            for i in range(len(work)):
                if i != r and not work[i][c].is_zero():
                    f = work[i][c]
                    work[i] = [x - f * y for x, y in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
            if r == len(work):
                break
        return work, pivots

    def rref(self) -> tuple["Matrix", int]:
        """Reduced row echelon form (same shape) and the rank."""
        work, pivots = self._reduced()
        return Matrix(work, cols=self.cols), len(pivots)

    def rank(self) -> int:
        return len(self._reduced()[1])

    def row_basis(self) -> "Matrix":
        """The nonzero rows of the RREF: a canonical basis of the row space."""
        work, pivots = self._reduced()
        return Matrix(work[: len(pivots)], cols=self.cols)

    def kernel_basis(self) -> "Matrix":
        """Rows spanning the right null space {x : M x = 0}, in RREF.

        Row count is cols - rank (rank-nullity).
        """
        work, pivots = self._reduced()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        vectors = []
        for f in free:
            v = [ZERO] * self.cols
            v[f] = ONE
            for r, c in enumerate(pivots):
                v[c] = -work[r][f]
            vectors.append(v)
        if not vectors:
            return Matrix([], cols=self.cols)
        return Matrix(vectors, cols=self.cols).row_basis()

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix([list(row) + list(idrow) for row, idrow in
                      zip(self.entries, Matrix.identity(n).entries)], cols=2 * n)
        work, pivots = aug._reduced()
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([row[n:] for row in work], cols=n)


def rref(m: Matrix) -> tuple[Matrix, int]:
    return m.rref()


def kernel_basis(m: Matrix) -> Matrix:
    return m.kernel_basis()


def conj_transpose(m: Matrix) -> Matrix:
    return m.conj_transpose()


def solve_in_rowspace(target: Matrix, basis: Matrix) -> Optional[Matrix]:
    """Coefficients C with C * basis == target, or None if some row escapes.

    A None verdict means a target row lies outside the row space of
    ``basis``; it is an answer, not an error.
    """
    if target.cols != basis.cols:
        raise ValueError("ambient dimensions differ")
    bt = basis.transpose()
    coeff_rows = []
    for i in range(target.rows):
        aug = Matrix([list(brow) + [t] for brow, t in
                      zip(bt.entries, target.row(i))], cols=basis.rows + 1) \
            if basis.rows else Matrix([[t] for t in target.row(i)], cols=1)
        work, pivots = aug._reduced()
        if basis.rows in pivots:
            return None
        sol = [ZERO] * basis.rows
        for r, c in enumerate(pivots):
            sol[c] = work[r][basis.rows]
        coeff_rows.append(sol)
    return Matrix(coeff_rows, cols=basis.rows)


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q' with optional sign into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc
