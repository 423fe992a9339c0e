"""Exact dense linear algebra over the rationals and prime fields.

Every scalar is tagged by the field it lives in: rationals are
`fractions.Fraction` values (always in lowest terms with positive
denominator), prime-field elements are ints in ``[0, p)``.  Matrices carry
their field and refuse to mix tags.  No floating point appears anywhere in
this module or its callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import sympy

from .errors import DimensionMismatchError, FieldMismatchError

ScalarInput = Union[int, str, Fraction]


class Field:
    """Arithmetic context for matrix entries.

    Concrete subclasses implement coercion and inversion; everything else
    is ordinary ring arithmetic on the coerced representatives.
    """

    name: str

    def coerce(self, value: ScalarInput):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def characteristic(self) -> int:
        raise NotImplementedError

    def to_string(self, a) -> str:
        return str(a)


class RationalField(Field):
    name = "Q"

    def coerce(self, value: ScalarInput) -> Fraction:
        if isinstance(value, bool):
            raise FieldMismatchError("booleans are not rational scalars")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise FieldMismatchError(f"cannot coerce {value!r} into Q")

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def characteristic(self) -> int:
        return 0

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("taumut.QQ")


class PrimeField(Field):
    """The field with p elements, p prime; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
            raise FieldMismatchError(f"modulus {p!r} is not a prime")
        self.p = p
        self.name = f"F{p}"

    def coerce(self, value: ScalarInput) -> int:
        if isinstance(value, bool):
            raise FieldMismatchError("booleans are not field scalars")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator {value.denominator} vanishes mod {self.p}"
                )
            return (value.numerator % self.p) * pow(den, -1, self.p) % self.p
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise FieldMismatchError(f"cannot coerce {value!r} into F_{self.p}")

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def characteristic(self) -> int:
        return self.p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("taumut.Fp", self.p))


QQ = RationalField()


class Mat:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(
        self,
        field: Field,
        rows: Sequence[Sequence],
        *,
        ncols: Optional[int] = None,
        _raw: bool = False,
    ):
        self.field = field
        if _raw:
            self.rows = tuple(tuple(r) for r in rows)
        else:
            self.rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
            if ncols is not None and ncols != self.ncols:
                raise DimensionMismatchError("ncols disagrees with row length")
        else:
            # A matrix with no rows still remembers its width.
            self.ncols = 0 if ncols is None else ncols
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionMismatchError("ragged rows in matrix")

    @staticmethod
    def zeros(field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero()
        return Mat(
            field, [[z] * ncols for _ in range(nrows)], ncols=ncols, _raw=True
        )

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        z, o = field.zero(), field.one()
        return Mat(
            field,
            [[o if i == j else z for j in range(n)] for i in range(n)],
            _raw=True,
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(self.field.to_string(x) for x in row) for row in self.rows
        )
        return f"Mat({self.field.name}, {self.nrows}x{self.ncols}: [{body}])"

    def _check_same_field(self, other: "Mat") -> None:
        if self.field != other.field:
            raise FieldMismatchError(
                f"mixed fields {self.field.name} and {other.field.name}"
            )

    def add(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatchError("addition shape mismatch")
        f = self.field
        return Mat(
            f,
            [
                [f.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            ncols=self.ncols,
            _raw=True,
        )

    def sub(self, other: "Mat") -> "Mat":
        return self.add(other.neg())

    def neg(self) -> "Mat":
        f = self.field
        return Mat(
            f,
            [[f.neg(a) for a in row] for row in self.rows],
            ncols=self.ncols,
            _raw=True,
        )

    def scale(self, c) -> "Mat":
        f = self.field
        c = f.coerce(c)
        return Mat(
            f,
            [[f.mul(c, a) for a in row] for row in self.rows],
            ncols=self.ncols,
            _raw=True,
        )

    def mul(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}"
            )
        f = self.field
        z = f.zero()
        cols = other.ncols
        out = []
        for ra in self.rows:
            acc = [z] * cols
            for a, rb in zip(ra, other.rows):
                if f.is_zero(a):
                    continue
                acc = [f.add(x, f.mul(a, b)) for x, b in zip(acc, rb)]
            out.append(acc)
        return Mat(f, out, ncols=cols, _raw=True)

    def transpose(self) -> "Mat":
        if self.nrows == 0 or self.ncols == 0:
            return Mat(
                self.field,
                [() for _ in range(self.ncols)],
                ncols=self.nrows,
                _raw=True,
            )
        return Mat(self.field, list(zip(*self.rows)), _raw=True)

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for row in self.rows for x in row)

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def flatten(self) -> tuple:
        return tuple(x for row in self.rows for x in row)


def hstack(field: Field, mats: Sequence[Mat], nrows: Optional[int] = None) -> Mat:
    """Concatenate matrices left to right; all must share a row count."""
    mats = [m for m in mats]
    if not mats:
        if nrows is None:
            raise DimensionMismatchError("hstack of nothing needs an explicit nrows")
        return Mat.zeros(field, nrows, 0)
    n = mats[0].nrows
    for m in mats:
        if m.field != field:
            raise FieldMismatchError("hstack across fields")
        if m.nrows != n:
            raise DimensionMismatchError("hstack row-count mismatch")
    rows = [sum((list(m.rows[i]) for m in mats), []) for i in range(n)]
    return Mat(field, rows, ncols=sum(m.ncols for m in mats), _raw=True)


def vstack(field: Field, mats: Sequence[Mat], ncols: Optional[int] = None) -> Mat:
    """Concatenate matrices top to bottom; all must share a column count."""
    mats = [m for m in mats]
    if not mats:
        if ncols is None:
            raise DimensionMismatchError("vstack of nothing needs an explicit ncols")
        return Mat.zeros(field, 0, ncols)
    c = mats[0].ncols
    rows = []
    for m in mats:
        if m.field != field:
            raise FieldMismatchError("vstack across fields")
        if m.ncols != c:
            raise DimensionMismatchError("vstack column-count mismatch")
        rows.extend(m.rows)
    return Mat(field, rows, ncols=c, _raw=True)


def block_diag(field: Field, mats: Sequence[Mat]) -> Mat:
    total_r = sum(m.nrows for m in mats)
    total_c = sum(m.ncols for m in mats)
    out = [[field.zero()] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for m in mats:
        if m.field != field:
            raise FieldMismatchError("block_diag across fields")
        for i, row in enumerate(m.rows):
            out[r0 + i][c0 : c0 + m.ncols] = row
        r0 += m.nrows
        c0 += m.ncols
    return Mat(field, out, ncols=total_c, _raw=True)


@dataclass(frozen=True)
class RrefResult:
    rank: int
    reduced: Mat
    pivot_cols: tuple


def _rref_rows(field: Field, rows):
    """Row reduce a list of row lists in place; return (rank, rows, pivots)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not field.is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(factor, y))
                    for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, rows, tuple(pivots)


def rref(m: Mat) -> RrefResult:
    """Reduced row echelon form with the zero rows kept at the bottom."""
    rank, rows, pivots = _rref_rows(m.field, [list(r) for r in m.rows])
    return RrefResult(rank, Mat(m.field, rows, ncols=m.ncols, _raw=True), pivots)


def row_space(m: Mat) -> Mat:
    """A canonical basis of the row space: the nonzero rref rows."""
    res = rref(m)
    return Mat(m.field, res.reduced.rows[: res.rank], ncols=m.ncols, _raw=True)


def row_space_with_pivots(m: Mat):
    res = rref(m)
    return (
        Mat(m.field, res.reduced.rows[: res.rank], ncols=m.ncols, _raw=True),
        res.pivot_cols,
    )


def rank(m: Mat) -> int:
    return rref(m).rank


def solve(m: Mat, rhs: Mat) -> Optional[Mat]:
    """One exact solution x of m @ x = rhs, or None if inconsistent.

    rhs may have several columns; the result then solves all of them at
    once.  Free variables are set to zero, so the answer is deterministic.
    """
    m._check_same_field(rhs)
    if m.nrows != rhs.nrows:
        raise DimensionMismatchError("solve shape mismatch")
    field = m.field
    aug = [list(a) + list(b) for a, b in zip(m.rows, rhs.rows)]
    if not aug:
        return Mat.zeros(field, m.ncols, rhs.ncols)
    rank_, rows, pivots = _rref_rows(field, aug)
    for c in pivots:
        if c >= m.ncols:
            return None
    z = field.zero()
    out = [[z] * rhs.ncols for _ in range(m.ncols)]
    for r, c in enumerate(pivots):
        out[c] = rows[r][m.ncols :]
    return Mat(field, out, ncols=rhs.ncols, _raw=True)


def kernel_basis(m: Mat) -> list:
    """Basis of {x : m @ x = 0} as a list of column matrices.

    The basis is the canonical one read off the rref: one vector per free
    column, with a 1 in that column's slot.
    """
    field = m.field
    if m.ncols == 0:
        return []
    res = rref(m)
    pivot_set = set(res.pivot_cols)
    free_cols = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [field.zero()] * m.ncols
        vec[fc] = field.one()
        for r, pc in enumerate(res.pivot_cols):
            vec[pc] = field.neg(res.reduced[r, fc])
        basis.append(Mat(field, [[x] for x in vec], _raw=True))
    return basis


def left_kernel_basis(m: Mat) -> list:
    """Basis of {y : y @ m = 0} as a list of row matrices."""
    return [k.transpose() for k in kernel_basis(m.transpose())]


def left_kernel_rows(m: Mat) -> Mat:
    """The left kernel as a single canonical matrix of stacked rows."""
    ker = left_kernel_basis(m)
    stacked = vstack(m.field, ker, ncols=m.nrows)
    return row_space(stacked)


def reduce_row(field: Field, row, rref_rows, pivots):
    """Subtract rref rows to clear the pivot coordinates of a row vector."""
    out = list(row)
    for r, c in enumerate(pivots):
        coef = out[c]
        if field.is_zero(coef):
            continue
        ref = rref_rows[r]
        out = [field.sub(x, field.mul(coef, y)) for x, y in zip(out, ref)]
    return out


def det(m: Mat):
    """Determinant of a square matrix by fraction-free-enough elimination."""
    if m.nrows != m.ncols:
        raise DimensionMismatchError("determinant of a non-square matrix")
    field = m.field
    n = m.nrows
    if n == 0:
        return field.one()
    rows = [list(r) for r in m.rows]
    sign_flip = False
    acc = field.one()
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not field.is_zero(rows[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            return field.zero()
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign_flip = not sign_flip
        pivot = rows[c][c]
        acc = field.mul(acc, pivot)
        inv = field.inv(pivot)
        for i in range(c + 1, n):
            factor = field.mul(rows[i][c], inv)
            if field.is_zero(factor):
                continue
            rows[i] = [
                field.sub(x, field.mul(factor, y))
                for x, y in zip(rows[i], rows[c])
            ]
    return field.neg(acc) if sign_flip else acc
