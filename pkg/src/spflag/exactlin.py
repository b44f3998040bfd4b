"""Exact dense linear algebra over Q and over small prime fields.

Everything here is exact: rationals are ``fractions.Fraction`` in lowest
terms, and prime-field scalars are plain ints reduced mod p (p in 2, 3, 5).
No floats anywhere.

Conventions:

* Vectors are rows.  A subspace is the row space of its basis matrix.
* ``Matrix.nullspace()`` returns a basis (as rows, in reduced row echelon
  form) of ``{x : M @ x^T = 0}`` — equivalently the annihilator of the row
  space of ``M`` under the dot product.
* ``Subspace`` stores the unique reduced-row-echelon basis, so subspace
  equality is entrywise equality of bases.

JSON: matrices serialize as arrays of arrays of decimal strings (``"3/2"``,
``"2"``); fields serialize as the tags ``"Q"``, ``"F2"``, ``"F3"``, ``"F5"``.

The module also exposes a small pure-integer fraction-free elimination
toolkit (``int_rref``, ``int_nullspace``) used by the heavier solvers so
that ``Fraction`` objects stay out of the cubic inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "QQ",
    "GF2",
    "GF3",
    "GF5",
    "field_for_tag",
    "Matrix",
    "Subspace",
    "solve",
    "int_rref",
    "int_nullspace",
]


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class Field:
    """Common interface for the exact scalar domains."""

    tag: str

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def coerce(self, x):
        """Turn an int / Fraction / string into a scalar of this field."""
        raise NotImplementedError

    def render(self, x) -> str:
        """Decimal-string form used in JSON."""
        return str(x)

    def __repr__(self) -> str:
        return f"<field {self.tag}>"


class RationalField(Field):
    """The rationals, represented as ``fractions.Fraction`` in lowest terms."""

    tag = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def is_zero(self, x: Fraction) -> bool:
        return x == 0

    def add(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def sub(self, x: Fraction, y: Fraction) -> Fraction:
        return x - y

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def neg(self, x: Fraction) -> Fraction:
        return -x

    def inv(self, x: Fraction) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")


class PrimeField(Field):
    """Integers mod a small prime, scalars stored as ints in ``0..p-1``."""

    def __init__(self, p: int) -> None:
        if p not in (2, 3, 5):
            raise ValueError(f"unsupported prime field F_{p} (supported: 2, 3, 5)")
        self.p = p
        self.tag = f"F{p}"

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def is_zero(self, x: int) -> bool:
        return x % self.p == 0

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.p

    def neg(self, x: int) -> int:
        return (-x) % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def coerce(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return int(x) % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")


QQ = RationalField()
GF2 = PrimeField(2)
GF3 = PrimeField(3)
GF5 = PrimeField(5)

_FIELDS: dict[str, Field] = {f.tag: f for f in (QQ, GF2, GF3, GF5)}


def field_for_tag(tag: str) -> Field:
    """Look up a field by its JSON tag ('Q', 'F2', 'F3', 'F5')."""
    try:
        return _FIELDS[tag]
    except KeyError:
        raise ValueError(
            f"unknown field tag {tag!r} (expected one of {sorted(_FIELDS)})"
        ) from None


# ---------------------------------------------------------------------------
# Pure-integer fraction-free elimination (the performance core)
# ---------------------------------------------------------------------------


def _row_primitive(row: list[int]) -> list[int]:
    """Divide an integer row by the gcd of its entries (sign untouched)."""
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def int_rref(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Canonical integer echelon form of an integer matrix.

    Returns ``(reduced_rows, pivot_columns)``.  Each returned row is
    primitive (entry gcd 1) with a positive pivot entry, every pivot column
    is zero elsewhere, and rows are ordered by pivot column.  Over Q this is
    the reduced row echelon form rescaled row-by-row to clear denominators,
    so it is a canonical form for the row space and two row spaces are equal
    iff their forms are identical.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        # Pick the not-yet-used row with the smallest non-zero magnitude in
        # this column: small pivots keep fraction-free growth down.
        best = -1
        best_abs = 0
        for i in range(r, nrows):
            v = work[i][c]
            if v:
                a = v if v > 0 else -v
                if best < 0 or a < best_abs:
                    best, best_abs = i, a
                    if a == 1:
                        break
        if best < 0:
            continue
        work[r], work[best] = work[best], work[r]
        piv_row = work[r]
        piv = piv_row[c]
        for i in range(nrows):
            if i == r:
                continue
            a = work[i][c]
            if a:
                g = gcd(piv, a)
                pf = piv // g
                af = a // g
                row_i = work[i]
                work[i] = _row_primitive(
                    [pf * x - af * y for x, y in zip(row_i, piv_row)]
                )
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out: list[list[int]] = []
    for i in range(r):
        row = _row_primitive(work[i])
        if row[pivots[i]] < 0:
            row = [-v for v in row]
        out.append(row)
    return out, pivots


def int_nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Primitive integer basis of ``{x : rows @ x^T = 0}``, canonicalized.

    The result is the canonical integer echelon form of the kernel (same
    normalization as ``int_rref``); an empty list means the kernel is zero.
    """
    red, pivots = int_rref(rows, ncols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    if not free_cols:
        return []
    basis: list[list[int]] = []
    for f in free_cols:
        # x_f = L, x_{pivot col of row i} = -L * red[i][f] / red[i][pivot_i]
        denoms = [red[i][pivots[i]] for i in range(len(red)) if red[i][f]]
        scale = 1
        for d in denoms:
            scale = scale * d // gcd(scale, d)
        vec = [0] * ncols
        vec[f] = scale
        for i, p in enumerate(pivots):
            if red[i][f]:
                vec[p] = -red[i][f] * (scale // red[i][p])
        basis.append(_row_primitive(vec))
    canon, _ = int_rref(basis, ncols)
    return canon


def _clear_denominators(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row to a primitive integer row."""
    lcm = 1
    for v in row:
        d = v.denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(v * lcm) for v in row]
    return _row_primitive(ints)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over one of the exact fields.

    ``rows`` may be empty, which is why ``ncols`` is stored explicitly.
    """

    field: Field
    rows: tuple[tuple, ...]
    ncols: int

    # -- constructors --------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        coerced = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        if coerced:
            widths = {len(r) for r in coerced}
            if len(widths) != 1:
                raise ValueError(f"ragged rows: widths {sorted(widths)}")
            width = widths.pop()
            if ncols is not None and ncols != width:
                raise ValueError(f"ncols={ncols} but rows have width {width}")
            ncols = width
        elif ncols is None:
            raise ValueError("an empty matrix needs an explicit ncols")
        return cls(field, coerced, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one(), field.zero()
        return cls(
            field,
            tuple(
                tuple(one if i == j else zero for j in range(n)) for i in range(n)
            ),
            n,
        )

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero()
        return cls(field, tuple(tuple(zero for _ in range(ncols)) for _ in range(nrows)), ncols)

    # -- shape and access ----------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def is_zero(self) -> bool:
        fz = self.field.is_zero
        return all(fz(v) for row in self.rows for v in row)

    # -- arithmetic -------------------------------------------------------

    def _check_same_field(self, other: "Matrix") -> None:
        if self.field.tag != other.field.tag:
            raise ValueError(f"field mismatch: {self.field.tag} vs {other.field.tag}")

    def add(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in add")
        f = self.field
        return Matrix(
            f,
            tuple(
                tuple(f.add(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
            self.ncols,
        )

    def sub(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in sub")
        f = self.field
        return Matrix(
            f,
            tuple(
                tuple(f.sub(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
            self.ncols,
        )

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(
            f, tuple(tuple(f.mul(c, v) for v in row) for row in self.rows), self.ncols
        )

    def mul(self, other: "Matrix") -> "Matrix":
        """Matrix product ``self @ other``."""
        self._check_same_field(other)
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch in mul: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        f = self.field
        zero = f.zero()
        cols = tuple(zip(*other.rows)) if other.rows else tuple()
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    acc = f.add(acc, f.mul(a, b))
                new_row.append(acc)
            out.append(tuple(new_row))
        return Matrix(f, tuple(out), other.ncols)

    def transpose(self) -> "Matrix":
        if not self.rows:
            return Matrix(self.field, tuple(() for _ in range(self.ncols)), 0)
        return Matrix(self.field, tuple(zip(*self.rows)), self.nrows)

    def stack(self, other: "Matrix") -> "Matrix":
        """Vertical concatenation."""
        self._check_same_field(other)
        if self.ncols != other.ncols:
            raise ValueError("column-count mismatch in stack")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    # -- elimination -----------------------------------------------------

    def _rref_with_pivots(self) -> tuple["Matrix", list[int]]:
        f = self.field
        if f.tag == "Q":
            int_rows = [_clear_denominators(row) for row in self.rows]
            red, pivots = int_rref(int_rows, self.ncols)
            out_rows = []
            for i, row in enumerate(red):
                piv = Fraction(row[pivots[i]])
                out_rows.append(tuple(Fraction(v) / piv for v in row))
            return Matrix(f, tuple(out_rows), self.ncols), pivots
        # Generic path (prime fields): classical Gauss–Jordan.
        work = [list(row) for row in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, len(work)) if not f.is_zero(work[i][c])), None)
            if p is None:
                continue
            work[r], work[p] = work[p], work[r]
            inv = f.inv(work[r][c])
            work[r] = [f.mul(inv, v) for v in work[r]]
            for i in range(len(work)):
                if i != r and not f.is_zero(work[i][c]):
                    m = work[i][c]
                    work[i] = [f.sub(v, f.mul(m, w)) for v, w in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
            if r == len(work):
                break
        return Matrix(f, tuple(tuple(row) for row in work[:r]), self.ncols), pivots

    def rref(self) -> tuple["Matrix", int]:
        """Reduced row echelon form (zero rows dropped) and the rank."""
        reduced, pivots = self._rref_with_pivots()
        return reduced, len(pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def nullspace(self) -> "Matrix":
        """RREF basis of ``{x : self @ x^T = 0}`` (rows of the result)."""
        f = self.field
        if f.tag == "Q":
            int_rows = [_clear_denominators(row) for row in self.rows]
            kernel = int_nullspace(int_rows, self.ncols)
            out = []
            for row in kernel:
                piv = next(v for v in row if v)
                out.append(tuple(Fraction(v) / Fraction(piv) for v in row))
            return Matrix(f, tuple(out), self.ncols)
        reduced, pivots = self._rref_with_pivots()
        pivot_set = set(pivots)
        free_cols = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        one = f.one()
        zero = f.zero()
        for c in free_cols:
            vec = [zero] * self.ncols
            vec[c] = one
            for i, p in enumerate(pivots):
                vec[p] = f.neg(reduced.rows[i][c])
            basis.append(tuple(vec))
        ker = Matrix(f, tuple(basis), self.ncols)
        return ker._rref_with_pivots()[0]

    # -- JSON ------------------------------------------------------------

    def to_json(self) -> list[list[str]]:
        """Array-of-arrays-of-strings form (field tag carried by the caller)."""
        return [[self.field.render(v) for v in row] for row in self.rows]

    @classmethod
    def from_json(cls, field: Field, data: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        return cls.from_rows(field, data, ncols=ncols)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.render(v) for v in row) for row in self.rows)
        return f"Matrix<{self.field.tag},{self.nrows}x{self.ncols}>[{body}]"


def solve(a: Matrix, b: Sequence) -> tuple[tuple | None, Matrix]:
    """Solve ``a @ x^T = b^T`` for a row vector ``x``.

    Returns ``(particular, nullspace)`` where ``particular`` is one solution
    (or ``None`` if the system is inconsistent) and ``nullspace`` is the
    RREF basis of the homogeneous solutions ``{x : a @ x^T = 0}``.
    """
    f = a.field
    b_vec = [f.coerce(v) for v in b]
    if len(b_vec) != a.nrows:
        raise ValueError(f"rhs has length {len(b_vec)}, expected {a.nrows}")
    kernel = a.nullspace()
    augmented = Matrix(
        f,
        tuple(row + (bv,) for row, bv in zip(a.rows, b_vec)),
        a.ncols + 1,
    )
    reduced, pivots = augmented._rref_with_pivots()
    if a.ncols in pivots:
        return None, kernel
    particular = [f.zero()] * a.ncols
    for i, p in enumerate(pivots):
        particular[p] = reduced.rows[i][a.ncols]
    return tuple(particular), kernel


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^ambient_dim``, stored as its unique RREF basis.

    Equality is structural: two subspaces are equal iff their canonical
    bases agree entrywise (hence iff they are the same subspace).
    """

    field: Field
    ambient_dim: int
    basis: Matrix

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, ambient_dim: int, rows: Iterable[Iterable]) -> "Subspace":
        mat = Matrix.from_rows(field, rows, ncols=ambient_dim)
        if mat.ncols != ambient_dim:
            raise ValueError(f"rows have width {mat.ncols}, ambient is {ambient_dim}")
        reduced, _ = mat.rref()
        return cls(field, ambient_dim, reduced)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix(field, tuple(), ambient_dim))

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim))

    # -- queries -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def contains_vector(self, v: Sequence) -> bool:
        f = self.field
        vec = Matrix.from_rows(f, [v], ncols=self.ambient_dim)
        stacked = self.basis.stack(vec)
        return stacked.rank() == self.dim

    def contains(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        stacked = self.basis.stack(other.basis)
        return stacked.rank() == self.dim

    # -- lattice operations -------------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_rows(
            self.field, self.ambient_dim, self.basis.rows + other.basis.rows
        )

    def annihilator(self) -> "Subspace":
        """Dot-product annihilator ``{x : b · x = 0 for all basis rows b}``."""
        return Subspace(self.field, self.ambient_dim, self.basis.nullspace())

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection, computed through the double annihilator."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        ann_sum = self.annihilator().sum(other.annihilator())
        return ann_sum.annihilator()

    def apply(self, m: Matrix) -> "Subspace":
        """Image of the subspace under ``v -> v @ m`` (row convention)."""
        if m.nrows != self.ambient_dim:
            raise ValueError("matrix shape does not match ambient dimension")
        image = self.basis.mul(m)
        return Subspace.from_rows(self.field, m.ncols, image.rows)

    # -- JSON ------------------------------------------------------------

    def to_json(self) -> list[list[str]]:
        return self.basis.to_json()

    @classmethod
    def from_json(cls, field: Field, ambient_dim: int, data: Sequence[Sequence]) -> "Subspace":
        return cls.from_rows(field, ambient_dim, data)

    def __repr__(self) -> str:
        return f"Subspace<{self.field.tag},dim {self.dim} of {self.ambient_dim}>"
