"""Exact rational matrices and subspaces of Q^n.

Scalars are `fractions.Fraction` throughout, so every rank and containment
decision is exact.  Subspaces are stored by their reduced-row-echelon basis,
which makes subspace equality a plain value comparison and makes every
downstream construction deterministic.

Internally the elimination work is done fraction-free on integer rows
(Bareiss pivoting); results are normalized back to canonical Fraction form
at operation boundaries.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Scalar = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Small integers dominate every matrix this package touches; interning their
# Fraction forms removes most constructor traffic from the hot paths.
_FRAC_CACHE = {i: Fraction(i) for i in range(-16, 17)}


def _frac(x: int) -> Fraction:
    f = _FRAC_CACHE.get(x)
    return f if f is not None else Fraction(x)


def _frac_div(x: int, p: int) -> Fraction:
    if p == 1:
        return _frac(x)
    q, r = divmod(x, p)
    if r == 0:
        return _frac(q)
    return Fraction(x, p)


class LinalgError(ValueError):
    pass


class DimensionMismatch(LinalgError):
    pass


class PreconditionError(LinalgError):
    """A documented operation precondition does not hold."""


# ---------------------------------------------------------------------------
# Integer fast path.
#
# Rows are plain lists of ints.  Scaling a row by a positive integer does not
# change its span, so any Fraction row can be cleared to a primitive integer
# row first.  These helpers carry all elimination work in the package.
# ---------------------------------------------------------------------------


def _primitive(row: list[int]) -> None:
    """Divide an integer row by the gcd of its entries, in place."""
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return
    if g > 1:
        for j, x in enumerate(row):
            row[j] = x // g


def _int_rows(rows: Iterable[Sequence]) -> list[list[int]]:
    """Scale rational rows to primitive integer rows (span preserved)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            d = x.denominator
            if d != 1:
                den = den * d // gcd(den, d)
        r = [int(x) if den == 1 else int(x * den) for x in row]
        _primitive(r)
        out.append(r)
    return out


def _int_grid(rows: Iterable[Sequence]) -> tuple[list[list[int]], int]:
    """Scale a whole rational grid by one positive integer.

    Unlike `_int_rows` the same factor is applied to every row, so the result
    represents the input matrix itself (up to the returned scale), not just
    its row span.
    """
    rows = [list(r) for r in rows]
    den = 1
    for row in rows:
        for x in row:
            d = x.denominator
            if d != 1:
                den = den * d // gcd(den, d)
    if den == 1:
        return [[int(x) for x in row] for row in rows], 1
    return [[int(x * den) for x in row] for row in rows], den


def _echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination (one-step Bareiss).

    Mutates `rows`; returns the nonzero echelon rows and their pivot columns.
    Intermediate entries are minors of the input, so growth stays polynomial.
    """
    m = len(rows)
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, m):
            ri = rows[i]
            a = ri[c]
            if a:
                for j in range(c + 1, ncols):
                    ri[j] = (p * ri[j] - a * prow[j]) // prev
                ri[c] = 0
            elif prev != p:
                for j in range(c + 1, ncols):
                    ri[j] = (p * ri[j]) // prev
        pivots.append(c)
        r += 1
        prev = p
    return rows[:r], pivots


def _rank(rows: list[list[int]], ncols: int) -> int:
    return len(_echelon(rows, ncols)[1])


def _rref(rows: list[list[int]], ncols: int) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    """Canonical reduced row echelon form of integer rows, over Q."""
    ech, pivots = _echelon(rows, ncols)
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        prow = ech[k]
        p = prow[c]
        for i in range(k):
            ri = ech[i]
            a = ri[c]
            if a:
                for j in range(ncols):
                    ri[j] = p * ri[j] - a * prow[j]
                _primitive(ri)
    out = []
    for k, c in enumerate(pivots):
        prow = ech[k]
        p = prow[c]
        out.append(tuple(_frac_div(x, p) for x in prow))
    return out, pivots


def _zassenhaus(a_rows: list[list[int]], b_rows: list[list[int]], n: int
                ) -> tuple[list[list[int]], int]:
    """Intersection of two row spans.

    Returns primitive integer rows spanning the intersection, plus the
    dimension of the sum (read off the same elimination for free).
    """
    big = [row + row for row in a_rows] + [row + [0] * n for row in b_rows]
    ech, pivots = _echelon(big, 2 * n)
    inter = []
    sum_dim = 0
    for k, c in enumerate(pivots):
        if c < n:
            sum_dim += 1
        else:
            row = ech[k][n:]
            _primitive(row)
            inter.append(row)
    return inter, sum_dim


def _mul_int(a_rows: list[list[int]], b_rows: list[list[int]], bcols: int) -> list[list[int]]:
    """Integer matrix product: (len(a) x k) @ (k x bcols)."""
    out = []
    for ra in a_rows:
        acc = [0] * bcols
        for t, x in enumerate(ra):
            if x:
                rb = b_rows[t]
                for j in range(bcols):
                    acc[j] += x * rb[j]
        out.append(acc)
    return out


class _Echelon:
    """Incremental independence filter over integer rows."""

    def __init__(self, ncols: int) -> None:
        self.ncols = ncols
        self.rows: list[list[int]] = []   # sorted by pivot column
        self.pivots: list[int] = []

    def add(self, row: Sequence[int]) -> bool:
        """Reduce `row` against the accumulated rows; keep it if independent."""
        v = list(row)
        ncols = self.ncols
        for k, c in enumerate(self.pivots):
            if v[c]:
                prow = self.rows[k]
                p = prow[c]
                a = v[c]
                for j in range(ncols):
                    v[j] = p * v[j] - a * prow[j]
                _primitive(v)
        lead = -1
        for j in range(ncols):
            if v[j]:
                lead = j
                break
        if lead < 0:
            return False
        at = bisect_left(self.pivots, lead)
        self.pivots.insert(at, lead)
        self.rows.insert(at, v)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# Matrices.
# ---------------------------------------------------------------------------


def _coerce_row(row: Sequence, cols: int) -> tuple[Fraction, ...]:
    if len(row) != cols:
        raise DimensionMismatch(f"row has {len(row)} entries, expected {cols}")
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in row)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over Q, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise DimensionMismatch("entry grid does not match declared row count")
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("entry grid does not match declared column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(_coerce_row(r, cols) for r in rows))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((_ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(
            tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(zip(*self.entries)) if self.entries else ((),) * self.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix sizes differ")
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols,
                      tuple(tuple(-a for a in row) for row in self.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.cols
        out = []
        for ra in self.entries:
            acc = [_ZERO] * cols
            for t, x in enumerate(ra):
                if x:
                    rb = other.entries[t]
                    for j in range(cols):
                        acc[j] += x * rb[j]
            out.append(tuple(acc))
        return Matrix(self.rows, cols, tuple(out))

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def rank(self) -> int:
        return _rank(_int_rows(self.entries), self.cols)

    def det(self) -> Fraction:
        """Determinant via exact Gaussian elimination."""
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        det = _ONE
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if a[i][c]:
                    piv = i
                    break
            if piv < 0:
                return _ZERO
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            p = a[c][c]
            det *= p
            for i in range(c + 1, n):
                f = a[i][c] / p
                if f:
                    for j in range(c, n):
                        a[i][j] -= f * a[c][j]
        return det

    def inverse(self) -> "Matrix":
        """Exact inverse; raises LinalgError if singular."""
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = [list(self.entries[i]) + [_ONE if j == i else _ZERO for j in range(n)]
               for i in range(n)]
        aug_int = _int_rows(aug)
        reduced, pivots = _rref(aug_int, 2 * n)
        if list(pivots[:n]) != list(range(n)):
            raise LinalgError("matrix is singular")
        return Matrix(n, n, tuple(tuple(row[n:]) for row in reduced))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Unique reduced row echelon form of `m`, with pivot columns and rank.

    The result keeps the shape of `m` (zero rows stay at the bottom).
    """
    reduced, pivots = _rref(_int_rows(m.entries), m.cols)
    rank = len(pivots)
    rows = list(reduced) + [(_ZERO,) * m.cols] * (m.rows - rank)
    return Matrix(m.rows, m.cols, tuple(rows)), tuple(pivots), rank


def _kernel_rows(rows: list[list[int]], n: int) -> "Subspace":
    """Right null space of integer rows, as a subspace of Q^n."""
    reduced, pivots = _rref(rows, n)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    vecs = []
    for f in free:
        v = [_ZERO] * n
        v[f] = _ONE
        for k, c in enumerate(pivots):
            v[c] = -reduced[k][f]
        vecs.append(v)
    return Subspace.span(n, vecs)


def kernel(m: Matrix) -> "Subspace":
    """Right null space {v : m v = 0} as a subspace of Q^cols."""
    return _kernel_rows(_int_rows(m.entries), m.cols)


# ---------------------------------------------------------------------------
# Subspaces.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n, held by its canonical RREF basis.

    Two Subspace values are equal as sets iff they are equal as values.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self) -> None:
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatch("basis width does not match ambient dimension")
        if self.basis.rows > self.ambient_dim:
            raise DimensionMismatch("more basis rows than the ambient dimension allows")

    @classmethod
    def span(cls, ambient_dim: int, rows: Sequence[Sequence]) -> "Subspace":
        for row in rows:
            if len(row) != ambient_dim:
                raise DimensionMismatch(
                    f"vector has {len(row)} entries, expected {ambient_dim}")
        reduced, _ = _rref(_int_rows(rows), ambient_dim)
        return cls(ambient_dim, Matrix(len(reduced), ambient_dim, tuple(reduced)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix(0, ambient_dim, ()))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.basis.entries

    def is_zero(self) -> bool:
        return self.basis.rows == 0

    def _require_same_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        """Sum of subspaces: span of the union of the bases."""
        self._require_same_ambient(other)
        return Subspace.span(self.ambient_dim,
                             list(self.basis.entries) + list(other.basis.entries))

    def __and__(self, other: "Subspace") -> "Subspace":
        """Set-theoretic intersection (Zassenhaus on the stacked bases)."""
        self._require_same_ambient(other)
        n = self.ambient_dim
        inter, _ = _zassenhaus(_int_rows(self.basis.entries),
                               _int_rows(other.basis.entries), n)
        return Subspace.span(n, inter)

    def contains(self, inner: "Subspace") -> bool:
        """True iff every basis vector of `inner` lies in this subspace."""
        self._require_same_ambient(inner)
        if inner.dim > self.dim:
            return False
        stacked = _int_rows(self.basis.entries) + _int_rows(inner.basis.entries)
        return _rank(stacked, self.ambient_dim) == self.dim

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        stacked = _int_rows(list(self.basis.entries) + [list(v)])
        return _rank(stacked, self.ambient_dim) == self.dim

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(str(x) for x in row) for row in self.basis.entries)
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim}: [{rows}])"


def complement_within(s: Subspace, w: Subspace, must_contain: Subspace) -> Subspace:
    """A complement C of `s` inside `w` with `must_contain` ⊆ C.

    Deterministic rule: extend a basis of s ∪ must_contain by greedily adding
    the RREF basis vectors of w in pivot order; C is the span of the added
    vectors together with must_contain.

    Preconditions (each reported by name on failure): s ⊆ w,
    must_contain ⊆ w, and s ∩ must_contain = 0.
    """
    if not (s.ambient_dim == w.ambient_dim == must_contain.ambient_dim):
        raise DimensionMismatch("ambient dimensions differ")
    if not w.contains(s):
        raise PreconditionError("complement_within: s is not contained in w")
    if not w.contains(must_contain):
        raise PreconditionError("complement_within: must_contain is not contained in w")
    if not (s & must_contain).is_zero():
        raise PreconditionError("complement_within: s meets must_contain nontrivially")

    acc = _Echelon(w.ambient_dim)
    for row in _int_rows(s.basis.entries):
        acc.add(row)
    mc_rows = _int_rows(must_contain.basis.entries)
    for row in mc_rows:
        acc.add(row)
    added: list[list[int]] = []
    for row in _int_rows(w.basis.entries):
        if acc.add(list(row)):
            added.append(list(row))
    comp = Subspace.span(w.ambient_dim, [list(r) for r in mc_rows] + added)

    assert (s + comp) == w, "complement does not span"
    assert (s & comp).is_zero(), "complement meets the complemented subspace"
    assert comp.contains(must_contain), "complement misses the prescribed subspace"
    return comp
