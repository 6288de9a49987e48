"""Skew-symmetric bilinear forms and their subspace toolkit.

A presymplectic space is Q^n with a (possibly degenerate) skew form.  This
module computes orthogonals and radicals, tests isotropy and the lagrangian
property, certifies presymplectomorphisms, builds symplectic bases by a skew
Gram-Schmidt procedure, and splits the space along an isotropic subspace into
radical ⊕ symplectic ⊕ (lagrangian ⊕ dual lagrangian) parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from isopair.linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    _int_grid,
    _int_rows,
    _kernel_rows,
    _mul_int,
    complement_within,
    kernel,
    rref,
)

_HALF = Fraction(1, 2)


class NotSymplecticError(ValueError):
    pass


class NotIsotropicError(ValueError):
    pass


class DegenerateRestrictionError(ValueError):
    pass


@dataclass(frozen=True)
class PresymplecticSpace:
    """Q^dim carrying the skew-symmetric form matrix `omega`."""

    dim: int
    omega: Matrix

    def __post_init__(self) -> None:
        if self.omega.rows != self.dim or self.omega.cols != self.dim:
            raise DimensionMismatch("form matrix must be dim x dim")
        ent = self.omega.entries
        for i in range(self.dim):
            for j in range(i, self.dim):
                if ent[i][j] != -ent[j][i]:
                    raise ValueError("form matrix is not skew-symmetric")

    @classmethod
    def standard(cls, dim: int, rank: int) -> "PresymplecticSpace":
        """The standard form of even rank: ω(e_i, e_{k+i}) = 1, rest zero."""
        if rank % 2 or rank > dim or rank < 0:
            raise ValueError("rank must be even and at most dim")
        k = rank // 2
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(k):
            rows[i][k + i] = Fraction(1)
            rows[k + i][i] = Fraction(-1)
        return cls(dim, Matrix.from_rows(rows, cols=dim))

    @classmethod
    def zero_form(cls, dim: int) -> "PresymplecticSpace":
        return cls(dim, Matrix.zero(dim, dim))

    @classmethod
    def _unchecked(cls, dim: int, omega: Matrix) -> "PresymplecticSpace":
        """Skip the skewness re-check for forms skew by construction
        (standard blocks and their congruence images)."""
        space = object.__new__(cls)
        object.__setattr__(space, "dim", dim)
        object.__setattr__(space, "omega", omega)
        return space

    def form_value(self, u: Sequence, v: Sequence) -> Fraction:
        """ω(u, v) for row vectors u, v."""
        ent = self.omega.entries
        total = Fraction(0)
        for i, x in enumerate(u):
            if x:
                row = ent[i]
                total += x * sum(row[j] * y for j, y in enumerate(v) if y)
        return total

    def gram(self, vectors: Sequence[Sequence]) -> Matrix:
        """Matrix of ω over an ordered list of row vectors."""
        vals = [[self.form_value(u, v) for v in vectors] for u in vectors]
        return Matrix.from_rows(vals, cols=len(vectors))


@dataclass(frozen=True)
class LinearMap:
    """A linear map between coordinate spaces; `matrix` is target x source
    and acts on column vectors."""

    source_dim: int
    target_dim: int
    matrix: Matrix

    def __post_init__(self) -> None:
        if self.matrix.rows != self.target_dim or self.matrix.cols != self.source_dim:
            raise DimensionMismatch("map matrix shape does not match declared dimensions")

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, Matrix.identity(n))

    def apply_vector(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.source_dim:
            raise DimensionMismatch("vector length does not match source dimension")
        ent = self.matrix.entries
        return tuple(sum((row[j] * x for j, x in enumerate(v) if x), Fraction(0))
                     for row in ent)

    def apply_subspace(self, s: Subspace) -> Subspace:
        if s.ambient_dim != self.source_dim:
            raise DimensionMismatch("subspace ambient does not match source dimension")
        return Subspace.span(self.target_dim,
                             [self.apply_vector(row) for row in s.basis.entries])

    def is_invertible(self) -> bool:
        return (self.source_dim == self.target_dim
                and self.matrix.rank() == self.source_dim)

    def inverse(self) -> "LinearMap":
        return LinearMap(self.target_dim, self.source_dim, self.matrix.inverse())

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self ∘ inner."""
        if inner.target_dim != self.source_dim:
            raise DimensionMismatch("composition dimensions do not match")
        return LinearMap(inner.source_dim, self.target_dim, self.matrix @ inner.matrix)


@dataclass(frozen=True)
class ReductionSplit:
    """Four-part splitting along an isotropic subspace I:
    ambient = radical ⊕ E ⊕ (L ⊕ L'), with E and L ⊕ L' symplectic and
    L (a complement of I ∩ radical in I) lagrangian in L ⊕ L'."""

    radical_part: Subspace
    symplectic_complement: Subspace
    lagrangian: Subspace
    dual_lagrangian: Subspace

    def parts(self) -> tuple[Subspace, Subspace, Subspace, Subspace]:
        return (self.radical_part, self.symplectic_complement,
                self.lagrangian, self.dual_lagrangian)


def _check_ambient(space: PresymplecticSpace, w: Subspace) -> None:
    if w.ambient_dim != space.dim:
        raise DimensionMismatch(
            f"subspace ambient {w.ambient_dim} does not match space dimension {space.dim}")


def _omega_int(space: PresymplecticSpace) -> list[list[int]]:
    return _int_grid(space.omega.entries)[0]


def _is_isotropic_rows(omega_int: list[list[int]], rows: list[list[int]]) -> bool:
    """Whether the form (given as a uniformly scaled integer grid) vanishes
    on the span of the rows."""
    n = len(omega_int)
    prod = _mul_int(rows, omega_int, n)
    for rp in prod:
        for rv in rows:
            if sum(x * y for x, y in zip(rp, rv)):
                return False
    return True


def orthogonal(space: PresymplecticSpace, w: Subspace) -> Subspace:
    """The ω-orthogonal {v : ω(v, x) = 0 for all x in w}."""
    _check_ambient(space, w)
    rows = _mul_int(_int_rows(w.basis.entries), _omega_int(space), space.dim)
    return _kernel_rows(rows, space.dim)


def radical(space: PresymplecticSpace) -> Subspace:
    """Degeneracy directions of ω: the orthogonal of the whole space."""
    return kernel(space.omega)


def is_isotropic(space: PresymplecticSpace, w: Subspace) -> bool:
    """True iff ω vanishes identically on w."""
    _check_ambient(space, w)
    return _is_isotropic_rows(_omega_int(space), _int_rows(w.basis.entries))


def is_lagrangian(space: PresymplecticSpace, w: Subspace) -> bool:
    """In a symplectic space: isotropic of half the ambient dimension."""
    _check_ambient(space, w)
    if not radical(space).is_zero():
        raise NotSymplecticError("lagrangian test requires a non-degenerate form")
    return is_isotropic(space, w) and 2 * w.dim == space.dim


def is_presymplectomorphism(phi: LinearMap, src: PresymplecticSpace,
                            dst: PresymplecticSpace) -> bool:
    """True iff phi is invertible and pulls the target form back to the source."""
    if phi.source_dim != src.dim or phi.target_dim != dst.dim:
        raise DimensionMismatch("map endpoints do not match the given spaces")
    if not phi.is_invertible():
        return False
    p = phi.matrix
    return (p.transpose() @ dst.omega @ p) == src.omega


def _standard_gram(k: int) -> Matrix:
    rows = [[Fraction(0)] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        rows[i][k + i] = Fraction(1)
        rows[k + i][i] = Fraction(-1)
    return Matrix.from_rows(rows, cols=2 * k)


def symplectic_basis(space: PresymplecticSpace, w: Subspace,
                     lagrangian: Subspace | None = None
                     ) -> tuple[tuple[Fraction, ...], ...]:
    """An ordered basis (u_1..u_k, p_1..p_k) of the symplectic subspace w with
    ω(u_i, p_j) = δ_ij and all other pairings zero.

    If `lagrangian` is given it must be lagrangian in (w, ω|w); the u-vectors
    are then exactly its canonical basis rows.  Raises
    DegenerateRestrictionError if ω|w is degenerate.
    """
    _check_ambient(space, w)
    if lagrangian is None:
        us: list = []
        ps: list = []
        pool = [tuple(row) for row in w.basis.entries]
        while pool:
            u = pool.pop(0)
            partner = -1
            for idx, v in enumerate(pool):
                if space.form_value(u, v):
                    partner = idx
                    break
            if partner < 0:
                raise DegenerateRestrictionError(
                    "form restricted to the subspace is degenerate")
            v = pool.pop(partner)
            c = space.form_value(u, v)
            p = tuple(x / c for x in v)
            projected = []
            for x in pool:
                cp = space.form_value(x, p)
                cu = space.form_value(x, u)
                projected.append(tuple(
                    xe - cp * ue + cu * pe for xe, ue, pe in zip(x, u, p)))
            pool = projected
            us.append(u)
            ps.append(p)
        basis = tuple(us) + tuple(ps)
    else:
        _check_ambient(space, lagrangian)
        if not w.contains(lagrangian):
            raise ValueError("prescribed lagrangian is not inside the subspace")
        if not is_isotropic(space, lagrangian) or 2 * lagrangian.dim != w.dim:
            raise DegenerateRestrictionError(
                "prescribed subspace is not lagrangian in the restriction")
        k = lagrangian.dim
        a_rows = [tuple(row) for row in lagrangian.basis.entries]
        w_rows = [tuple(row) for row in w.basis.entries]
        d = len(w_rows)
        # Dual family: q_j in w with ω(a_i, q_j) = δ_ij, then correct the q's
        # against each other so they span an isotropic complement.
        g = lagrangian.basis @ space.omega @ w.basis.transpose()
        x = _solve_right_identity(g)
        if x is None:
            raise DegenerateRestrictionError(
                "form restricted to the subspace is degenerate")
        qs = []
        for j in range(k):
            vec = [Fraction(0)] * space.dim
            for t in range(d):
                c = x[t][j]
                if c:
                    row = w_rows[t]
                    for m in range(space.dim):
                        vec[m] += c * row[m]
            qs.append(tuple(vec))
        ps = []
        for j in range(k):
            corr = [-_HALF * space.form_value(qs[j], qs[l]) for l in range(k)]
            vec = list(qs[j])
            for l, c in enumerate(corr):
                if c:
                    row = a_rows[l]
                    for m in range(space.dim):
                        vec[m] += c * row[m]
            ps.append(tuple(vec))
        basis = tuple(a_rows) + tuple(ps)

    assert space.gram(basis) == _standard_gram(len(basis) // 2)
    assert Subspace.span(space.dim, basis) == w
    return basis


def _solve_right_identity(g: Matrix) -> list[list[Fraction]] | None:
    """A particular solution X of g X = I, or None when g has deficient row rank."""
    k, d = g.rows, g.cols
    aug = Matrix.from_rows(
        [list(g.entries[i]) + [Fraction(1 if j == i else 0) for j in range(k)]
         for i in range(k)], cols=d + k)
    reduced, pivots, _ = rref(aug)
    if any(c >= d for c in pivots):
        return None
    x = [[Fraction(0)] * k for _ in range(d)]
    for r, c in enumerate(pivots):
        for j in range(k):
            x[c][j] = reduced.entries[r][d + j]
    return x


def reduction_split(space: PresymplecticSpace, i: Subspace, *,
                    within: Subspace | None = None,
                    e_must_contain: Subspace | None = None) -> ReductionSplit:
    """Split the ambient space along the isotropic subspace `i`.

    Produces R, E, L, L' with ambient = R ⊕ E ⊕ (L ⊕ L'): R the radical,
    E a complement of R + I inside I-orthogonal, L a complement of I ∩ R in I,
    L' a complement of R + I inside E-orthogonal.  All complements follow the
    deterministic rule of `complement_within`.

    `within` restricts every step to a subspace W (orthogonals are then taken
    inside W and the radical is W ∩ W-orthogonal); `e_must_contain` forces a
    prescribed subspace into E.
    """
    _check_ambient(space, i)
    n = space.dim
    w = within if within is not None else Subspace.full(n)
    if within is not None and not w.contains(i):
        raise DimensionMismatch("isotropic subspace must lie in the ambient subspace")
    if not is_isotropic(space, i):
        raise NotIsotropicError("subspace is not isotropic")
    zero = Subspace.zero(n)

    rad = (w & orthogonal(space, w)) if within is not None else radical(space)
    lag = complement_within(i & rad, i, zero)
    i_perp = orthogonal(space, i) & w if within is not None else orthogonal(space, i)
    r_plus_i = rad + i
    e = complement_within(r_plus_i, i_perp,
                          e_must_contain if e_must_contain is not None else zero)
    e_perp = orthogonal(space, e) & w if within is not None else orthogonal(space, e)
    dual = complement_within(r_plus_i, e_perp, zero)

    split = ReductionSplit(rad, e, lag, dual)
    assert _reduction_split_is_valid(space, w, split)
    return split


def _reduction_split_is_valid(space: PresymplecticSpace, w: Subspace,
                              split: ReductionSplit) -> bool:
    rad, e, lag, dual = split.parts()
    total = rad.dim + e.dim + lag.dim + dual.dim
    if total != w.dim or (rad + e + lag + dual) != w:
        return False
    if not (e & orthogonal(space, e)).is_zero():
        return False
    pair = lag + dual
    if not (pair & orthogonal(space, pair)).is_zero():
        return False
    return is_isotropic(space, lag) and 2 * lag.dim == pair.dim
