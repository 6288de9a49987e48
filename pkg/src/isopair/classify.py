"""Classification of ordered isotropic pairs up to presymplectomorphism.

A pair (A, B) of isotropic subspaces of a presymplectic space decomposes as
an orthogonal direct sum of summands of ten elementary types, which refine
further into indecomposable blocks of dimension 1, 2 and 3.  The multiplicity
vector n of those blocks is a complete isomorphism invariant; it is related
to a ten-vector k of directly computable dimensions by a fixed unimodular
matrix, so n can also be read off as the integer solution of a linear system.

Both routes are implemented: `multiplicities` goes through the dimension
invariants and the inverse matrix, while `elementary_decompose` /
`refine_to_indecomposables` / `normal_form` construct the decomposition
explicitly together with a change-of-basis witness.  Tests cross-check the
two routes against each other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from isopair.linalg import (
    DimensionMismatch,
    LinalgError,
    Matrix,
    Subspace,
    _frac,
    _int_grid,
    _int_rows,
    _mul_int,
    _rank,
    _zassenhaus,
    complement_within,
    rref,
)
from isopair.presymplectic import (
    LinearMap,
    NotIsotropicError,
    PresymplecticSpace,
    _is_isotropic_rows,
    _omega_int,
    _solve_right_identity,
    is_presymplectomorphism,
    orthogonal,
    radical,
    reduction_split,
    symplectic_basis,
)


class InternalInconsistencyError(RuntimeError):
    """A quantity that is integral and non-negative for every genuine
    isotropic pair came out otherwise; signals a bug or corrupted input."""


# Dimensions of the ten indecomposable block types.
BLOCK_DIMS = (1, 1, 1, 1, 3, 2, 2, 2, 2, 2)

# k = M n: column j is the invariant vector of the type-(j+1) block.
_M_ROWS = (
    (0, 0, 0, 0, 1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 1, 0, 0, 0, 0, 0),
    (0, 1, 1, 0, 1, 1, 1, 0, 1, 0),
    (0, 1, 0, 1, 1, 1, 0, 1, 1, 0),
    (0, 1, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 1, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 1, 1, 1, 0, 0, 0, 0, 0),
    (0, 1, 0, 1, 1, 1, 0, 1, 0, 0),
)


# ---------------------------------------------------------------------------
# Value types.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsotropicPair:
    """A presymplectic space with an ordered pair of isotropic subspaces."""

    space: PresymplecticSpace
    a: Subspace
    b: Subspace

    def __post_init__(self) -> None:
        if self.a.ambient_dim != self.space.dim or self.b.ambient_dim != self.space.dim:
            raise DimensionMismatch("subspace ambient dimensions do not match the space")
        omega_int = _omega_int(self.space)
        if not _is_isotropic_rows(omega_int, _int_rows(self.a.basis.entries)):
            raise NotIsotropicError("subspace A is not isotropic")
        if not _is_isotropic_rows(omega_int, _int_rows(self.b.basis.entries)):
            raise NotIsotropicError("subspace B is not isotropic")

    @property
    def dim(self) -> int:
        return self.space.dim

    def swapped(self) -> "IsotropicPair":
        return _pair_unchecked(self.space, self.b, self.a)


def _pair_unchecked(space: PresymplecticSpace, a: Subspace, b: Subspace) -> IsotropicPair:
    """Construct without re-validating isotropy.

    Only for pairs isotropic by construction (canonical models, images of
    valid pairs under form-preserving maps); public entry points validate.
    """
    pair = object.__new__(IsotropicPair)
    object.__setattr__(pair, "space", space)
    object.__setattr__(pair, "a", a)
    object.__setattr__(pair, "b", b)
    return pair


@dataclass(frozen=True)
class InvariantVector:
    """The ten dimension invariants k1..k10 of a pair."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        k = self.entries
        if len(k) != 10:
            raise ValueError("invariant vector must have ten entries")
        if any(x < 0 for x in k):
            raise ValueError("invariant entries must be non-negative")
        if k[4] > min(k[2], k[3]):
            raise ValueError("dim(A ∩ B) exceeds dim A or dim B")
        if k[7] > min(k[5], k[6]):
            raise ValueError("dim(R ∩ A ∩ B) exceeds dim(R ∩ A) or dim(R ∩ B)")
        if k[8] > k[1]:
            raise ValueError("dim(R ∩ (A + B)) exceeds dim R")

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]


@dataclass(frozen=True)
class MultiplicityVector:
    """Counts n1..n10 of the indecomposable block types."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 10:
            raise ValueError("multiplicity vector must have ten entries")
        if any(x < 0 for x in self.entries):
            raise ValueError("multiplicities must be non-negative")

    @classmethod
    def zero(cls) -> "MultiplicityVector":
        return cls((0,) * 10)

    @classmethod
    def unit(cls, type_index: int) -> "MultiplicityVector":
        if not 1 <= type_index <= 10:
            raise ValueError("type index must be in 1..10")
        return cls(tuple(1 if i == type_index - 1 else 0 for i in range(10)))

    def total_dimension(self) -> int:
        return sum(n * d for n, d in zip(self.entries, BLOCK_DIMS))

    def form_rank(self) -> int:
        return 2 * sum(self.entries[4:])

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]


@dataclass(frozen=True)
class ElementarySummand:
    type_index: int
    subspace: Subspace
    a_part: Subspace
    b_part: Subspace


@dataclass(frozen=True)
class ElementaryDecomposition:
    """Ten pairwise orthogonal summands plus the full construction trace."""

    pair: IsotropicPair
    summands: tuple[ElementarySummand, ...]
    trace: tuple[tuple[str, Subspace], ...]

    def summand_dims(self) -> tuple[int, ...]:
        return tuple(s.subspace.dim for s in self.summands)

    def multiplicities(self) -> MultiplicityVector:
        counts = []
        for s, d in zip(self.summands, BLOCK_DIMS):
            if s.subspace.dim % d:
                raise InternalInconsistencyError(
                    f"type-{s.type_index} summand dimension {s.subspace.dim} "
                    f"is not a multiple of {d}")
            counts.append(s.subspace.dim // d)
        return MultiplicityVector(tuple(counts))


@dataclass(frozen=True)
class IndecomposableBlock:
    """One indecomposable constituent: its type, the induced pair in block
    coordinates, and the ordered ambient vectors realizing the embedding."""

    type_index: int
    pair: IsotropicPair
    basis: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class NormalFormWitness:
    """Canonical model of a pair plus the presymplectomorphism onto it."""

    multiplicities: MultiplicityVector
    model: IsotropicPair
    phi: LinearMap


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"{mark} {c.name}" + (f" - {c.detail}" if c.detail else ""))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# The invariant route: k and n via the unimodular matrix.
# ---------------------------------------------------------------------------


def multiplicity_matrix() -> Matrix:
    """The constant 10x10 unimodular matrix M with k = M n."""
    return Matrix.from_rows(_M_ROWS, cols=10)


@lru_cache(maxsize=4)
def _cached_inverse(m_rows: tuple[tuple[int, ...], ...]):
    """Inverse rows of M, as plain ints when the inverse is integral."""
    try:
        inv = Matrix.from_rows(m_rows, cols=10).inverse().entries
    except LinalgError:
        return None
    if all(x.denominator == 1 for row in inv for x in row):
        return tuple(tuple(int(x) for x in row) for row in inv)
    return inv


def multiplicity_matrix_inverse() -> Matrix:
    """Exact inverse of the multiplicity matrix (computed once and cached)."""
    inv = _cached_inverse(_M_ROWS)
    if inv is None:
        raise InternalInconsistencyError("multiplicity matrix is not invertible")
    return Matrix.from_rows(inv, cols=10)


def invariants(pair: IsotropicPair) -> InvariantVector:
    """The ten dimension invariants of a pair.

    k1 = half the rank of the form, k2 = dim R, k3 = dim A, k4 = dim B,
    k5 = dim A∩B, k6 = dim R∩A, k7 = dim R∩B, k8 = dim R∩A∩B,
    k9 = dim R∩(A+B), k10 = dim A⊥∩B, with R the radical and ⊥ the
    form-orthogonal.
    """
    cached = getattr(pair, "_int_cache", None)
    if cached is not None:
        omega_int, a_rows, b_rows = cached
    else:
        omega_int = _omega_int(pair.space)
        a_rows = _int_rows(pair.a.basis.entries)
        b_rows = _int_rows(pair.b.basis.entries)
    return InvariantVector(_invariant_tuple(pair.space.dim, omega_int, a_rows, b_rows))


def _invariant_tuple(n: int, omega_int: list[list[int]],
                     a_rows: list[list[int]], b_rows: list[list[int]]
                     ) -> tuple[int, ...]:
    """Integer fast path for the invariants.

    Everything reduces to ranks:
      dim(X ∩ R)   = dim X - rank(X Ω)    for X with independent rows,
      dim(A ∩ B)   = dim A + dim B - dim(A + B),
      dim(A⊥ ∩ B)  = dim B - rank(A Ω Bᵀ).
    """
    ka, kb = len(a_rows), len(b_rows)
    rank_omega = _rank([row[:] for row in omega_int], n)
    k1 = rank_omega // 2
    k2 = n - rank_omega
    inter, sum_dim = _zassenhaus([r[:] for r in a_rows], [r[:] for r in b_rows], n)
    k5 = ka + kb - sum_dim
    a_om = _mul_int(a_rows, omega_int, n)
    b_om = _mul_int(b_rows, omega_int, n)
    k6 = ka - _rank([r[:] for r in a_om], n)
    k7 = kb - _rank([r[:] for r in b_om], n)
    k8 = k5 - _rank(_mul_int(inter, omega_int, n), n)
    k9 = sum_dim - _rank([r[:] for r in a_om] + [r[:] for r in b_om], n)
    gram = [[sum(x * y for x, y in zip(ra, rb)) for rb in b_rows] for ra in a_om]
    k10 = kb - _rank(gram, kb)
    return (k1, k2, ka, kb, k5, k6, k7, k8, k9, k10)


def alternate_tenth_invariant(pair: IsotropicPair) -> int:
    """dim(B⊥ ∩ A): the mirror of the tenth invariant.

    Substituting it for k10 yields the same multiplicities whenever
    dim A = dim B (a tested property, not an assumption)."""
    omega_int = _omega_int(pair.space)
    a_rows = _int_rows(pair.a.basis.entries)
    b_rows = _int_rows(pair.b.basis.entries)
    b_om = _mul_int(b_rows, omega_int, pair.space.dim)
    gram = [[sum(x * y for x, y in zip(rb, ra)) for ra in a_rows] for rb in b_om]
    return len(a_rows) - _rank(gram, len(a_rows))


def multiplicities(pair: IsotropicPair) -> MultiplicityVector:
    """Recover the block multiplicities from the invariants: n = M⁻¹ k."""
    return multiplicities_from_invariants(invariants(pair))


def multiplicities_from_invariants(k: InvariantVector) -> MultiplicityVector:
    inv = _cached_inverse(_M_ROWS)
    if inv is None:
        raise InternalInconsistencyError("multiplicity matrix is not invertible")
    n = []
    for row in inv:
        val = sum(c * x for c, x in zip(row, k.entries))
        if isinstance(val, Fraction):
            if val.denominator != 1:
                raise InternalInconsistencyError(
                    f"recovered multiplicities are not integers: k={k.entries}")
            val = int(val)
        if val < 0:
            raise InternalInconsistencyError(
                f"recovered multiplicities are negative: k={k.entries}")
        n.append(val)
    return MultiplicityVector(tuple(n))


def equivalent(p1: IsotropicPair, p2: IsotropicPair) -> bool:
    """True iff the pairs have equal multiplicity vectors."""
    return multiplicities(p1).entries == multiplicities(p2).entries


# ---------------------------------------------------------------------------
# Canonical models.
# ---------------------------------------------------------------------------

# Local generator rows of the ten block types, in block coordinates.
_BLOCK_A = ((), ((1,),), ((1,),), (), ((1, 0, 0),),
            ((1, 0),), ((1, 0),), (), ((1, 0),), ())
_BLOCK_B = ((), ((1,),), (), ((1,),), ((1, 0, 1),),
            ((1, 0),), (), ((0, 1),), ((0, 1),), ())


def _block_omega(type_index: int) -> tuple[tuple[int, ...], ...]:
    d = BLOCK_DIMS[type_index - 1]
    if d == 1:
        return ((0,),)
    if d == 2:
        return ((0, 1), (-1, 0))
    return ((0, 1, 0), (-1, 0, 0), (0, 0, 0))


def _model_int_data(n: MultiplicityVector
                    ) -> tuple[int, list[list[int]], list[list[int]], list[list[int]]]:
    """Integer form grid and generator rows of the canonical model."""
    dim = n.total_dimension()
    omega = [[0] * dim for _ in range(dim)]
    a_rows: list[list[int]] = []
    b_rows: list[list[int]] = []
    offset = 0
    for t in range(1, 11):
        d = BLOCK_DIMS[t - 1]
        local_omega = _block_omega(t)
        for _ in range(n[t - 1]):
            for i in range(d):
                for j in range(d):
                    omega[offset + i][offset + j] = local_omega[i][j]
            for gen in _BLOCK_A[t - 1]:
                row = [0] * dim
                for i, x in enumerate(gen):
                    row[offset + i] = x
                a_rows.append(row)
            for gen in _BLOCK_B[t - 1]:
                row = [0] * dim
                for i, x in enumerate(gen):
                    row[offset + i] = x
                b_rows.append(row)
            offset += d
    return dim, omega, a_rows, b_rows


def _pair_from_int_data(dim: int, omega: list[list[int]], a_rows: list[list[int]],
                        b_rows: list[list[int]], scale: int = 1) -> IsotropicPair:
    """Assemble a pair from integer data known to be skew and isotropic.

    The integer fast-path data is attached to the pair so that repeated
    invariant computations skip the rational-to-integer conversion.
    """
    if scale == 1:
        omega_mat = Matrix(dim, dim, tuple(
            tuple(_frac(x) for x in row) for row in omega))
    else:
        omega_mat = Matrix(dim, dim, tuple(
            tuple(Fraction(x, scale) for x in row) for row in omega))
    space = PresymplecticSpace._unchecked(dim, omega_mat)
    pair = _pair_unchecked(space, Subspace.span(dim, a_rows),
                           Subspace.span(dim, b_rows))
    object.__setattr__(pair, "_int_cache", (omega, a_rows, b_rows))
    return pair


def pair_from_multiplicities(n: MultiplicityVector | Sequence[int]) -> IsotropicPair:
    """The canonical direct-sum model pair with the given multiplicities.

    Blocks are laid out in type order 1..10 with each type's copies
    contiguous; inside a 3-dimensional block the basis is ordered so that
    ω(e1, e2) = 1 and e3 spans the block radical.
    """
    if not isinstance(n, MultiplicityVector):
        n = MultiplicityVector(tuple(int(x) for x in n))
    return _pair_from_int_data(*_model_int_data(n))


# ---------------------------------------------------------------------------
# Random generation: models conjugated by seeded changes of basis.
# ---------------------------------------------------------------------------


def _conjugate_int_data(rng: random.Random, n: int, omega: list[list[int]],
                        a_rows: list[list[int]], b_rows: list[list[int]],
                        op_count: int) -> None:
    """Apply a random product of elementary shears and swaps, in place."""
    if n <= 1:
        return
    for _ in range(op_count):
        i = rng.randrange(n)
        j = rng.randrange(n - 1)
        if j >= i:
            j += 1
        if rng.random() < 0.25:
            _apply_swap(omega, a_rows, b_rows, i, j)
        else:
            _apply_shear(omega, a_rows, b_rows, i, j, rng.choice((1, -1)))


def conjugate_pair(pair: IsotropicPair, seed: int | str,
                   op_count: int | None = None) -> IsotropicPair:
    """The image of a pair under a seeded random linear isomorphism.

    The new form is the pullback of the old one along the inverse map, so the
    result is presymplectomorphic to the input by construction.  The map is a
    product of elementary shears and swaps: entries stay small and exact, and
    the output is deterministic for a fixed seed.
    """
    n = pair.space.dim
    rng = random.Random(f"conj:{seed}:{n}")
    omega, scale = _int_grid(pair.space.omega.entries)
    a_rows = _int_rows(pair.a.basis.entries)
    b_rows = _int_rows(pair.b.basis.entries)
    _conjugate_int_data(rng, n, omega, a_rows, b_rows,
                        2 * n + 2 if op_count is None else op_count)
    return _pair_from_int_data(n, omega, a_rows, b_rows, scale)


def conjugated_model(n: MultiplicityVector | Sequence[int], seed: int | str,
                     op_count: int | None = None) -> IsotropicPair:
    """The canonical model with the given multiplicities, pushed through a
    seeded random linear isomorphism; classifying it must recover `n`."""
    if not isinstance(n, MultiplicityVector):
        n = MultiplicityVector(tuple(int(x) for x in n))
    dim, omega, a_rows, b_rows = _model_int_data(n)
    rng = random.Random(f"conj:{seed}:{dim}")
    _conjugate_int_data(rng, dim, omega, a_rows, b_rows,
                        2 * dim + 2 if op_count is None else op_count)
    return _pair_from_int_data(dim, omega, a_rows, b_rows)


def _apply_shear(omega: list[list[int]], a_rows: list[list[int]],
                 b_rows: list[list[int]], i: int, j: int, c: int) -> None:
    """Basis change e_j ↦ e_j + c e_i: congruence action on the form grid,
    inverse-transpose action on the subspace basis rows."""
    row_i = omega[i]
    row_j = omega[j]
    for t in range(len(row_i)):
        row_j[t] += c * row_i[t]
    for row in omega:
        row[j] += c * row[i]
    for rows in (a_rows, b_rows):
        for row in rows:
            row[i] -= c * row[j]


def _apply_swap(omega: list[list[int]], a_rows: list[list[int]],
                b_rows: list[list[int]], i: int, j: int) -> None:
    omega[i], omega[j] = omega[j], omega[i]
    for row in omega:
        row[i], row[j] = row[j], row[i]
    for rows in (a_rows, b_rows):
        for row in rows:
            row[i], row[j] = row[j], row[i]


def _random_composition(rng: random.Random, total: int, parts: int) -> list[int]:
    if parts == 0:
        return []
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    out = []
    prev = 0
    for c in cuts + [total]:
        out.append(c - prev)
        prev = c
    return out


def random_multiplicities(dim: int, rank: int, seed: int | str) -> MultiplicityVector:
    """A seeded multiplicity vector whose model has the given dimension and
    form rank."""
    if rank % 2 or rank < 0 or rank > dim:
        raise ValueError("rank must be even, non-negative and at most dim")
    rng = random.Random(f"mult:{seed}:{dim}:{rank}")
    s = rank // 2
    n5 = rng.randint(0, min(s, dim - 2 * s))
    sympl = _random_composition(rng, s - n5, 5)
    rad = _random_composition(rng, dim - 2 * s - n5, 4)
    return MultiplicityVector(tuple(rad) + (n5,) + tuple(sympl))


def random_pair(dim: int, rank: int, seed: int | str
                ) -> tuple[IsotropicPair, MultiplicityVector]:
    """A seeded pseudo-random pair with known ground-truth multiplicities.

    Samples a multiplicity vector fitting the requested dimension and form
    rank, builds the canonical model, and conjugates it by a seeded random
    linear isomorphism.  Returns the pair together with the ground truth.
    """
    n = random_multiplicities(dim, rank, seed)
    return conjugate_pair(pair_from_multiplicities(n), seed), n


# ---------------------------------------------------------------------------
# The constructive route: the ten-step orthogonal decomposition.
# ---------------------------------------------------------------------------


def elementary_decompose(pair: IsotropicPair) -> ElementaryDecomposition:
    """Peel the ambient space into ten orthogonal summands, one per type.

    Each step removes a summand chosen so that the remaining decomposition
    stays orthogonal and splits A and B (and the radical) along it.  Every
    free choice of complement goes through the deterministic rule of
    `complement_within`, so the output is reproducible; all intermediate
    subspaces are recorded in the trace under their construction names.
    """
    space, a, b = pair.space, pair.a, pair.b
    n = space.dim
    zero = Subspace.zero(n)
    full = Subspace.full(n)
    rad = radical(space)
    trace: list[tuple[str, Subspace]] = []

    # Radical-only summands: the part of R clear of A + B, then the lines of
    # R inside A ∩ B, inside A alone, inside B alone.
    a_plus_b = a + b
    v1 = complement_within(rad & a_plus_b, rad, zero)
    c1 = complement_within(v1, full, a_plus_b)
    trace += [("V1", v1), ("C1", c1)]

    ab = a & b
    v2 = (ab & rad) & c1
    c2 = complement_within(v2, c1, zero)
    trace += [("V2", v2), ("C2", c2)]

    v3 = (a & rad) & c2
    c3 = complement_within(v3, c2, b & c2)
    trace += [("V3", v3), ("C3", c3)]

    v4 = (b & rad) & c3
    c4 = complement_within(v4, c3, a & c3)
    trace += [("V4", v4), ("C4", c4)]

    # What is left of the radical pairs off against slices of A and B; carve
    # out the three-dimensional blocks around it.
    q_r = rad & c4
    a4 = a & c4
    b4 = b & c4
    ab4 = a4 & b4
    s_space = (a4 & (q_r + b)) + (b4 & (q_r + a))
    q = complement_within(ab4, s_space, q_r)
    q_a = a4 & q
    q_b = b4 & q
    t_space = complement_within(ab4, a4 + b4, q)
    a_prime = complement_within(q_a, a4 & t_space, zero)
    b_prime = complement_within(q_b, b4 & t_space, zero)
    split5 = reduction_split(space, q_a, within=c4,
                             e_must_contain=(ab4 + a_prime) + b_prime)
    c5 = split5.symplectic_complement
    p_space = split5.dual_lagrangian
    v5 = (q_r + q_a) + p_space
    trace += [("Q_R", q_r), ("S", s_space), ("Q", q), ("Q_A", q_a), ("Q_B", q_b),
              ("T", t_space), ("A'", a_prime), ("B'", b_prime),
              ("C5", c5), ("P", p_space), ("V5", v5)]

    # The rest is symplectic: split off where A and B coincide, where only A
    # (resp. only B) survives, where they pair transversally, and the core
    # missing both.
    ab5 = (a & c5) & b
    split6 = reduction_split(space, ab5, within=c5)
    c6 = split6.symplectic_complement
    v6 = split6.lagrangian + split6.dual_lagrangian
    trace += [("C6", c6), ("V6", v6)]

    b_perp = orthogonal(space, b)
    i7 = (a & b_perp) & c6
    split7 = reduction_split(space, i7, within=c6, e_must_contain=b & c6)
    c7 = split7.symplectic_complement
    v7 = split7.lagrangian + split7.dual_lagrangian
    trace += [("C7", c7), ("V7", v7)]

    a_perp = orthogonal(space, a)
    i8 = (b & a_perp) & c7
    split8 = reduction_split(space, i8, within=c7, e_must_contain=a & c7)
    c8 = split8.symplectic_complement
    v8 = split8.lagrangian + split8.dual_lagrangian
    trace += [("C8", c8), ("V8", v8)]

    v9 = (a & c8) + (b & c8)
    v10 = (a_perp & b_perp) & c8
    trace += [("V9", v9), ("V10", v10)]

    summands = []
    for idx, v in enumerate((v1, v2, v3, v4, v5, v6, v7, v8, v9, v10), start=1):
        summands.append(ElementarySummand(idx, v, a & v, b & v))
    decomp = ElementaryDecomposition(pair, tuple(summands), tuple(trace))

    assert sum(decomp.summand_dims()) == n, "summands do not fill the space"
    assert sum(s.a_part.dim for s in summands) == a.dim, "A does not split"
    assert sum(s.b_part.dim for s in summands) == b.dim, "B does not split"
    return decomp


def verify_decomposition(pair: IsotropicPair,
                         decomp: ElementaryDecomposition) -> VerificationReport:
    """Independently re-check every claimed property of a decomposition.

    Failures are reported, not raised; each failing check names the offending
    summands.
    """
    space, a, b = pair.space, pair.a, pair.b
    n = space.dim
    checks: list[CheckResult] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        checks.append(CheckResult(name, ok, "" if ok else detail))

    summands = decomp.summands
    check("summand typing", len(summands) == 10
          and all(s.type_index == i + 1 for i, s in enumerate(summands)),
          "expected exactly the types 1..10 in order")

    omega_int = _omega_int(space)
    srows = [_int_rows(s.subspace.basis.entries) for s in summands]
    som = [_mul_int(r, omega_int, n) for r in srows]
    bad = []
    for i in range(len(summands)):
        for j in range(i + 1, len(summands)):
            if srows[i] and srows[j]:
                if any(sum(x * y for x, y in zip(ri, rj)) for ri in som[i]
                       for rj in srows[j]):
                    bad.append((i + 1, j + 1))
    check("pairwise orthogonality", not bad, f"non-orthogonal summand pairs: {bad}")

    total = sum(s.subspace.dim for s in summands)
    span_all = Subspace.zero(n)
    for s in summands:
        span_all = span_all + s.subspace
    check("direct sum fills the space",
          total == n and span_all == Subspace.full(n),
          f"dims sum to {total} over ambient {n}, span has dim {span_all.dim}")

    bad = [s.type_index for s in summands if s.a_part != (a & s.subspace)]
    check("A parts are the intersections", not bad, f"summands {bad}")
    bad = [s.type_index for s in summands if s.b_part != (b & s.subspace)]
    check("B parts are the intersections", not bad, f"summands {bad}")

    stored_a = [s.a_part for s in summands]
    stored_b = [s.b_part for s in summands]
    fresh_r = [radical(space) & s.subspace for s in summands]
    for name, w, pieces in (("A", a, stored_a), ("B", b, stored_b),
                            ("R", radical(space), fresh_r)):
        agg = Subspace.zero(n)
        for p in pieces:
            agg = agg + p
        check(f"distributive for {name}",
              sum(p.dim for p in pieces) == w.dim and agg == w,
              f"pieces of {name} have dims {[p.dim for p in pieces]} "
              f"but dim {name} = {w.dim}")

    for s in summands:
        ok, why = _summand_has_type(space, s)
        check(f"type {s.type_index} conditions", ok, why)

    return VerificationReport(tuple(checks))


def _summand_has_type(space: PresymplecticSpace, s: ElementarySummand
                      ) -> tuple[bool, str]:
    v, ap, bp, t = s.subspace, s.a_part, s.b_part, s.type_index
    rad_v = v & orthogonal(space, v)

    def lag(w: Subspace) -> bool:
        return 2 * w.dim == v.dim

    if t in (1, 2, 3, 4):
        if rad_v != v:
            return False, "form does not vanish on the summand"
        ok_a = (ap == v) if t in (2, 3) else ap.is_zero()
        ok_b = (bp == v) if t in (2, 4) else bp.is_zero()
        if ok_a and ok_b:
            return True, ""
        return False, f"A part dim {ap.dim}, B part dim {bp.dim} of ambient {v.dim}"
    if t == 5:
        if v.dim != 3 * rad_v.dim:
            return False, f"dim {v.dim} is not three times the radical dim {rad_v.dim}"
        if not ((ap & bp).is_zero() and (ap & rad_v).is_zero()
                and (bp & rad_v).is_zero()):
            return False, "radical, A part and B part are not pairwise independent"
        if not (ap + rad_v) == (bp + rad_v) == (ap + bp):
            return False, "A ⊕ R, B ⊕ R and A ⊕ B do not agree"
        return True, ""
    if not rad_v.is_zero():
        return False, "summand is not symplectic"
    if t == 6:
        ok = ap == bp and lag(ap)
    elif t == 7:
        ok = lag(ap) and bp.is_zero()
    elif t == 8:
        ok = ap.is_zero() and lag(bp)
    elif t == 9:
        ok = lag(ap) and lag(bp) and (ap & bp).is_zero()
    else:
        ok = ap.is_zero() and bp.is_zero()
    return ok, "" if ok else f"A part dim {ap.dim}, B part dim {bp.dim} of ambient {v.dim}"


# ---------------------------------------------------------------------------
# Refinement into indecomposable blocks and the normal-form witness.
# ---------------------------------------------------------------------------


def _express_in_rows(targets: Sequence[Sequence[Fraction]],
                     basis_rows: Sequence[Sequence[Fraction]],
                     n: int) -> list[list[Fraction]]:
    """Coefficients c with c · basis = target, one coefficient row per target."""
    d = len(basis_rows)
    k = len(targets)
    aug_rows = []
    for col in range(n):
        aug_rows.append([basis_rows[t][col] for t in range(d)]
                        + [targets[s][col] for s in range(k)])
    reduced, pivots, _ = rref(Matrix.from_rows(aug_rows, cols=d + k))
    if any(c >= d for c in pivots):
        raise InternalInconsistencyError("vector does not lie in the claimed span")
    coeffs = [[Fraction(0)] * d for _ in range(k)]
    for r, c in enumerate(pivots):
        for s in range(k):
            coeffs[s][c] = reduced.entries[r][d + s]
    return coeffs


def _combine(coeffs: Sequence[Fraction], rows: Sequence[Sequence[Fraction]],
             n: int) -> tuple[Fraction, ...]:
    vec = [Fraction(0)] * n
    for c, row in zip(coeffs, rows):
        if c:
            for m in range(n):
                vec[m] += c * row[m]
    return tuple(vec)


def _dual_family(space: PresymplecticSpace, a_vectors: Sequence[Sequence[Fraction]],
                 within: Subspace, correct: bool) -> list[tuple[Fraction, ...]]:
    """Vectors q_j inside `within` with ω(a_i, q_j) = δ_ij; with `correct`
    the family is adjusted by a-vectors so it also pairs to zero with itself."""
    k = len(a_vectors)
    w_rows = within.basis.entries
    g = Matrix.from_rows(
        [[space.form_value(av, wv) for wv in w_rows] for av in a_vectors],
        cols=len(w_rows))
    x = _solve_right_identity(g)
    if x is None:
        raise InternalInconsistencyError("pairing between the families is degenerate")
    qs = [_combine([x[t][j] for t in range(len(w_rows))], w_rows, space.dim)
          for j in range(k)]
    if not correct:
        return qs
    half = Fraction(1, 2)
    out = []
    for j in range(k):
        corr = [-half * space.form_value(qs[j], qs[l]) for l in range(k)]
        vec = list(qs[j])
        for l, c in enumerate(corr):
            if c:
                row = a_vectors[l]
                for m in range(space.dim):
                    vec[m] += c * row[m]
        out.append(tuple(vec))
    return out


def _induced_block_pair(space: PresymplecticSpace,
                        vectors: Sequence[Sequence[Fraction]],
                        a: Subspace, b: Subspace) -> IsotropicPair:
    d = len(vectors)
    local_space = PresymplecticSpace(d, space.gram(vectors))
    blockspan = Subspace.span(space.dim, vectors)
    a_local = _express_in_rows((a & blockspan).basis.entries, vectors, space.dim)
    b_local = _express_in_rows((b & blockspan).basis.entries, vectors, space.dim)
    return IsotropicPair(local_space, Subspace.span(d, a_local),
                         Subspace.span(d, b_local))


def refine_to_indecomposables(decomp: ElementaryDecomposition
                              ) -> list[IndecomposableBlock]:
    """Split each elementary summand into indecomposable blocks.

    Zero-form summands split along their canonical bases.  The symplectic
    summands split along symplectic bases adapted to their distinguished
    lagrangians (for the transversal type, along the pairing between the two
    lagrangians).  A three-dimensional-type summand splits by decomposing
    each B-basis vector as radical part plus A part and completing the A
    parts to symplectic pairs.  Every returned block's induced pair equals
    the canonical model of its type exactly.
    """
    space = decomp.pair.space
    blocks: list[IndecomposableBlock] = []
    for s in decomp.summands:
        blocks.extend(_refine_summand(space, s))
    return blocks


def _refine_summand(space: PresymplecticSpace,
                    s: ElementarySummand) -> list[IndecomposableBlock]:
    t, v, ap, bp = s.type_index, s.subspace, s.a_part, s.b_part
    n = space.dim
    out: list[IndecomposableBlock] = []

    def emit(vectors: tuple[tuple[Fraction, ...], ...]) -> None:
        block_pair = _induced_block_pair(space, vectors, ap, bp)
        assert block_pair == pair_from_multiplicities(MultiplicityVector.unit(t)), \
            f"refined block is not the type-{t} model"
        out.append(IndecomposableBlock(t, block_pair, vectors))

    if t in (1, 2, 3, 4):
        for row in v.basis.entries:
            emit((tuple(row),))
    elif t == 5:
        rad_v = v & orthogonal(space, v)
        b_vectors = [tuple(r) for r in bp.basis.entries]
        basis_rows = list(rad_v.basis.entries) + list(ap.basis.entries)
        coeffs = _express_in_rows(b_vectors, basis_rows, n)
        m = rad_v.dim
        r_vectors = [_combine(c[:m], rad_v.basis.entries, n) for c in coeffs]
        a_vectors = [_combine(c[m:], ap.basis.entries, n) for c in coeffs]
        p_vectors = _dual_family(space, a_vectors, v, correct=True)
        for av, pv, rv in zip(a_vectors, p_vectors, r_vectors):
            emit((av, pv, rv))
    elif t in (6, 7):
        vecs = symplectic_basis(space, v, lagrangian=ap)
        k = len(vecs) // 2
        for i in range(k):
            emit((vecs[i], vecs[k + i]))
    elif t == 8:
        vecs = symplectic_basis(space, v, lagrangian=bp)
        k = len(vecs) // 2
        for i in range(k):
            emit((tuple(-x for x in vecs[k + i]), vecs[i]))
    elif t == 9:
        a_vectors = [tuple(r) for r in ap.basis.entries]
        p_vectors = _dual_family(space, a_vectors, bp, correct=False)
        for av, pv in zip(a_vectors, p_vectors):
            emit((av, pv))
    else:
        vecs = symplectic_basis(space, v)
        k = len(vecs) // 2
        for i in range(k):
            emit((vecs[i], vecs[k + i]))
    return out


def normal_form(pair: IsotropicPair) -> NormalFormWitness:
    """Canonical model of the pair plus an explicit presymplectomorphism.

    The witness sends each refined block basis vector to the matching
    coordinate vector of the canonical model, so its matrix is the inverse of
    the column matrix of all block vectors taken in model order.
    """
    decomp = elementary_decompose(pair)
    blocks = refine_to_indecomposables(decomp)
    counts = [0] * 10
    for blk in blocks:
        counts[blk.type_index - 1] += 1
    nvec = MultiplicityVector(tuple(counts))
    model = pair_from_multiplicities(nvec)

    n = pair.space.dim
    columns: list[tuple[Fraction, ...]] = []
    for blk in blocks:
        columns.extend(blk.basis)
    if len(columns) != n:
        raise InternalInconsistencyError("blocks do not span the space")
    if n:
        to_input = Matrix.from_rows(list(zip(*columns)), cols=n)
    else:
        to_input = Matrix.from_rows([], cols=0)
    phi = LinearMap(n, n, to_input.inverse())
    witness = NormalFormWitness(nvec, model, phi)

    assert is_presymplectomorphism(phi, pair.space, model.space), \
        "witness map is not a presymplectomorphism"
    assert phi.apply_subspace(pair.a) == model.a, "witness does not map A to the model"
    assert phi.apply_subspace(pair.b) == model.b, "witness does not map B to the model"
    return witness
