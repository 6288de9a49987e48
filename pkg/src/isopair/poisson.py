"""Coisotropic pairs in Poisson vector spaces, via annihilator duality.

A linear Poisson structure on Q^n is a skew form pi on the dual space; a
subspace is coisotropic exactly when its annihilator is pi-isotropic.  Pairs
of coisotropic subspaces are therefore classified by passing to annihilators
inside the dual presymplectic space (omega = pi) and reusing the isotropic
pair machinery.  Dual coordinates are taken in the basis dual to the
standard basis; this identification is fixed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from isopair.classify import IsotropicPair, NormalFormWitness, normal_form
from isopair.linalg import DimensionMismatch, Matrix, Subspace, kernel
from isopair.presymplectic import PresymplecticSpace, is_isotropic


class NotCoisotropicError(ValueError):
    pass


@dataclass(frozen=True)
class PoissonSpace:
    """Q^dim with a linear Poisson structure, stored as the induced skew
    form `pi` on the dual space."""

    dim: int
    pi: Matrix

    def __post_init__(self) -> None:
        # Delegate the shape and skewness checks to the dual-space constructor.
        PresymplecticSpace(self.dim, self.pi)

    def dual_space(self) -> PresymplecticSpace:
        return PresymplecticSpace(self.dim, self.pi)


def annihilator(ambient_dim: int, c: Subspace) -> Subspace:
    """Functionals vanishing on c, in dual coordinates.

    Involutive under the double-dual identification and dimension-reversing:
    dim ann(c) = ambient_dim - dim c.
    """
    if c.ambient_dim != ambient_dim:
        raise DimensionMismatch(
            f"subspace ambient {c.ambient_dim} does not match {ambient_dim}")
    return kernel(c.basis)


@dataclass(frozen=True)
class CoisotropicPair:
    """An ordered pair of coisotropic subspaces of a Poisson vector space."""

    space: PoissonSpace
    c1: Subspace
    c2: Subspace

    def __post_init__(self) -> None:
        dual = self.space.dual_space()
        for name, c in (("c1", self.c1), ("c2", self.c2)):
            if c.ambient_dim != self.space.dim:
                raise DimensionMismatch(
                    f"{name} ambient dimension does not match the space")
            if not is_isotropic(dual, annihilator(self.space.dim, c)):
                raise NotCoisotropicError(f"subspace {name} is not coisotropic")


def to_isotropic_pair(cp: CoisotropicPair) -> IsotropicPair:
    """Replace the coisotropic subspaces by their annihilators in the dual
    presymplectic space."""
    n = cp.space.dim
    return IsotropicPair(cp.space.dual_space(),
                         annihilator(n, cp.c1), annihilator(n, cp.c2))


def classify_coisotropic(cp: CoisotropicPair) -> NormalFormWitness:
    """Normal form of the dual isotropic pair; equality of the multiplicity
    vectors is equivalence of coisotropic pairs under invertible Poisson maps."""
    return normal_form(to_isotropic_pair(cp))
