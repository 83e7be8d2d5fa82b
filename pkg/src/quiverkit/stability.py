"""Slope stability: existence of (semi)stable representations and coprimality."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .exactmath import subvectors
from .quiver import DimVector, Quiver, QuiverError
from .schofield import SubdimensionLattice


@dataclass(frozen=True)
class Stability:
    """A stability parameter theta together with positive denominator weights a.

    The slope of e is theta(e) / (a . e).
    """

    theta: Tuple[int, ...]
    denom: Tuple[int, ...]

    def __post_init__(self):
        if len(self.theta) != len(self.denom):
            raise QuiverError("theta and denominator weights must have the same length")
        if any(a < 1 for a in self.denom):
            raise QuiverError("denominator weights must be positive integers")

    @classmethod
    def of(cls, theta: Sequence[int], denom: Optional[Sequence[int]] = None) -> "Stability":
        theta = tuple(int(x) for x in theta)
        denom = (1,) * len(theta) if denom is None else tuple(int(x) for x in denom)
        return cls(theta, denom)

    def theta_of(self, e: Sequence[int]) -> int:
        return sum(t * x for t, x in zip(self.theta, e))

    def slope(self, e: Sequence[int]) -> Fraction:
        if len(e) != len(self.theta):
            raise QuiverError("dimension vector length does not match the stability parameter")
        if any(x < 0 for x in e) or not any(e):
            raise QuiverError("slope is only defined for nonzero nonnegative dimension vectors")
        return Fraction(self.theta_of(e), sum(a * x for a, x in zip(self.denom, e)))

    def __neg__(self) -> "Stability":
        return Stability(tuple(-t for t in self.theta), self.denom)

    def scaled(self, k: int) -> "Stability":
        return Stability(tuple(k * t for t in self.theta), self.denom)


def slope(s: Stability, e: Sequence[int]) -> Fraction:
    return s.slope(e)


def canonical_stability(Q: Quiver, d: Sequence[int]) -> Tuple[int, ...]:
    """Coordinates of e -> <d, e> - <e, d>."""
    d = Q.vector(d)
    return tuple(
        Q.euler_form(d, Q.unit(i)) - Q.euler_form(Q.unit(i), d) for i in range(Q.vertices)
    )


def _check(Q: Quiver, d: Sequence[int], s: Stability) -> DimVector:
    d = Q.vector(d)
    if len(s.theta) != Q.vertices:
        raise QuiverError("stability parameter length does not match the quiver")
    if any(x < 0 for x in d) or not any(d):
        raise QuiverError("a nonzero nonnegative dimension vector is required")
    return d


def has_semistables(
    Q: Quiver, d: Sequence[int], s: Stability, lattice: Optional[SubdimensionLattice] = None
) -> bool:
    d = _check(Q, d, s)
    lattice = lattice or SubdimensionLattice(Q, d)
    mu = s.slope(d)
    return all(s.slope(e) <= mu for e in lattice.general_subdimensions(d) if any(e))


def has_stables(
    Q: Quiver, d: Sequence[int], s: Stability, lattice: Optional[SubdimensionLattice] = None
) -> bool:
    d = _check(Q, d, s)
    lattice = lattice or SubdimensionLattice(Q, d)
    mu = s.slope(d)
    return all(
        s.slope(e) < mu for e in lattice.general_subdimensions(d) if any(e) and e != d
    )


def is_theta_coprime(Q: Quiver, d: Sequence[int], s: Stability) -> bool:
    d = _check(Q, d, s)
    mu = s.slope(d)
    return all(s.slope(e) != mu for e in subvectors(d) if any(e) and e != d)
