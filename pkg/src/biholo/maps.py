"""Elementary conformal maps and composable chains.

Every step knows its forward action and its local inverse; a
:class:`Chain` composes steps and can be run in both directions.  Chains
realize the slit-disc uniformization and the planar embedding witnesses.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

__all__ = ["Mobius", "PrincipalSqrt", "Square", "Chain"]


@dataclass(frozen=True)
class Mobius:
    """Fractional linear map z -> (a z + b) / (c z + d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("degenerate Mobius map (zero determinant)")

    def apply(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def unapply(self, w: complex) -> complex:
        return (self.d * w - self.b) / (-self.c * w + self.a)

    @staticmethod
    def cayley_disc_to_halfplane() -> "Mobius":
        # z -> i (1 + z) / (1 - z); sends 0 to i.
        return Mobius(1j, 1j, -1, 1)

    @staticmethod
    def quadrant_to_upper_half_disc() -> "Mobius":
        # u -> (u - 1) / (u + 1), first quadrant onto the upper half-disc.
        return Mobius(1, -1, 1, 1)

    @staticmethod
    def rotation(phase: complex) -> "Mobius":
        return Mobius(phase, 0, 0, 1)

    @staticmethod
    def disc_automorphism(a: complex) -> "Mobius":
        """Automorphism of the unit disc sending 0 to ``a``."""
        a = complex(a)
        if not abs(a) < 1:
            raise ValueError("automorphism parameter must lie in the unit disc")
        return Mobius(1, a, a.conjugate(), 1)


@dataclass(frozen=True)
class PrincipalSqrt:
    """Principal square root; inverse is squaring."""

    def apply(self, z: complex) -> complex:
        return cmath.sqrt(z)

    def unapply(self, w: complex) -> complex:
        return w * w


@dataclass(frozen=True)
class Square:
    """Squaring; inverse is the principal square root."""

    def apply(self, z: complex) -> complex:
        return z * z

    def unapply(self, w: complex) -> complex:
        return cmath.sqrt(w)


@dataclass(frozen=True)
class Chain:
    """Composition of elementary maps, applied left to right."""

    steps: tuple

    def apply(self, z: complex) -> complex:
        for step in self.steps:
            z = step.apply(z)
        return z

    def unapply(self, w: complex) -> complex:
        for step in reversed(self.steps):
            w = step.unapply(w)
        return w

    def __call__(self, z: complex) -> complex:
        return self.apply(z)
