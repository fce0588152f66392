"""RDV coordinates, volumes and positivity for divisors in span{Theta, f}.

A divisor ``M = a*Theta + b*f`` with ``a != 0`` can be written as
``M = R * (Theta + (D + e) f)``; its volume is ``V = M^2 / 2 = R^2 (D + e/2)``.
In these coordinates ``Theta.M = R*D`` and ``M.W = R_M R_W (D_M + D_W + e)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .lattice import K3, DivisorClass, DomainError, SurfaceParams, THETA, as_fraction, fmt, intersect

__all__ = [
    "DivisorClass",
    "Positivity",
    "RDVCoords",
    "from_rdv",
    "positivity_class",
    "rdv_product",
    "theta_degree",
    "to_rdv",
    "volume",
]


@dataclass(frozen=True)
class RDVCoords:
    R: Fraction
    D: Fraction
    e: int = 2

    def __post_init__(self):
        object.__setattr__(self, "R", as_fraction(self.R))
        object.__setattr__(self, "D", as_fraction(self.D))
        if self.R == 0:
            raise DomainError("RDV coordinates need R != 0")

    @property
    def V(self) -> Fraction:
        return self.R ** 2 * (self.D + Fraction(self.e, 2))

    def __str__(self) -> str:
        return f"{fmt(self.R)}:{fmt(self.D)}"

    @classmethod
    def parse(cls, text: str, e: int = 2) -> RDVCoords:
        parts = text.split(":")
        if len(parts) != 2:
            raise ValueError(f"RDV coordinates must look like 'R:D', got {text!r}")
        return cls(parts[0], parts[1], e)


def to_rdv(d: DivisorClass, surface: SurfaceParams = K3) -> RDVCoords:
    if d.a == 0:
        raise DomainError(f"multiples of the fiber ({d}) have no RDV form")
    return RDVCoords(d.a, d.b / d.a - surface.e, surface.e)


def from_rdv(m: RDVCoords) -> DivisorClass:
    return DivisorClass(m.R, m.R * (m.D + m.e))


def volume(d: DivisorClass, surface: SurfaceParams = K3) -> Fraction:
    return intersect(d, d, surface) / 2


def theta_degree(d: DivisorClass, surface: SurfaceParams = K3) -> Fraction:
    return intersect(THETA, d, surface)


def rdv_product(m: RDVCoords, w: RDVCoords) -> Fraction:
    """Intersection number of two divisors given in RDV form.

    The same formula ``R_M R_W (D_M + D_W + e)`` holds for any e; only the
    scalar reading is meaningful (the product of two divisors is a number).
    """
    if m.e != w.e:
        raise DomainError("RDV coordinates taken on different surfaces")
    return m.R * w.R * (m.D + w.D + m.e)


class Positivity(str, enum.Enum):
    AMPLE = "ample"
    NEF_NOT_AMPLE = "nef_not_ample"
    NOT_NEF = "not_nef"


def positivity_class(d: DivisorClass, surface: SurfaceParams = K3) -> Positivity:
    """Ample / nef-but-not-ample / not nef, for ``a*Theta + b*f``.

    For ``a > 0`` the divisor is a positive multiple of ``Theta + (b/a) f``,
    which is ample iff ``b/a > e`` and nef iff ``b/a >= e``.  Multiples of
    the fiber are nef (and never ample); ``a < 0`` fails against ``f``.
    """
    if d.a > 0:
        t = d.b / d.a
        if t > surface.e:
            return Positivity.AMPLE
        if t == surface.e:
            return Positivity.NEF_NOT_AMPLE
        return Positivity.NOT_NEF
    if d.a == 0:
        return Positivity.NEF_NOT_AMPLE if d.b >= 0 else Positivity.NOT_NEF
    return Positivity.NOT_NEF
