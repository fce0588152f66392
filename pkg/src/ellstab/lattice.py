"""Numerical Chern classes on a Weierstrass elliptic surface.

Classes live in the lattice spanned by rank, the section ``Theta``, the fiber
``f`` and the point class.  A class is stored as ``(r, a, b, s)`` meaning

    ch_0 = r,   ch_1 = a*Theta + b*f,   ch_2 = s * [pt]

with intersection numbers ``Theta^2 = -e``, ``Theta.f = 1``, ``f^2 = 0``.
Everything here is exact: fields are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


class DomainError(ValueError):
    """A mathematically invalid request (bad parameters, empty kernel, ...)."""


class NotK3Error(DomainError):
    """Raised by operations whose formulas are only valid for e = 2."""


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused so that exact code paths never silently go inexact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def fmt(x) -> str:
    """Render a rational as ``"p/q"`` (or an integer); floats as 12 sig. digits."""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(as_fraction(x))


@dataclass(frozen=True)
class SurfaceParams:
    e: int = 2
    d_alpha: int = 0

    def __post_init__(self):
        if isinstance(self.e, bool) or int(self.e) != self.e or self.e < 1:
            raise DomainError(f"e must be a positive integer, got {self.e!r}")
        if int(self.d_alpha) != self.d_alpha:
            raise DomainError(f"d_alpha must be an integer, got {self.d_alpha!r}")
        object.__setattr__(self, "e", int(self.e))
        object.__setattr__(self, "d_alpha", int(self.d_alpha))

    @property
    def is_k3(self) -> bool:
        return self.e == 2


K3 = SurfaceParams()


def require_k3(surface: SurfaceParams, what: str = "this operation") -> None:
    if not surface.is_k3:
        raise NotK3Error(f"{what} is only defined on a K3 surface (e = 2), got e = {surface.e}")


def pairing(a1, b1, a2, b2, e):
    """(a1*Theta + b1*f) . (a2*Theta + b2*f); generic over number types."""
    return -e * a1 * a2 + a1 * b2 + a2 * b1


@dataclass(frozen=True)
class DivisorClass:
    """The divisor ``a*Theta + b*f``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-self.a, -self.b)

    def __mul__(self, k) -> DivisorClass:
        k = as_fraction(k)
        return DivisorClass(k * self.a, k * self.b)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{fmt(self.a)}:{fmt(self.b)}"

    @classmethod
    def parse(cls, text: str) -> DivisorClass:
        parts = text.split(":")
        if len(parts) != 2:
            raise ValueError(f"divisor must look like 'a:b', got {text!r}")
        return cls(*parts)


THETA = DivisorClass(1, 0)
FIBER = DivisorClass(0, 1)
ZERO_DIVISOR = DivisorClass(0, 0)


def intersect(d1: DivisorClass, d2: DivisorClass, surface: SurfaceParams = K3) -> Fraction:
    return pairing(d1.a, d1.b, d2.a, d2.b, surface.e)


@dataclass(frozen=True)
class ChernVector:
    """Numerical class ``(ch_0, ch_1, ch_2) = (r, a*Theta + b*f, s*[pt])``."""

    r: Fraction
    a: Fraction
    b: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ("r", "a", "b", "s"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @property
    def c1(self) -> DivisorClass:
        return DivisorClass(self.a, self.b)

    def theta_degree(self, surface: SurfaceParams = K3) -> Fraction:
        """``Theta . ch_1`` (the coordinate usually called x)."""
        return -surface.e * self.a + self.b

    def fiber_degree(self) -> Fraction:
        """``f . ch_1`` (the coordinate usually called y)."""
        return self.a

    def __add__(self, other: ChernVector) -> ChernVector:
        return ChernVector(self.r + other.r, self.a + other.a, self.b + other.b, self.s + other.s)

    def __sub__(self, other: ChernVector) -> ChernVector:
        return self + (-other)

    def __neg__(self) -> ChernVector:
        return ChernVector(-self.r, -self.a, -self.b, -self.s)

    def __mul__(self, k) -> ChernVector:
        k = as_fraction(k)
        return ChernVector(k * self.r, k * self.a, k * self.b, k * self.s)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.r, self.a, self.b, self.s)

    def __str__(self) -> str:
        return ":".join(fmt(x) for x in self.as_tuple())

    @classmethod
    def parse(cls, text: str) -> ChernVector:
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError(f"Chern vector must look like 'r:a:b:s', got {text!r}")
        return cls(*parts)


ZERO_CLASS = ChernVector(0, 0, 0, 0)
POINT_CLASS = ChernVector(0, 0, 0, 1)
BASIS = (
    ChernVector(1, 0, 0, 0),
    ChernVector(0, 1, 0, 0),
    ChernVector(0, 0, 1, 0),
    ChernVector(0, 0, 0, 1),
)


def ch_line_bundle(d: DivisorClass, surface: SurfaceParams = K3) -> ChernVector:
    return ChernVector(1, d.a, d.b, intersect(d, d, surface) / 2)


def ch_section_sheaf(m: int, surface: SurfaceParams = K3) -> ChernVector:
    """Class of ``O_Theta(m)``, the pushforward of ``O_{P^1}(m)`` along the section.

    Grothendieck-Riemann-Roch with ``td(X) = (1, 0, 2[pt])`` gives ch_2 = m + 1.
    """
    require_k3(surface, "ch_section_sheaf")
    return ChernVector(0, 1, 0, as_fraction(m) + 1)


def twist(v: ChernVector, B: DivisorClass, surface: SurfaceParams = K3) -> ChernVector:
    """``ch^B = exp(-B) ch``."""
    c1 = v.c1 - v.r * B
    s = v.s - intersect(B, v.c1, surface) + v.r * intersect(B, B, surface) / 2
    return ChernVector(v.r, c1.a, c1.b, s)


def shift(v: ChernVector) -> ChernVector:
    """Class of ``E[1]``."""
    return -v


@dataclass(frozen=True)
class MukaiVector:
    r: Fraction
    c1: DivisorClass
    s_tilde: Fraction

    def __str__(self) -> str:
        return f"({fmt(self.r)}, {self.c1}, {fmt(self.s_tilde)})"


def mukai_vector(v: ChernVector, surface: SurfaceParams = K3) -> MukaiVector:
    require_k3(surface, "mukai_vector")
    return MukaiVector(v.r, v.c1, v.r + v.s)


def mukai_pairing(v: MukaiVector, w: MukaiVector, surface: SurfaceParams = K3) -> Fraction:
    require_k3(surface, "mukai_pairing")
    return intersect(v.c1, w.c1, surface) - v.r * w.s_tilde - w.r * v.s_tilde


def euler_characteristic(v: ChernVector, w: ChernVector, surface: SurfaceParams = K3) -> Fraction:
    """chi(v, w) = -(v(v), v(w)) by Riemann-Roch on a K3."""
    require_k3(surface, "euler_characteristic")
    return -mukai_pairing(mukai_vector(v, surface), mukai_vector(w, surface), surface)
