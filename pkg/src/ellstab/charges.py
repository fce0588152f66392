"""Central charges, exact phases and limit phases of kernel objects.

Every charge used here has the shape

    Z(E) = -ch_2^B(E) + c * ch_0^B(E) + i * omega . ch_1^B(E)

for a divisor ``omega``, a B-field ``B`` and a ch_0 coefficient ``c``.  The
concrete :class:`ChargeSpec` subclasses only differ in how they produce the
triple ``(omega, B, c)``.  When all parameters are rational the evaluation is
exact; passing floats switches to float arithmetic (needed when ``omega`` has
an irrational scale factor).

Phases are kept exact as a branch number plus a direction in the closed upper
half plane ``{im > 0} U {im = 0, re < 0}``.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import NamedTuple, Sequence

from .lattice import (
    K3,
    ChernVector,
    DomainError,
    SurfaceParams,
    as_fraction,
    fmt,
    pairing,
    require_k3,
)


def _param(x):
    # floats stay floats (float mode); everything else must be exact
    if isinstance(x, float):
        return x
    return as_fraction(x)


class ChargeForm(NamedTuple):
    omega_a: object
    omega_b: object
    B_a: object
    B_b: object
    ch0_coeff: object


class ChargeSpec:
    """Base class; subclasses implement :meth:`form`."""

    def form(self, surface: SurfaceParams = K3) -> ChargeForm:  # pragma: no cover
        raise NotImplementedError

    def __post_init__(self):
        for f in fields(self):
            if f.name == "d_alpha":
                object.__setattr__(self, f.name, int(self.d_alpha))
            else:
                object.__setattr__(self, f.name, _param(getattr(self, f.name)))

    @property
    def is_exact(self) -> bool:
        return all(not isinstance(getattr(self, f.name), float) for f in fields(self))


@dataclass(frozen=True)
class GeneralRDV(ChargeSpec):
    """``Z_{omega,B}`` with omega and B given in RDV coordinates."""

    R_omega: Fraction
    D_omega: Fraction
    R_B: Fraction
    D_B: Fraction

    def form(self, surface=K3):
        e = surface.e
        if self.R_omega <= 0:
            raise DomainError("R_omega must be positive")
        V = self.R_omega ** 2 * (self.D_omega + Fraction(e, 2))
        return ChargeForm(self.R_omega, self.R_omega * (self.D_omega + e),
                          self.R_B, self.R_B * (self.D_B + e), V)


@dataclass(frozen=True)
class RescaledVD(ChargeSpec):
    """``Z_{V,D} = -ch_2 + V ch_0 + i (Theta + (D+e) f).ch_1`` with V, D independent."""

    V: Fraction
    D: Fraction

    def form(self, surface=K3):
        return ChargeForm(1, self.D + surface.e, 0, 0, self.V)


@dataclass(frozen=True)
class Origin(ChargeSpec):
    """``Z_H = -ch_2 + i H.ch_1`` with ``H = Theta + e f``."""

    def form(self, surface=K3):
        return ChargeForm(1, surface.e, 0, 0, 0)


@dataclass(frozen=True)
class VAxis(ChargeSpec):
    V: Fraction

    def form(self, surface=K3):
        return ChargeForm(1, surface.e, 0, 0, self.V)


@dataclass(frozen=True)
class DAxis(ChargeSpec):
    D: Fraction

    def form(self, surface=K3):
        return ChargeForm(1, self.D + surface.e, 0, 0, 0)


@dataclass(frozen=True)
class Todd(ChargeSpec):
    """Charge with the ``sqrt(td)`` correction: ch_0 coefficient is ``V_omega - 1``."""

    R_omega: Fraction
    D_omega: Fraction
    R_B: Fraction
    D_B: Fraction

    def form(self, surface=K3):
        require_k3(surface, "the Todd-class central charge")
        plain = GeneralRDV(self.R_omega, self.D_omega, self.R_B, self.D_B).form(surface)
        return plain._replace(ch0_coeff=plain.ch0_coeff - 1)


@dataclass(frozen=True)
class ToddSpecial(ChargeSpec):
    """The Todd charge at the special point ``(omega'_0, B'_0)`` fixed by ``d_alpha``."""

    d_alpha: int

    def form(self, surface=K3):
        from .fm import special_point  # fm imports this module

        require_k3(surface, "the Todd-class central charge")
        omega, B = special_point(self.d_alpha)
        V = pairing(omega.a, omega.b, omega.a, omega.b, surface.e) / 2
        return ChargeForm(omega.a, omega.b, B.a, B.b, V - 1)


@dataclass(frozen=True)
class RawCharge(ChargeSpec):
    """Charge given directly by ``omega = (omega_a, omega_b)``, ``B`` and ch_0 coefficient."""

    omega_a: Fraction
    omega_b: Fraction
    B_a: Fraction
    B_b: Fraction
    ch0_coeff: Fraction

    def form(self, surface=K3):
        return ChargeForm(self.omega_a, self.omega_b, self.B_a, self.B_b, self.ch0_coeff)


@dataclass(frozen=True)
class ChargeValue:
    re: Fraction
    im: Fraction

    def __add__(self, other: ChargeValue) -> ChargeValue:
        return ChargeValue(self.re + other.re, self.im + other.im)

    def __neg__(self) -> ChargeValue:
        return ChargeValue(-self.re, -self.im)

    def __mul__(self, k) -> ChargeValue:
        return ChargeValue(k * self.re, k * self.im)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_json(self) -> dict:
        return {"re": fmt(self.re), "im": fmt(self.im)}


def eval_charge(spec: ChargeSpec, v: ChernVector, surface: SurfaceParams = K3) -> ChargeValue:
    wa, wb, Ba, Bb, c = spec.form(surface)
    e = surface.e
    r = v.r
    c1a, c1b = v.a - r * Ba, v.b - r * Bb
    ch2B = v.s - pairing(Ba, Bb, v.a, v.b, e) + r * pairing(Ba, Bb, Ba, Bb, e) / 2
    return ChargeValue(-ch2B + c * r, pairing(wa, wb, c1a, c1b, e))


def in_closed_upper_half(z: ChargeValue) -> bool:
    return z.im > 0 or (z.im == 0 and z.re <= 0)


class Order(str, enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@functools.total_ordering
@dataclass(frozen=True)
class Phase:
    """``branch + arg(dir)/pi`` with ``arg(dir)/pi`` in (0, 1].

    The direction is normalised to ``(-slope, 1)`` when ``dir_im > 0`` and to
    ``(-1, 0)`` on the negative real axis, so equal phases compare equal and
    hash equal.
    """

    branch: int
    dir_re: Fraction
    dir_im: Fraction

    def __post_init__(self):
        re, im = _param(self.dir_re), _param(self.dir_im)
        object.__setattr__(self, "branch", int(self.branch))
        if not (im > 0 or (im == 0 and re < 0)):
            raise DomainError(f"phase direction ({re}, {im}) is not in the closed upper half plane")
        if im > 0:
            re, im = re / im, im / im
        else:
            re, im = re / -re, im * 0
        object.__setattr__(self, "dir_re", re)
        object.__setattr__(self, "dir_im", im)

    @property
    def value(self) -> float:
        return self.branch + math.atan2(float(self.dir_im), float(self.dir_re)) / math.pi

    @property
    def exact(self) -> Fraction | None:
        """The phase as a rational number when it is one.

        For a rational direction this only happens for slopes 0, +-1 and the
        real axis.
        """
        if isinstance(self.dir_re, float):
            return None
        if self.dir_im == 0:
            frac = Fraction(1)
        elif self.dir_re == 0:
            frac = Fraction(1, 2)
        elif self.dir_re == -1:
            frac = Fraction(3, 4)
        elif self.dir_re == 1:
            frac = Fraction(1, 4)
        else:
            return None
        return self.branch + frac

    def compare(self, other: Phase) -> Order:
        if self.branch != other.branch:
            return Order.LT if self.branch < other.branch else Order.GT
        # sin(angle2 - angle1), both angles in (0, pi]
        cross = self.dir_re * other.dir_im - self.dir_im * other.dir_re
        s = _sign(cross)
        return Order.LT if s > 0 else Order.GT if s < 0 else Order.EQ

    def __eq__(self, other):
        if not isinstance(other, Phase):
            return NotImplemented
        return self.compare(other) is Order.EQ

    def __lt__(self, other):
        if not isinstance(other, Phase):
            return NotImplemented
        return self.compare(other) is Order.LT

    def __hash__(self):
        return hash((self.branch, self.dir_re, self.dir_im))

    def shifted(self, n: int = 1) -> Phase:
        return Phase(self.branch + n, self.dir_re, self.dir_im)

    def __str__(self) -> str:
        ex = self.exact
        return fmt(ex) if ex is not None else f"{self.value:.12g}"

    def to_json(self) -> dict:
        ex = self.exact
        return {
            "phase": fmt(ex) if ex is not None else f"{self.value:.12g}",
            "branch": self.branch,
            "dir": [fmt(self.dir_re), fmt(self.dir_im)],
            "approx": round(self.value, 12),
        }


def compare_phase(p1: Phase, p2: Phase) -> Order:
    return p1.compare(p2)


def phase(z: ChargeValue) -> Phase:
    if z.is_zero():
        raise DomainError("Z = 0: kernel objects have no charge phase, use a limit phase")
    if in_closed_upper_half(z):
        return Phase(0, z.re, z.im)
    return Phase(-1, -z.re, -z.im)


def slope(z: ChargeValue):
    """``-Re Z / Im Z``, or ``math.inf`` on the real axis."""
    if z.is_zero():
        raise DomainError("slope of Z = 0 is undefined")
    if z.im == 0:
        return math.inf
    return -z.re / z.im


class Regime(str, enum.Enum):
    ORIGIN = "origin"
    V_AXIS = "v_axis"
    D_AXIS = "d_axis"
    AFTER_FM = "after_fm"

    @classmethod
    def parse(cls, text) -> Regime:
        if isinstance(text, cls):
            return text
        return cls(str(text).strip().lower().replace("-", "_"))

    @property
    def n_generators(self) -> int:
        return 1 if self in (Regime.V_AXIS, Regime.D_AXIS) else 2


@dataclass(frozen=True)
class KernelClass:
    """Multiplicities over the kernel generators of a regime.

    origin: (O_Theta(-1), O_X[1]); v_axis: (O_Theta(-1),); d_axis: (O_X[1],);
    after_fm: (L_0[1], L_1).
    """

    regime: Regime
    mults: tuple[int, ...]

    def __post_init__(self):
        regime = Regime.parse(self.regime)
        mults = tuple(int(m) for m in self.mults)
        if len(mults) != regime.n_generators:
            raise DomainError(f"{regime.value} kernel classes have {regime.n_generators} multiplicities")
        if any(m < 0 for m in mults):
            raise DomainError("kernel multiplicities must be nonnegative")
        object.__setattr__(self, "regime", regime)
        object.__setattr__(self, "mults", mults)

    def is_zero(self) -> bool:
        return not any(self.mults)

    def __add__(self, other: KernelClass) -> KernelClass:
        if self.regime is not other.regime:
            raise DomainError(f"regime mismatch: {self.regime.value} vs {other.regime.value}")
        return KernelClass(self.regime, tuple(x + y for x, y in zip(self.mults, other.mults)))

    def chern_vector(self, surface: SurfaceParams = K3) -> ChernVector:
        from .inequalities import classify_kernel

        gens = classify_kernel(self.regime, surface).generators
        total = ChernVector(0, 0, 0, 0)
        for m, g in zip(self.mults, gens):
            total = total + m * g
        return total


@dataclass(frozen=True)
class RayParam:
    """The ray ``[V : D] = [p : q]`` along which ``V, D -> 0``."""

    p: Fraction
    q: Fraction

    def __post_init__(self):
        p, q = as_fraction(self.p), as_fraction(self.q)
        if p < 0 or q < 0:
            raise DomainError("ray coordinates must be nonnegative")
        if p == 0 and q == 0:
            raise DomainError("the ray [0:0] is not a point of P^1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> RayParam:
        parts = text.split(":")
        if len(parts) != 2:
            raise ValueError(f"ray must look like 'p:q', got {text!r}")
        return cls(*parts)


def _check_kernel(k: KernelClass, regime: Regime) -> None:
    if k.regime is not regime:
        raise DomainError(f"expected a {regime.value} kernel class, got {k.regime.value}")
    if k.is_zero():
        raise DomainError("the zero kernel class has no phase")


def limit_phase_origin(k: KernelClass, ray: RayParam) -> Phase:
    """Limit of the phase of ``Z_{V,D}(K) = -m1 V + i m0 D`` as V, D -> 0 along ``ray``."""
    _check_kernel(k, Regime.ORIGIN)
    m0, m1 = k.mults
    if m1 == 0:
        return Phase(0, 0, 1)
    if m0 == 0:
        return Phase(0, -1, 0)
    return Phase(0, -m1 * ray.p, m0 * ray.q)


def limit_phase_after_fm(k: KernelClass, ray: RayParam) -> Phase:
    """Limit phase of ``n0 L_0[1] + n1 L_1`` after the Fourier-Mukai transform.

    Along ``[V : D] = [p : q]`` the slope tends to
    ``(n0 q - n1 p) / (n0 q + n1 p)``, which lies in [-1, 1].
    """
    _check_kernel(k, Regime.AFTER_FM)
    n0, n1 = k.mults
    if n1 == 0:
        return Phase(0, -1, 1)
    if n0 == 0:
        return Phase(0, 1, 1)
    num = n0 * ray.q - n1 * ray.p
    den = n0 * ray.q + n1 * ray.p
    return Phase(0, -num, den)


def fixed_kernel_phase(regime) -> Phase:
    regime = Regime.parse(regime)
    if regime is Regime.V_AXIS:
        return Phase(0, 0, 1)
    if regime is Regime.D_AXIS:
        return Phase(0, -1, 0)
    raise DomainError(f"kernel phases in the {regime.value} regime depend on a ray")


def limit_phase(k: KernelClass, ray: RayParam | None = None) -> Phase:
    if k.is_zero():
        raise DomainError("the zero kernel class has no phase")
    if k.regime in (Regime.V_AXIS, Regime.D_AXIS):
        return fixed_kernel_phase(k.regime)
    if ray is None:
        raise DomainError(f"a ray is required in the {k.regime.value} regime")
    if k.regime is Regime.ORIGIN:
        return limit_phase_origin(k, ray)
    return limit_phase_after_fm(k, ray)


def seesaw_audit(k1: KernelClass, k2: KernelClass, ray: RayParam | None = None) -> bool:
    """True iff the phase of ``k1 + k2`` lies weakly between those of k1 and k2."""
    total = k1 + k2
    if k1.is_zero() or k2.is_zero():
        return True
    p1, p2, p = limit_phase(k1, ray), limit_phase(k2, ray), limit_phase(total, ray)
    lo, hi = min(p1, p2), max(p1, p2)
    return lo <= p <= hi


def hn_audit(phases: Sequence[Phase]) -> bool:
    """Shape check for a Harder-Narasimhan decomposition: strictly decreasing phases."""
    return all(a > b for a, b in zip(phases, phases[1:]))
