"""Relative Fourier-Mukai transform and the central charge equation.

We look for ``(omega', B')`` and ``T`` in GL+(2, R) with

    Z'_{omega',B'}(Phi(E)) = T Z_{omega,B}(E)     for all E.

After the rescaling ``Z -> [[1, -R_B/R_omega], [0, 1/R_omega]] Z`` both sides
have rational coefficients ``(L, M, N)`` and the equation becomes four linear
relations between them, solved in closed form by :func:`solve_cce`.  The
"todd" variant targets the charge with ``(V - 1) ch_0`` instead of ``V ch_0``;
it changes only ``V_omega'`` (by +1).

Only the rescaled identity is checked exactly; ``T`` itself involves
``R_omega = sqrt(V / (D + e/2))`` and is handled in floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .charges import ChargeValue, RawCharge, eval_charge, GeneralRDV, ToddSpecial
from .lattice import (
    BASIS,
    K3,
    ChernVector,
    DivisorClass,
    DomainError,
    SurfaceParams,
    as_fraction,
    fmt,
    require_k3,
)


def _fm_numeric(v: ChernVector, e: int) -> ChernVector:
    # (n, c, d, s) = (ch_0, Theta.ch_1, f.ch_1, ch_2)
    n, c, d, s = v.r, v.theta_degree(SurfaceParams(e)), v.fiber_degree(), v.s
    half_e = Fraction(e, 2)
    new_y = -n
    new_x = s - half_e * d + e * n
    # back to the (Theta, f) basis: a = f.ch_1, b = Theta.ch_1 + e a
    return ChernVector(d, new_y, new_x + e * new_y, -c - e * d + half_e * n)


def fm_transform(v: ChernVector, surface: SurfaceParams = K3) -> ChernVector:
    """Action of the relative Fourier-Mukai transform on Chern characters."""
    require_k3(surface, "fm_transform")
    return _fm_numeric(v, surface.e)


class Variant(str, enum.Enum):
    PLAIN = "plain"
    TODD = "todd"

    @classmethod
    def parse(cls, text) -> Variant:
        if isinstance(text, cls):
            return text
        text = str(text).strip().lower()
        return cls.TODD if text in ("td", "todd") else cls(text)


@dataclass(frozen=True)
class CCEInput:
    D_omega: Fraction
    V_omega: Fraction
    R_B: Fraction
    D_B: Fraction
    e: int = 2
    variant: Variant = Variant.TODD

    def __post_init__(self):
        for name in ("D_omega", "V_omega", "R_B", "D_B"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        SurfaceParams(self.e)  # validates e


@dataclass(frozen=True)
class CCEOutput:
    D_omega_p: Fraction
    R_B_p: Fraction
    V_omega_p: Fraction
    RBp_DBp: Fraction
    T: tuple[tuple[float, float], tuple[float, float]] | None
    T_exists: bool

    def to_json(self) -> dict:
        return {
            "D_omega_p": fmt(self.D_omega_p),
            "R_B_p": fmt(self.R_B_p),
            "V_omega_p": fmt(self.V_omega_p),
            "RBp_DBp": fmt(self.RBp_DBp),
            "T": [[float(f"{t:.12g}") for t in row] for row in self.T] if self.T_exists else None,
            "T_exists": self.T_exists,
        }

    @property
    def values(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.D_omega_p, self.R_B_p, self.V_omega_p, self.RBp_DBp)

    def B_prime(self, e: int = 2) -> DivisorClass:
        """``B' = R_B' Theta + (R_B' D_B' + e R_B') f``, built without D_B' alone."""
        return DivisorClass(self.R_B_p, self.RBp_DBp + e * self.R_B_p)


@dataclass(frozen=True)
class RescaledChargeCoeffs:
    """``Z' = -ch_2 + L f.ch_1 + M ch_0 + i (Theta.ch_1 + D_shift f.ch_1 + N ch_0)``."""

    L: Fraction
    M: Fraction
    N: Fraction
    D_shift: Fraction

    def value(self, v: ChernVector, e: int = 2) -> ChargeValue:
        n, c, d, s = v.r, v.theta_degree(SurfaceParams(e)), v.fiber_degree(), v.s
        return ChargeValue(-s + self.L * d + self.M * n, c + self.D_shift * d + self.N * n)


def _coeffs(D_omega, V_omega, R_B, RB_DB, e) -> RescaledChargeCoeffs:
    # B enters only through R_B and the product R_B * D_B
    L = RB_DB - R_B * D_omega
    M = V_omega + R_B ** 2 * (D_omega + Fraction(e, 2))
    N = -RB_DB - R_B * (D_omega + e)
    return RescaledChargeCoeffs(L, M, N, D_omega + e)


def rescaled_charge_coeffs(D_omega, V_omega, R_B, D_B, e: int = 2) -> RescaledChargeCoeffs:
    D_omega, V_omega, R_B, D_B = map(as_fraction, (D_omega, V_omega, R_B, D_B))
    V_B = R_B ** 2 * (D_B + Fraction(e, 2))
    L = R_B * (D_B - D_omega)
    M = V_omega - V_B + R_B ** 2 * (D_B + D_omega + e)
    N = -R_B * (D_B + D_omega + e)
    return RescaledChargeCoeffs(L, M, N, D_omega + e)


def _rescaling(R_B: float, R_omega: float) -> np.ndarray:
    return np.array([[1.0, -R_B / R_omega], [0.0, 1.0 / R_omega]])


_MINUS_I = np.array([[0.0, 1.0], [-1.0, 0.0]])


def _omega_scale(V, D, e) -> float | None:
    """``R = sqrt(V / (D + e/2))`` when that is a positive real, else None."""
    if V > 0 and D + Fraction(e, 2) > 0:
        return math.sqrt(V / (D + Fraction(e, 2)))
    return None


def _t_matrix(D_omega, V_omega, R_B, D_p, V_p, R_B_p, e):
    R_omega = _omega_scale(V_omega, D_omega, e)
    R_omega_p = _omega_scale(V_p, D_p, e)
    if R_omega is None or R_omega_p is None:
        return None
    T = np.linalg.inv(_rescaling(float(R_B_p), R_omega_p)) @ _MINUS_I @ _rescaling(float(R_B), R_omega)
    return tuple(tuple(float(x) for x in row) for row in T)


def solve_cce(inp: CCEInput) -> CCEOutput:
    e = inp.e
    if inp.variant is Variant.TODD:
        require_k3(SurfaceParams(e), "the Todd-class central charge equation")
    D, V, R_B, D_B = inp.D_omega, inp.V_omega, inp.R_B, inp.D_B
    D_p = V + R_B ** 2 * (D + Fraction(e, 2))
    den = 2 * D_p + e
    if den == 0:
        raise DomainError("2 D_omega' + e = 0: the central charge equation has no solution here")
    R_B_p = R_B * (-2 * D - e) / den
    V_p = D - R_B ** 2 * (2 * D + e) ** 2 / (2 * den)
    if inp.variant is Variant.TODD:
        V_p += 1
    # at e = 2 this is R_B D_B + R_B - R_B' - 1
    RBD_p = R_B * D_B + Fraction(e, 2) * (R_B - R_B_p - 1)
    T = _t_matrix(D, V, R_B, D_p, V_p, R_B_p, e)
    return CCEOutput(D_p, R_B_p, V_p, RBD_p, T, T is not None)


def target_coeffs(out: CCEOutput, e: int = 2, variant=Variant.TODD) -> RescaledChargeCoeffs:
    """Rescaled coefficients of the charge on the transformed side."""
    c = _coeffs(out.D_omega_p, out.V_omega_p, out.R_B_p, out.RBp_DBp, e)
    if Variant.parse(variant) is Variant.TODD:
        c = RescaledChargeCoeffs(c.L, c.M - 1, c.N, c.D_shift)
    return c


class Residual(NamedTuple):
    exact_zero: bool
    float_residual: float


def cce_residual(inp: CCEInput, out: CCEOutput) -> Residual:
    """Check ``Z''_{omega',B'}(Phi v) = -i Z'_{omega,B}(v)`` on the lattice basis.

    ``exact_zero`` is the exact rational check of the rescaled identity.
    ``float_residual`` is the largest relative deviation of the unrescaled
    equation with the computed ``T`` (NaN when ``T`` does not exist).
    """
    e = inp.e
    src = rescaled_charge_coeffs(inp.D_omega, inp.V_omega, inp.R_B, inp.D_B, e)
    tgt = target_coeffs(out, e, inp.variant)
    exact = True
    for v in BASIS:
        lhs = tgt.value(_fm_numeric(v, e), e)
        rhs = src.value(v, e)
        if (lhs.re, lhs.im) != (rhs.im, -rhs.re):
            exact = False
    if not out.T_exists:
        return Residual(exact, math.nan)

    surface = SurfaceParams(e)
    R_omega = _omega_scale(inp.V_omega, inp.D_omega, e)
    R_omega_p = _omega_scale(out.V_omega_p, out.D_omega_p, e)
    source = GeneralRDV(R_omega, inp.D_omega, inp.R_B, inp.D_B)
    Bp = out.B_prime(e)
    ch0 = float(out.V_omega_p) - (1.0 if inp.variant is Variant.TODD else 0.0)
    target = RawCharge(R_omega_p, R_omega_p * float(out.D_omega_p + e), Bp.a, Bp.b, ch0)
    T = np.array(out.T)
    worst = 0.0
    for v in BASIS:
        z = eval_charge(source, v, surface)
        want = T @ np.array([float(z.re), float(z.im)])
        got = eval_charge(target, _fm_numeric(v, e), surface)
        diff = np.hypot(float(got.re) - want[0], float(got.im) - want[1])
        worst = max(worst, float(diff / max(1.0, float(np.hypot(*want)))))
    return Residual(exact, worst)


def phi_Z(D_omega, V_omega, d_alpha: int) -> CCEOutput:
    """The solution map specialised to ``B = -alpha``, ``alpha = Theta + (d_alpha + 2) f``, on a K3."""
    D, V = as_fraction(D_omega), as_fraction(V_omega)
    den = D + V + 2
    if den == 0:
        raise DomainError("D_omega + V_omega + 2 = 0")
    D_p = V + D + 1
    R_B_p = (D + 1) / den
    V_p = (D * V - 1) / den + 1
    RBD_p = -(D + 1) / den - (int(d_alpha) + 2)
    T = _t_matrix(D, V, -1, D_p, V_p, R_B_p, 2)
    return CCEOutput(D_p, R_B_p, V_p, RBD_p, T, T is not None)


def _exact_sqrt(x: Fraction) -> Fraction:
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if x < 0 or num * num != x.numerator or den * den != x.denominator:
        raise DomainError(f"{x} is not the square of a rational")
    return Fraction(num, den)


def special_point(d_alpha: int) -> tuple[DivisorClass, DivisorClass]:
    """``(omega'_0, B'_0)``: the image of the origin ``D = V = 0`` under :func:`phi_Z`."""
    out = phi_Z(0, 0, d_alpha)
    R = _exact_sqrt(out.V_omega_p / (out.D_omega_p + 1))
    return DivisorClass(R, R * (out.D_omega_p + 2)), out.B_prime(2)


def eval_Z0(v: ChernVector, d_alpha: int, surface: SurfaceParams = K3) -> ChargeValue:
    require_k3(surface, "eval_Z0")
    return eval_charge(ToddSpecial(d_alpha), v, surface)


def todd_charge_after_phi(D_omega: float, V_omega: float, d_alpha: int) -> RawCharge:
    """Float-mode Todd charge at ``phi_Z(D_omega, V_omega)``; omega' has an irrational scale."""
    out = phi_Z(Fraction(D_omega), Fraction(V_omega), d_alpha)
    R = _omega_scale(out.V_omega_p, out.D_omega_p, 2)
    if R is None:
        raise DomainError("omega' is not a real ample class at this point")
    Bp = out.B_prime(2)
    return RawCharge(R, R * float(out.D_omega_p + 2), Bp.a, Bp.b, float(out.V_omega_p) - 1.0)


class ImRe(NamedTuple):
    """``im = im_coeff * sqrt(im_radicand)`` (kept exact); ``re`` is rational."""

    im: float
    re: Fraction
    im_coeff: Fraction
    im_radicand: Fraction


def imre_formulas(y: int, D_omega, V_omega) -> ImRe:
    """Closed forms for ``Z^td`` after ``phi_Z`` on a rank-one kernel sheaf with ``f.ch_1 = y``."""
    if y not in (0, 1):
        raise DomainError(f"y must be 0 or 1, got {y!r}")
    D, V = as_fraction(D_omega), as_fraction(V_omega)
    if D <= 0 or V <= 0:
        raise DomainError("D_omega and V_omega must be positive")
    den = D + V + 2
    radicand = (D + 1) * (V + 1)
    coeff = (y * (D + V) - D) / den
    re = (V - D) / den * y + (D * V + D) / den
    return ImRe(float(coeff) * math.sqrt(radicand), re, coeff, radicand)


def eval_after_phi_exact(v: ChernVector, D_omega, V_omega, d_alpha: int) -> ImRe:
    """Exact ``Z^td`` at ``phi_Z(D, V)`` as (rational real part, radical imaginary part).

    ``R_omega'^2 = (D+1)(V+1) / (D+V+2)^2``, so the imaginary part is
    ``omega_hat'.ch_1^{B'} / (D+V+2)`` times ``sqrt((D+1)(V+1))``.
    """
    D, V = as_fraction(D_omega), as_fraction(V_omega)
    if D + V + 2 <= 0 or (D + 1) * (V + 1) < 0:
        raise DomainError("omega' is not a real class at this point")
    out = phi_Z(D, V, d_alpha)
    Bp = out.B_prime(2)
    unit = RawCharge(1, out.D_omega_p + 2, Bp.a, Bp.b, out.V_omega_p - 1)
    z = eval_charge(unit, v)
    radicand = (D + 1) * (V + 1)
    coeff = z.im / (D + V + 2)
    return ImRe(float(coeff) * math.sqrt(radicand), z.re, coeff, radicand)
