"""Phase trajectories of classes as the charge parameters shrink to zero.

Rows are sampled at ``D = 10^-1, ..., 10^-steps`` with ``V = (p/q) D`` along
a ray ``[V : D] = [p : q]``.  In the origin and axis regimes the charge is
``Z_{V,D}``, evaluated exactly.  After the Fourier-Mukai transform the charge
is the Todd charge at ``phi_Z(D, V)``; its real part is rational and its
imaginary part carries a single square root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charges import KernelClass, RayParam, Regime, RescaledVD, eval_charge
from .fm import eval_after_phi_exact
from .lattice import K3, ChernVector, DomainError, SurfaceParams, fmt

CSV_HEADER = "D,V,re,im,phase"


@dataclass(frozen=True)
class TrajectoryRow:
    D: Fraction
    V: Fraction
    re: float
    im: float
    phase: float

    def csv(self) -> str:
        return ",".join(f"{float(x):.12g}" for x in (self.D, self.V, self.re, self.im, self.phase))


def _phase_0_2(re: float, im: float) -> float:
    """``arg(z) / pi`` taken in (0, 2]."""
    t = math.atan2(im, re) / math.pi
    return t + 2 if t <= 0 else t


def _value(v: ChernVector, regime: Regime, D: Fraction, V: Fraction, surface: SurfaceParams) -> tuple[float, float]:
    if regime is Regime.AFTER_FM:
        z = eval_after_phi_exact(v, D, V, surface.d_alpha)
        return float(z.re), z.im
    z = eval_charge(RescaledVD(V, D), v, surface)
    return float(z.re), float(z.im)


def _resolve(obj, regime, surface) -> tuple[ChernVector, Regime]:
    if isinstance(obj, KernelClass):
        if obj.is_zero():
            raise DomainError("the zero kernel class has no trajectory")
        return obj.chern_vector(surface), obj.regime
    return obj, Regime.parse(regime or Regime.ORIGIN)


def sample(obj, regime, points, surface: SurfaceParams = K3) -> list[TrajectoryRow]:
    """Rows at the given ``(D, V)`` points for a class or kernel class."""
    v, regime = _resolve(obj, regime, surface)
    rows = []
    for D, V in points:
        re, im = _value(v, regime, D, V, surface)
        if re == 0 and im == 0:
            raise DomainError(f"Z({v}) = 0 at D = {fmt(D)}, V = {fmt(V)}")
        rows.append(TrajectoryRow(D, V, re, im, _phase_0_2(re, im)))
    return rows


def trajectory(obj, ray: RayParam, steps: int, regime=None, surface: SurfaceParams = K3) -> list[TrajectoryRow]:
    """Sample ``obj`` (a ChernVector or a KernelClass) along ``ray``.

    For a plain ChernVector ``regime`` picks the charge family (default:
    origin, i.e. ``Z_{V,D}``).
    """
    if steps < 2:
        raise ValueError("a trajectory needs at least 2 steps")
    if ray.q == 0:
        raise DomainError("the ray [1:0] keeps D = 0; sample it with axis_path instead")
    points = []
    for k in range(1, steps + 1):
        D = Fraction(1, 10 ** k)
        points.append((D, ray.p / ray.q * D))
    return sample(obj, regime, points, surface)


def axis_path(obj, fixed, steps: int, along: str, regime=None, surface: SurfaceParams = K3) -> list[TrajectoryRow]:
    """Approach an axis: ``along="D"`` sends D -> 0 at fixed V, ``along="V"`` sends V -> 0 at fixed D."""
    if steps < 2:
        raise ValueError("a trajectory needs at least 2 steps")
    fixed = Fraction(fixed)
    small = [Fraction(1, 10 ** k) for k in range(1, steps + 1)]
    if along == "D":
        points = [(t, fixed) for t in small]
    elif along == "V":
        points = [(fixed, t) for t in small]
    else:
        raise ValueError(f"along must be 'D' or 'V', got {along!r}")
    return sample(obj, regime, points, surface)


def extrapolate(rows: list[TrajectoryRow], n: int = 3, along: str = "D") -> float:
    """Estimate the phase at parameter 0 from the last ``n`` rows by a polynomial fit."""
    rows = rows[-n:]
    if len(rows) < 2:
        raise ValueError("need at least two rows to extrapolate")
    t = np.array([float(getattr(r, along)) for r in rows])
    y = np.array([r.phase for r in rows])
    # rescale t so the fit is well conditioned
    scale = t.max()
    coeffs = np.polyfit(t / scale, y, deg=len(rows) - 1)
    return float(coeffs[-1])


def to_csv(rows: list[TrajectoryRow]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv() for r in rows]) + "\n"
