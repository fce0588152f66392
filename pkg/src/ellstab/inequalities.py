"""Bogomolov-Gieseker and Hodge index checks, and kernel classification.

``classify_kernel`` transcribes the known generators of ``ker Z`` in each of
the four weak-stability regimes and verifies that the charge kills them.
``kernel_sublattice`` is the raw linear-algebra kernel, which can be larger
than the categorical one at special parameter values.
"""

from __future__ import annotations

import dataclasses
import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .charges import (
    ChargeSpec,
    DAxis,
    Origin,
    Regime,
    ToddSpecial,
    VAxis,
    eval_charge,
)
from .lattice import (
    BASIS,
    FIBER,
    K3,
    THETA,
    ZERO_DIVISOR,
    ChernVector,
    DivisorClass,
    DomainError,
    SurfaceParams,
    as_fraction,
    ch_line_bundle,
    ch_section_sheaf,
    intersect,
    require_k3,
    shift,
    twist,
)


class HodgeIndexPreconditionError(DomainError):
    """Raised when H^2 <= 0 or H.c != 0; ``code`` says which."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class TruncatedWindowWarning(UserWarning):
    pass


class NonGenericKernelWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SlackReport:
    holds: bool
    slack: Fraction


def _report(slack: Fraction) -> SlackReport:
    return SlackReport(slack >= 0, slack)


def bg_standard(v: ChernVector, surface: SurfaceParams = K3) -> SlackReport:
    """``ch_2 <= ch_1^2 / (2 ch_0)``; slack is RHS - LHS."""
    if v.r <= 0:
        raise DomainError("Bogomolov-Gieseker needs positive rank")
    return _report(intersect(v.c1, v.c1, surface) / (2 * v.r) - v.s)


def bg_sharp(v: ChernVector, B: DivisorClass = ZERO_DIVISOR, surface: SurfaceParams = K3) -> SlackReport:
    """K3 inequality ``ch_2^B <= (ch_1^B)^2/(2 ch_0) - ch_0 + 1/ch_0`` for stable sheaves."""
    require_k3(surface, "the sharp Bogomolov-Gieseker inequality")
    if v.r <= 0:
        raise DomainError("Bogomolov-Gieseker needs positive rank")
    w = twist(v, B, surface)
    rhs = intersect(w.c1, w.c1, surface) / (2 * w.r) - w.r + 1 / w.r
    return _report(rhs - w.s)


def hodge_index_check(H: DivisorClass, c: DivisorClass, surface: SurfaceParams = K3) -> bool:
    if intersect(H, H, surface) <= 0:
        raise HodgeIndexPreconditionError("H_SQUARE_NOT_POSITIVE", f"H^2 must be positive for H = {H}")
    if intersect(H, c, surface) != 0:
        raise HodgeIndexPreconditionError("NOT_ORTHOGONAL", f"H.c must vanish, got {intersect(H, c, surface)}")
    return intersect(c, c, surface) <= 0


def hit_family_feasible(y) -> bool:
    """Whether ``a^2 + 2 y a + y >= 0`` for every real a.

    That is the Hodge index constraint ``(2a + 1) y >= -a^2``; its
    discriminant ``y^2 - y`` is nonpositive exactly for ``0 <= y <= 1``.
    """
    y = as_fraction(y)
    return 0 <= y <= 1


def hit_family_grid_violation(y, lo=-10, hi=10, step=Fraction(1, 4)) -> Fraction | None:
    """Grid oracle: the first a on ``lo, lo+step, ..., hi`` violating the constraint, if any."""
    y = as_fraction(y)
    a = as_fraction(lo)
    while a <= hi:
        if a * a + 2 * y * a + y < 0:
            return a
        a += step
    return None


def l0_divisor(d_alpha: int) -> DivisorClass:
    return -(int(d_alpha) + 1) * FIBER


def l1_divisor(d_alpha: int) -> DivisorClass:
    return THETA - (int(d_alpha) + 2) * FIBER


@dataclass(frozen=True)
class KernelBasis:
    regime: Regime
    generators: tuple[ChernVector, ...]

    def to_json(self) -> dict:
        return {"regime": self.regime.value, "generators": [str(g) for g in self.generators]}


def regime_charge(regime, surface: SurfaceParams = K3, V=1, D=1) -> ChargeSpec:
    """A representative charge of each regime (V, D are only used on the axes)."""
    regime = Regime.parse(regime)
    if regime is Regime.ORIGIN:
        return Origin()
    if regime is Regime.V_AXIS:
        return VAxis(V)
    if regime is Regime.D_AXIS:
        return DAxis(D)
    return ToddSpecial(surface.d_alpha)


def classify_kernel(regime, surface: SurfaceParams = K3) -> KernelBasis:
    require_k3(surface, "classify_kernel")
    regime = Regime.parse(regime)
    o_x_shift = shift(ch_line_bundle(ZERO_DIVISOR, surface))
    o_theta = ch_section_sheaf(-1, surface)
    if regime is Regime.ORIGIN:
        gens = (o_theta, o_x_shift)
    elif regime is Regime.V_AXIS:
        gens = (o_theta,)
    elif regime is Regime.D_AXIS:
        gens = (o_x_shift,)
    else:
        gens = (
            shift(ch_line_bundle(l0_divisor(surface.d_alpha), surface)),
            ch_line_bundle(l1_divisor(surface.d_alpha), surface),
        )
    charge = regime_charge(regime, surface)
    for g in gens:
        if not eval_charge(charge, g, surface).is_zero():
            raise AssertionError(f"generator {g} is not in the kernel of the {regime.value} charge")
    return KernelBasis(regime, gens)


def classify_kernel_after_fm_bruteforce(d_alpha: int, bound: int, surface: SurfaceParams = K3) -> list[ChernVector]:
    """Search line-bundle classes ``ch_1 = a Theta + b f`` with ``|a|, |b| <= bound``.

    Keeps those with ``x + 3y = -d_alpha - 1``, ``ch_1^2 = -(2 d_alpha + 6) y``
    (``x = Theta.ch_1``, ``y = f.ch_1``) that also satisfy the Hodge index
    family constraint.
    """
    require_k3(surface, "classify_kernel_after_fm_bruteforce")
    if bound < 1:
        raise DomainError("bound must be a positive integer")
    d_alpha = int(d_alpha)
    if bound < max(abs(d_alpha + 1), abs(d_alpha + 2), 1):
        warnings.warn(
            f"bound {bound} cannot contain both kernel generators for d_alpha = {d_alpha}",
            TruncatedWindowWarning,
            stacklevel=2,
        )
    found = []
    for a, b in itertools.product(range(-bound, bound + 1), repeat=2):
        v = ch_line_bundle(DivisorClass(a, b), surface)
        x, y = v.theta_degree(surface), v.fiber_degree()
        if x + 3 * y != -d_alpha - 1:
            continue
        if intersect(v.c1, v.c1, surface) != -(2 * d_alpha + 6) * y:
            continue
        if hit_family_feasible(y):
            found.append(v)
    return found


def _nullspace(rows: list[list[Fraction]]) -> list[ChernVector]:
    import sympy

    if not rows:
        return list(BASIS)
    m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])
    out = []
    for vec in m.nullspace():
        # clear denominators so the basis is primitive-integral where possible
        vec = vec * sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
        g = sympy.igcd(*[int(x) for x in vec]) or 1
        out.append(ChernVector(*[Fraction(int(x) // g) for x in vec]))
    return out


def _charge_rows(spec: ChargeSpec, surface: SurfaceParams) -> list[list[Fraction]]:
    values = [eval_charge(spec, b, surface) for b in BASIS]
    return [[z.re for z in values], [z.im for z in values]]


# every charge form is a polynomial of degree <= 3 in each parameter
_SAMPLES = (Fraction(1), Fraction(2), Fraction(3), Fraction(5))


def kernel_sublattice(spec: ChargeSpec, generic: bool = False, surface: SurfaceParams = K3) -> list[ChernVector]:
    """Basis of ``{v : Z(v) = 0}``.

    With ``generic=True`` the rational parameters of ``spec`` are treated as
    independent indeterminates: ``Z(v)`` must vanish identically.  Since the
    coefficients are polynomials of low degree in the parameters, stacking
    the equations over a grid of sample values gives that kernel exactly.
    """
    if not spec.is_exact:
        raise DomainError("kernel_sublattice needs exact (rational) parameters")
    params = [f.name for f in dataclasses.fields(spec) if f.name != "d_alpha"]
    rows = _charge_rows(spec, surface)
    if not generic or not params:
        basis = _nullspace(rows)
        if params:
            generic_basis = kernel_sublattice(spec, True, surface)
            if len(basis) > len(generic_basis):
                warnings.warn(
                    f"{spec} has a numerical kernel of rank {len(basis)}, larger than the generic rank "
                    f"{len(generic_basis)}; extra classes need not be categorical kernel objects",
                    NonGenericKernelWarning,
                    stacklevel=2,
                )
        return basis
    stacked = []
    for values in itertools.product(_SAMPLES, repeat=len(params)):
        try:
            sample = dataclasses.replace(spec, **dict(zip(params, values)))
            stacked += _charge_rows(sample, surface)
        except DomainError:
            continue
    return _nullspace(stacked)
