"""The built-in verification suite behind ``ellstab selftest``.

Each check returns a :class:`Check`; exceptions (including the K3 guards) are
caught and reported as failures so that one broken check never hides the
others.  Random draws use fixed seeds, so reports are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .charges import KernelClass, RayParam, Regime, limit_phase, seesaw_audit
from .divisors import Positivity, RDVCoords, positivity_class, to_rdv
from .fm import CCEInput, Variant, cce_residual, eval_Z0, fm_transform, phi_Z, solve_cce, special_point
from .inequalities import (
    bg_sharp,
    classify_kernel,
    classify_kernel_after_fm_bruteforce,
    hit_family_feasible,
    hit_family_grid_violation,
    hodge_index_check,
    l0_divisor,
    l1_divisor,
)
from .lattice import (
    BASIS,
    FIBER,
    K3,
    THETA,
    ZERO_DIVISOR,
    ChernVector,
    DivisorClass,
    SurfaceParams,
    ch_line_bundle,
    ch_section_sheaf,
    euler_characteristic,
    intersect,
)
from .trajectory import extrapolate, trajectory

D_ALPHAS = range(-3, 6)
FLOAT_TOL = 1e-9
EXTRAPOLATION_TOL = 1e-4


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _rat(rng: random.Random, lo: int, hi: int, den: int = 100) -> Fraction:
    return Fraction(rng.randint(lo, hi), den)


def _with_d_alpha(surface: SurfaceParams, d_alpha: int) -> SurfaceParams:
    return SurfaceParams(surface.e, d_alpha)


def kernel_annihilation(surface: SurfaceParams = K3) -> str:
    for d in D_ALPHAS:
        s = _with_d_alpha(surface, d)
        for name, div in (("L0", l0_divisor(d)), ("L1", l1_divisor(d))):
            z = eval_Z0(ch_line_bundle(div, s), d, s)
            if not z.is_zero():
                raise AssertionError(f"Z'_0({name}) = {z.re} + {z.im} i at d_alpha = {d}")
    return f"Z'_0(L0) = Z'_0(L1) = 0 for d_alpha in [{D_ALPHAS[0]}, {D_ALPHAS[-1]}]"


def bruteforce_kernel(surface: SurfaceParams = K3) -> str:
    for d in D_ALPHAS:
        s = _with_d_alpha(surface, d)
        found = set(classify_kernel_after_fm_bruteforce(d, abs(d) + 8, s))
        expected = {ch_line_bundle(l0_divisor(d), s), ch_line_bundle(l1_divisor(d), s)}
        g0, g1 = classify_kernel(Regime.AFTER_FM, s).generators
        if found != expected or {-g0, g1} != expected:
            raise AssertionError(f"d_alpha = {d}: search found {sorted(map(str, found))}")
    return "search returns exactly {ch L0, ch L1} and matches classify_kernel"


_EXACT_LIMITS = [
    (Regime.ORIGIN, (1, 0), Fraction(1, 2)),
    (Regime.ORIGIN, (0, 1), Fraction(1)),
    (Regime.V_AXIS, (1,), Fraction(1, 2)),
    (Regime.D_AXIS, (1,), Fraction(1)),
    (Regime.AFTER_FM, (1, 0), Fraction(3, 4)),
    (Regime.AFTER_FM, (0, 1), Fraction(1, 4)),
]
_RAYS = [RayParam(1, 1), RayParam(1, 3), RayParam(5, 2)]


def limit_phases(surface: SurfaceParams = K3) -> str:
    worst = 0.0
    for regime, mults, want in _EXACT_LIMITS:
        k = KernelClass(regime, mults)
        for ray in _RAYS:
            got = limit_phase(k, ray)
            if got.exact != want:
                raise AssertionError(f"{regime.value} {mults}: limit {got} != {want}")
            rows = trajectory(k, ray, 6, surface=surface)
            worst = max(worst, abs(extrapolate(rows) - float(want)))
    # mixed classes have irrational limits in general; compare floats
    for regime in (Regime.ORIGIN, Regime.AFTER_FM):
        for mults in ((1, 1), (2, 1), (1, 3)):
            k = KernelClass(regime, mults)
            for ray in _RAYS:
                rows = trajectory(k, ray, 6, surface=surface)
                worst = max(worst, abs(extrapolate(rows) - limit_phase(k, ray).value))
    if worst >= EXTRAPOLATION_TOL:
        raise AssertionError(f"trajectory extrapolation off by {worst:.3g}")
    return f"all six limits exact; extrapolated trajectories within {worst:.2g}"


def cce_identity(surface: SurfaceParams = K3, draws: int = 200, seed: int = 4) -> str:
    rng = random.Random(seed)
    e = surface.e
    worst, with_T = 0.0, 0
    for i in range(draws):
        D, V = _rat(rng, 1, 300), _rat(rng, 1, 300)
        R_B, D_B = _rat(rng, -200, -25), _rat(rng, -200, 200)
        variant = Variant.TODD if i % 2 == 0 else Variant.PLAIN
        inp = CCEInput(D, V, R_B, D_B, e, variant)
        out = solve_cce(inp)
        Dp, RBp, Vp, RBDp = out.values
        # the solution relations, re-substituted in cleared-denominator form
        extra = 1 if variant is Variant.TODD else 0
        ok = (
            Dp == V + R_B ** 2 * (D + Fraction(e, 2))
            and RBp * (2 * Dp + e) == R_B * (-2 * D - e)
            and 2 * (2 * Dp + e) * (Vp - extra - D) == -(R_B ** 2) * (2 * D + e) ** 2
            and RBDp == R_B * D_B + Fraction(e, 2) * (R_B - RBp - 1)
        )
        res = cce_residual(inp, out)
        if not ok or not res.exact_zero:
            raise AssertionError(f"draw {i}: relations {ok}, exact residual {res.exact_zero}")
        if out.T_exists:
            with_T += 1
            worst = max(worst, res.float_residual)
    if worst >= FLOAT_TOL:
        raise AssertionError(f"float residual {worst:.3g} >= {FLOAT_TOL}")
    return f"{draws} draws exact; float residual <= {worst:.2g} on {with_T} draws with T"


def special_point_check(surface: SurfaceParams = K3) -> str:
    for d in D_ALPHAS:
        got = phi_Z(0, 0, d).values
        want = (Fraction(1), Fraction(1, 2), Fraction(1, 2), -d - Fraction(5, 2))
        solved = solve_cce(CCEInput(0, 0, -1, d, surface.e, Variant.TODD)).values
        if got != want or solved != want:
            raise AssertionError(f"d_alpha = {d}: phi_Z gives {got}, solver gives {solved}")
    omega, _ = special_point(surface.d_alpha)
    rdv = to_rdv(omega, surface)
    if rdv != RDVCoords(Fraction(1, 2), 1, surface.e):
        raise AssertionError(f"omega'_0 has RDV coordinates {rdv}")
    if positivity_class(omega, surface) is not Positivity.AMPLE:
        raise AssertionError("omega'_0 is not ample")
    return "phi_Z(0,0,d) = (1, 1/2, 1/2, -d-5/2); omega'_0 = (1/2 : 1), ample"


def euler_characteristics(surface: SurfaceParams = K3) -> str:
    for i in range(-5, 6):
        v = ch_section_sheaf(i, surface)
        chi = euler_characteristic(v, v, surface)
        if chi != 2:
            raise AssertionError(f"chi(O_Theta({i}), O_Theta({i})) = {chi}")
    chi = euler_characteristic(ch_line_bundle(ZERO_DIVISOR, surface), ch_section_sheaf(-1, surface), surface)
    if chi != 0:
        raise AssertionError(f"chi(O_X, O_Theta(-1)) = {chi}")
    return "chi(O_Theta(i), O_Theta(i)) = 2 for |i| <= 5; chi(O_X, O_Theta(-1)) = 0"


def _random_class(rng: random.Random) -> ChernVector:
    return ChernVector(*(Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(4)))


def fm_isometry(surface: SurfaceParams = K3, pairs: int = 500, seed: int = 7) -> str:
    rng = random.Random(seed)
    todo = [(v, w) for v in BASIS for w in BASIS]
    todo += [(_random_class(rng), _random_class(rng)) for _ in range(pairs)]
    for v, w in todo:
        before = euler_characteristic(v, w, surface)
        after = euler_characteristic(fm_transform(v, surface), fm_transform(w, surface), surface)
        if before != after:
            raise AssertionError(f"chi({v}, {w}) = {before} but {after} after the transform")
    return f"Euler pairing preserved on 16 basis pairs and {pairs} random pairs"


def hit_family(surface: SurfaceParams = K3) -> str:
    y = Fraction(-3)
    n = 0
    while y <= 4:
        closed = hit_family_feasible(y)
        grid = hit_family_grid_violation(y) is None
        if closed != (0 <= y <= 1) or closed != grid:
            raise AssertionError(f"y = {y}: closed form {closed}, grid {grid}")
        y += Fraction(1, 8)
        n += 1
    return f"closed form, interval and grid agree on {n} values of y"


def bg_tightness(surface: SurfaceParams = K3) -> str:
    o_x = bg_sharp(ch_line_bundle(ZERO_DIVISOR, surface), ZERO_DIVISOR, surface)
    l1 = bg_sharp(ch_line_bundle(l1_divisor(surface.d_alpha), surface), ZERO_DIVISOR, surface)
    two = bg_sharp(ChernVector(2, 0, 0, 0), ZERO_DIVISOR, surface)
    if o_x.slack != 0 or l1.slack != 0:
        raise AssertionError(f"slacks {o_x.slack}, {l1.slack} should vanish")
    if two.holds or two.slack != Fraction(-3, 2):
        raise AssertionError(f"(2,0,0,0) gives slack {two.slack}")
    return "slack 0 for O_X and L1; (2,0,0,0) fails with slack -3/2"


def hodge_index(surface: SurfaceParams = K3, draws: int = 1000, seed: int = 10) -> str:
    rng = random.Random(seed)
    e = surface.e
    for _ in range(draws):
        ha = Fraction(rng.randint(1, 50), rng.randint(1, 10))
        hb = ha * (e + Fraction(rng.randint(1, 100), rng.randint(1, 20)))
        H = DivisorClass(ha, hb)
        k = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 10))
        c = k * DivisorClass(ha, e * ha - hb)
        if positivity_class(H, surface) is not Positivity.AMPLE or intersect(H, c, surface) != 0:
            raise AssertionError(f"bad draw H = {H}, c = {c}")
        if not hodge_index_check(H, c, surface):
            raise AssertionError(f"c^2 > 0 for H = {H}, c = {c}")
    return f"c^2 <= 0 for {draws} random c orthogonal to an ample H"


def _random_mults(rng: random.Random, n: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, 10) for _ in range(n))


def seesaw(surface: SurfaceParams = K3, splits: int = 1000, seed: int = 11) -> str:
    rng = random.Random(seed)
    for regime in Regime:
        done = 0
        while done < splits:
            k1 = KernelClass(regime, _random_mults(rng, regime.n_generators))
            k2 = KernelClass(regime, _random_mults(rng, regime.n_generators))
            if (k1 + k2).is_zero():
                continue
            p, q = rng.randint(0, 10), rng.randint(0, 10)
            ray = RayParam(p, q) if p or q else RayParam(1, 1)
            if not seesaw_audit(k1, k2, ray):
                raise AssertionError(f"{regime.value}: {k1.mults} + {k2.mults} on [{p}:{q}]")
            done += 1
    for _ in range(splits):
        k = KernelClass(Regime.ORIGIN, (rng.randint(1, 10), rng.randint(1, 10)))
        ray = RayParam(rng.randint(1, 10), rng.randint(1, 10))
        ph = limit_phase(k, ray)
        lo = limit_phase(KernelClass(Regime.ORIGIN, (1, 0)), ray)
        hi = limit_phase(KernelClass(Regime.ORIGIN, (0, 1)), ray)
        if not (lo < ph < hi):
            raise AssertionError(f"origin {k.mults} on {ray}: phase {ph} not inside (1/2, 1)")
    return f"{splits} splits per regime pass; mixed origin classes strictly inside (1/2, 1)"


def positivity(surface: SurfaceParams = K3) -> str:
    for i in range(17):
        a = Fraction(i, 4)
        cls = positivity_class(THETA + a * FIBER, surface)
        ample = cls is Positivity.AMPLE
        nef = cls is not Positivity.NOT_NEF
        if ample != (a > 2) or nef != (a >= 2):
            raise AssertionError(f"Theta + {a} f classified as {cls.value}")
    return "Theta + a f ample iff a > 2, nef iff a >= 2, for a in {0, 1/4, ..., 4}"


CHECKS: list[tuple[str, Callable[[SurfaceParams], str]]] = [
    ("kernel_annihilation", kernel_annihilation),
    ("bruteforce_kernel", bruteforce_kernel),
    ("limit_phases", limit_phases),
    ("cce_identity", cce_identity),
    ("special_point", special_point_check),
    ("euler_characteristics", euler_characteristics),
    ("fm_isometry", fm_isometry),
    ("hit_family", hit_family),
    ("bg_tightness", bg_tightness),
    ("hodge_index", hodge_index),
    ("seesaw", seesaw),
    ("positivity", positivity),
]


def run_check(name: str, fn: Callable[[SurfaceParams], str], surface: SurfaceParams = K3) -> Check:
    try:
        return Check(name, True, fn(surface))
    except Exception as exc:  # report, never propagate
        return Check(name, False, f"{type(exc).__name__}: {exc}")


def run_all(surface: SurfaceParams = K3) -> list[Check]:
    return [run_check(name, fn, surface) for name, fn in CHECKS]
