from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ellstab.charges import (
    ChargeValue,
    DAxis,
    GeneralRDV,
    KernelClass,
    Order,
    Origin,
    Phase,
    RawCharge,
    RayParam,
    Regime,
    RescaledVD,
    Todd,
    ToddSpecial,
    VAxis,
    compare_phase,
    eval_charge,
    fixed_kernel_phase,
    hn_audit,
    in_closed_upper_half,
    limit_phase,
    limit_phase_after_fm,
    limit_phase_origin,
    phase,
    seesaw_audit,
    slope,
)
from ellstab.lattice import (
    ZERO_DIVISOR,
    ChernVector,
    DomainError,
    NotK3Error,
    SurfaceParams,
    ch_line_bundle,
    ch_section_sheaf,
    shift,
)
from ellstab.trajectory import extrapolate, trajectory

from .conftest import chern_vectors, positive_rationals, rationals

O_X = ch_line_bundle(ZERO_DIVISOR)
O_THETA_M1 = ch_section_sheaf(-1)
HALF, ONE = Fraction(1, 2), Fraction(1)

specs = st.one_of(
    st.builds(GeneralRDV, positive_rationals, rationals, rationals, rationals),
    st.builds(RescaledVD, rationals, rationals),
    st.just(Origin()),
    st.builds(VAxis, rationals),
    st.builds(DAxis, rationals),
    st.builds(Todd, positive_rationals, rationals, rationals, rationals),
    st.builds(ToddSpecial, st.integers(-5, 5)),
)
values = st.builds(ChargeValue, rationals, rationals)
nonzero_values = values.filter(lambda z: not z.is_zero())
mults = st.integers(0, 12)


def kernel_classes(regime):
    n = Regime.parse(regime).n_generators
    return st.tuples(*[mults] * n).map(lambda m: KernelClass(regime, m))


rays = st.tuples(st.integers(0, 12), st.integers(0, 12)).filter(any).map(lambda t: RayParam(*t))


def test_eval_examples():
    V, D = Fraction(3, 7), Fraction(5, 2)
    assert eval_charge(RescaledVD(V, D), O_THETA_M1) == ChargeValue(0, D)
    assert eval_charge(RescaledVD(V, D), shift(O_X)) == ChargeValue(-V, 0)
    for m in range(-3, 4):
        assert eval_charge(VAxis(V), ch_section_sheaf(m)) == ChargeValue(-(m + 1), 0)


def test_origin_and_axes_are_degenerate_rescaled():
    v = ChernVector(2, -1, 3, Fraction(1, 2))
    assert eval_charge(Origin(), v) == eval_charge(RescaledVD(0, 0), v)
    assert eval_charge(VAxis(4), v) == eval_charge(RescaledVD(4, 0), v)
    assert eval_charge(DAxis(4), v) == eval_charge(RescaledVD(0, 4), v)


def test_general_rdv_at_zero_B_is_rescaled_vd():
    # R = 1 gives V = D + 1 on a K3
    v = ChernVector(1, 2, -1, 3)
    assert eval_charge(GeneralRDV(1, 3, 0, 0), v) == eval_charge(RescaledVD(4, 3), v)


def test_todd_shifts_ch0_coefficient():
    args = (Fraction(1, 2), 1, -1, 0)
    assert eval_charge(Todd(*args), O_X) == eval_charge(GeneralRDV(*args), O_X) + ChargeValue(-1, 0)
    with pytest.raises(NotK3Error):
        eval_charge(Todd(*args), O_X, SurfaceParams(3))
    with pytest.raises(DomainError):
        eval_charge(GeneralRDV(0, 1, 0, 0), O_X)


def test_float_mode():
    spec = GeneralRDV(2 ** 0.5, 1, 0, 0)
    assert not spec.is_exact
    z = eval_charge(spec, O_X)
    assert isinstance(z.re, float)
    assert z.re == pytest.approx(2 * 2)


def test_upper_half_examples():
    assert in_closed_upper_half(ChargeValue(-3, 0))
    assert not in_closed_upper_half(ChargeValue(1, 0))
    assert in_closed_upper_half(ChargeValue(5, 1))


def test_phase_examples():
    assert phase(ChargeValue(0, 1)).exact == HALF
    assert phase(ChargeValue(-1, 0)).exact == ONE
    assert phase(ChargeValue(-1, 1)).exact == Fraction(3, 4)
    assert phase(ChargeValue(1, 0)).exact == 0
    assert phase(ChargeValue(0, -1)).exact == -HALF
    assert phase(ChargeValue(2, 1)).exact is None
    with pytest.raises(DomainError):
        phase(ChargeValue(0, 0))


def test_slope_examples():
    assert slope(ChargeValue(0, 1)) == 0
    assert slope(ChargeValue(-1, 1)) == 1
    assert slope(ChargeValue(-1, 0)) == float("inf")
    with pytest.raises(DomainError):
        slope(ChargeValue(0, 0))


def test_compare_examples():
    z = ChargeValue(3, 5)
    assert compare_phase(phase(ChargeValue(0, 1)), phase(ChargeValue(-1, 1))) is Order.LT
    assert compare_phase(phase(z), phase(2 * z)) is Order.EQ
    assert compare_phase(Phase(1, -1, 0), Phase(0, 0, 1)) is Order.GT
    assert Phase(0, 0, 3) == Phase(0, 0, 1)
    assert hash(Phase(0, -2, 0)) == hash(Phase(0, -1, 0))
    with pytest.raises(DomainError):
        Phase(0, 1, 0)


def test_phase_json():
    p = Phase(0, -1, 1)
    assert p.to_json() == {"phase": "3/4", "branch": 0, "dir": ["-1", "1"], "approx": 0.75}
    assert str(Phase(0, 2, 1)) == f"{Phase(0, 2, 1).value:.12g}"
    assert p.shifted().exact == Fraction(7, 4)


def test_limit_phase_origin_examples():
    for ray in (RayParam(1, 1), RayParam(0, 1), RayParam(3, 0)):
        assert limit_phase_origin(KernelClass("origin", (1, 0)), ray).exact == HALF
        assert limit_phase_origin(KernelClass("origin", (0, 1)), ray).exact == ONE
    assert limit_phase_origin(KernelClass("origin", (1, 1)), RayParam(1, 1)).exact == Fraction(3, 4)
    with pytest.raises(DomainError):
        limit_phase_origin(KernelClass("origin", (0, 0)), RayParam(1, 1))
    with pytest.raises(DomainError):
        RayParam(0, 0)
    with pytest.raises(DomainError):
        RayParam(-1, 1)


def test_limit_phase_after_fm_examples():
    assert limit_phase_after_fm(KernelClass("after_fm", (1, 0)), RayParam(2, 7)).exact == Fraction(3, 4)
    assert limit_phase_after_fm(KernelClass("after_fm", (0, 1)), RayParam(2, 7)).exact == Fraction(1, 4)
    assert limit_phase_after_fm(KernelClass("after_fm", (1, 1)), RayParam(1, 1)).exact == HALF


def test_after_fm_mixed_limit_matches_trajectory():
    k = KernelClass("after_fm", (1, 1))
    rows = trajectory(k, RayParam(1, 1), 6)
    assert extrapolate(rows) == pytest.approx(0.5, abs=1e-4)


def test_fixed_kernel_phase():
    assert fixed_kernel_phase("v_axis").exact == HALF
    assert fixed_kernel_phase("d-axis").exact == ONE
    with pytest.raises(DomainError):
        fixed_kernel_phase("origin")
    with pytest.raises(DomainError):
        limit_phase(KernelClass("origin", (1, 1)))


def test_kernel_class_validation():
    with pytest.raises(DomainError):
        KernelClass("v_axis", (1, 1))
    with pytest.raises(DomainError):
        KernelClass("origin", (-1, 1))
    with pytest.raises(DomainError):
        KernelClass("origin", (1, 0)) + KernelClass("after_fm", (1, 0))
    assert KernelClass("origin", (1, 2)).chern_vector() == O_THETA_M1 + 2 * shift(O_X)


def test_seesaw_examples():
    ray = RayParam(1, 1)
    assert seesaw_audit(KernelClass("origin", (1, 0)), KernelClass("origin", (0, 1)), ray)
    assert seesaw_audit(KernelClass("origin", (2, 0)), KernelClass("origin", (3, 0)), ray)
    assert seesaw_audit(KernelClass("after_fm", (1, 0)), KernelClass("after_fm", (0, 1)), RayParam(5, 1))


def test_hn_audit_examples():
    one, three_q, half = Phase(0, -1, 0), Phase(0, -1, 1), Phase(0, 0, 1)
    assert hn_audit([one, three_q, half])
    assert not hn_audit([half, three_q])
    assert hn_audit([three_q])
    assert not hn_audit([half, half])


def test_raw_charge_round_trip():
    form = GeneralRDV(Fraction(1, 2), 1, -1, 0).form()
    v = ChernVector(1, 2, 3, 4)
    assert eval_charge(RawCharge(*form), v) == eval_charge(GeneralRDV(Fraction(1, 2), 1, -1, 0), v)


@given(specs, chern_vectors, chern_vectors)
def test_eval_linear(spec, v, w):
    assert eval_charge(spec, v + w) == eval_charge(spec, v) + eval_charge(spec, w)
    assert eval_charge(spec, shift(v)) == -eval_charge(spec, v)


@given(nonzero_values, st.fractions(min_value=Fraction(1, 50), max_value=50))
def test_phase_scaling_invariant(z, lam):
    assert phase(z) == phase(lam * z)


@given(nonzero_values)
def test_phase_branches(z):
    p = phase(z)
    if in_closed_upper_half(z):
        assert p.branch == 0 and 0 < p.value <= 1
    else:
        assert p.branch == -1 and -1 < p.value <= 0
    assert phase(-z) == (p.shifted(1) if p.branch == -1 else p.shifted(-1))


@given(nonzero_values, nonzero_values)
def test_compare_matches_slope_order(z1, z2):
    assume(z1.im > 0 and z2.im > 0)
    s1, s2 = slope(z1), slope(z2)
    expected = Order.LT if s1 < s2 else Order.GT if s1 > s2 else Order.EQ
    assert compare_phase(phase(z1), phase(z2)) is expected


@given(nonzero_values, nonzero_values)
def test_compare_matches_float_value(z1, z2):
    p1, p2 = phase(z1), phase(z2)
    if p1 < p2:
        assert p1.value < p2.value + 1e-12
    elif p1 > p2:
        assert p1.value > p2.value - 1e-12
    else:
        assert p1.value == pytest.approx(p2.value)


@pytest.mark.parametrize("regime", list(Regime))
@given(data=st.data())
def test_seesaw_always(regime, data):
    k1 = data.draw(kernel_classes(regime))
    k2 = data.draw(kernel_classes(regime))
    ray = data.draw(rays)
    assume(not (k1 + k2).is_zero())
    assert seesaw_audit(k1, k2, ray)


@pytest.mark.parametrize("regime", ["origin", "after_fm"])
@given(data=st.data())
def test_mediant_bound(regime, data):
    k1 = data.draw(kernel_classes(regime))
    k2 = data.draw(kernel_classes(regime))
    ray = data.draw(rays)
    assume(not k1.is_zero() and not k2.is_zero())
    p1, p2, p = limit_phase(k1, ray), limit_phase(k2, ray), limit_phase(k1 + k2, ray)
    assert p >= min(p1, p2)
    # on a boundary ray the mixed limit collapses onto one generator's phase
    if p == min(p1, p2) and ray.p and ray.q:
        assert p1 == p2


@given(st.integers(1, 20), st.integers(1, 20), st.integers(1, 20), st.integers(1, 20))
def test_origin_mixed_strictly_inside(m0, m1, p, q):
    ph = limit_phase(KernelClass("origin", (m0, m1)), RayParam(p, q))
    assert Phase(0, 0, 1) < ph < Phase(0, -1, 0)


@given(st.integers(0, 12), st.integers(0, 12), rays)
def test_after_fm_limits_in_band(n0, n1, ray):
    assume(n0 or n1)
    ph = limit_phase(KernelClass("after_fm", (n0, n1)), ray)
    assert Phase(0, 1, 1) <= ph <= Phase(0, -1, 1)


@pytest.mark.parametrize(
    "regime,m,ray",
    [("origin", (1, 1), (1, 1)), ("origin", (3, 1), (2, 5)), ("origin", (1, 0), (4, 1)),
     ("after_fm", (1, 2), (3, 2)), ("after_fm", (1, 0), (1, 4)), ("after_fm", (0, 1), (1, 1))],
)
def test_limit_consistency_with_float_path(regime, m, ray):
    k, r = KernelClass(regime, m), RayParam(*ray)
    rows = trajectory(k, r, 6)[1:]  # D = 1e-2 .. 1e-6
    assert extrapolate(rows) == pytest.approx(limit_phase(k, r).value, abs=1e-4)
