from fractions import Fraction

import pytest
from hypothesis import assume, given

from ellstab.divisors import (
    Positivity,
    RDVCoords,
    from_rdv,
    positivity_class,
    rdv_product,
    theta_degree,
    to_rdv,
    volume,
)
from ellstab.lattice import FIBER, THETA, DivisorClass, DomainError, SurfaceParams, intersect

from .conftest import divisors

H = THETA + 2 * FIBER
OMEGA0 = DivisorClass(Fraction(1, 2), Fraction(3, 2))


def test_to_rdv_examples():
    assert to_rdv(OMEGA0) == RDVCoords(Fraction(1, 2), 1)
    assert to_rdv(H) == RDVCoords(1, 0)
    assert to_rdv(THETA) == RDVCoords(1, -2)
    with pytest.raises(DomainError):
        to_rdv(FIBER)
    with pytest.raises(DomainError):
        RDVCoords(0, 1)


def test_volume_and_theta_degree():
    assert volume(OMEGA0) == Fraction(1, 2)
    assert volume(H) == 1
    assert volume(FIBER) == 0
    assert theta_degree(OMEGA0) == Fraction(1, 2)
    assert theta_degree(H) == 0
    assert theta_degree(THETA + 3 * FIBER) == 1


def test_rdv_product_examples():
    assert rdv_product(RDVCoords(1, 0), RDVCoords(Fraction(1, 2), 1)) == Fraction(3, 2)
    assert rdv_product(RDVCoords(1, -2), RDVCoords(1, -2)) == -2
    assert rdv_product(RDVCoords(1, 0), RDVCoords(1, 0)) == 2
    with pytest.raises(DomainError):
        rdv_product(RDVCoords(1, 0, 2), RDVCoords(1, 0, 3))


def test_rdv_str_parse():
    m = RDVCoords.parse("1/2:1")
    assert m == RDVCoords(Fraction(1, 2), 1)
    assert str(m) == "1/2:1"
    assert m.V == Fraction(1, 2)


def test_positivity_examples():
    assert positivity_class(THETA + Fraction(9, 2) * FIBER) is Positivity.AMPLE
    assert positivity_class(H) is Positivity.NEF_NOT_AMPLE
    assert positivity_class(THETA + FIBER) is Positivity.NOT_NEF
    assert positivity_class(FIBER) is Positivity.NEF_NOT_AMPLE
    assert positivity_class(-FIBER) is Positivity.NOT_NEF
    assert positivity_class(-THETA + 9 * FIBER) is Positivity.NOT_NEF
    assert positivity_class(OMEGA0) is Positivity.AMPLE


def test_positivity_depends_on_e():
    e3 = SurfaceParams(3)
    assert positivity_class(THETA + 3 * FIBER, e3) is Positivity.NEF_NOT_AMPLE
    assert positivity_class(THETA + Fraction(5, 2) * FIBER, e3) is Positivity.NOT_NEF


@given(divisors)
def test_round_trip(d):
    assume(d.a != 0)
    assert from_rdv(to_rdv(d)) == d


@given(divisors, divisors)
def test_rdv_product_matches_intersect(d1, d2):
    assume(d1.a != 0 and d2.a != 0)
    assert rdv_product(to_rdv(d1), to_rdv(d2)) == intersect(d1, d2)


@given(divisors)
def test_volume_identities(d):
    assume(d.a != 0)
    m = to_rdv(d)
    assert volume(d) == rdv_product(m, m) / 2 == m.V
    assert theta_degree(d) == m.R * m.D


@given(divisors)
def test_ample_implies_positive(d):
    if positivity_class(d) is Positivity.AMPLE:
        assert volume(d) > 0
        assert theta_degree(d) > 0


@given(divisors)
def test_nef_iff_nonnegative_on_curves(d):
    # the effective cone in this lattice is spanned by Theta and f
    nef = intersect(d, THETA) >= 0 and intersect(d, FIBER) >= 0
    assert (positivity_class(d) is not Positivity.NOT_NEF) == nef
