import os
import random
from fractions import Fraction
from math import gcd

import pytest

from app.errors import CurveToolError, DegenerateParameter, DomainError, PointNotOnCurve, SingularCurve
from app.models import INFINITY, TORSION_ORDERS, Point, TateParameter, WeierstrassModel
from app.services.weierstrass import (
    add_points,
    closed_form_disc,
    coprimality_conditions,
    integral_model,
    invariants,
    multiply,
    negate,
    order_of_point,
    point,
    torsion_order,
    transform,
    universal_model,
)

FULL = os.getenv("ECTORSION_FULL_TESTS") == "1"
full_only = pytest.mark.skipif(not FULL, reason="set ECTORSION_FULL_TESTS=1 for acceptance-size grids")


def grid(N, B):
    for s in range(-B, B + 1):
        for t in range(-B, B + 1):
            if t == 0 or gcd(s, t) != 1:
                continue
            try:
                yield TateParameter(N, s, t)
            except CurveToolError:
                continue


def check_disc_identity(B):
    for N in TORSION_ORDERS:
        for param in grid(N, B):
            assert invariants(integral_model(param)).disc == closed_form_disc(param), param


def check_torsion(B):
    for N in TORSION_ORDERS:
        for param in grid(N, B):
            assert torsion_order(param) == N, param


def test_closed_form_discriminant_small_grid():
    check_disc_identity(12)


@full_only
def test_closed_form_discriminant_full_grid():
    check_disc_identity(200)


def test_origin_has_order_n_small_grid():
    check_torsion(6)


@full_only
def test_origin_has_order_n_full_grid():
    check_torsion(50)


def test_c4_c6_identity_on_random_samples():
    rng = random.Random(20240601)
    checked = 0
    while checked < 1000:
        N = rng.choice(TORSION_ORDERS)
        s, t = rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 6)
        try:
            param = TateParameter(N, s, t)
        except CurveToolError:
            continue
        inv = invariants(integral_model(param))
        assert inv.c4 ** 3 - inv.c6 ** 2 == 1728 * inv.disc
        checked += 1


def test_n7_model_and_discriminant():
    param = TateParameter(7, 2, 1)
    assert integral_model(param) == WeierstrassModel(-1, -4, -4, 0, 0)
    assert closed_form_disc(param) == -1664


def test_parameter_validation():
    with pytest.raises(SingularCurve, match="singular: s=0"):
        TateParameter(4, 0, 1)
    with pytest.raises(SingularCurve, match="16s\\+t=0"):
        TateParameter(4, 1, -16)
    with pytest.raises(DegenerateParameter):
        TateParameter(12, 1, 1)
    with pytest.raises(DomainError):
        TateParameter(4, 2, 4)
    with pytest.raises(DomainError):
        TateParameter(3, 1, 1)
    with pytest.raises(DomainError):
        TateParameter(5, 1, 0)


def test_canonical_parameter_has_positive_t():
    assert TateParameter(7, -2, -1).canonical() == TateParameter(7, 2, 1)


def test_group_law_on_n4_model():
    model = integral_model(TateParameter(4, 1, 1))
    P = point(model, 0, 0)
    assert multiply(model, P, 4) == INFINITY
    assert multiply(model, P, 2) != INFINITY
    assert add_points(model, P, negate(model, P)) == INFINITY
    assert multiply(model, P, -1) == negate(model, P)
    assert order_of_point(model, P, 10) == 4


def test_points_off_the_curve_are_rejected():
    model = integral_model(TateParameter(4, 1, 1))
    with pytest.raises(PointNotOnCurve):
        point(model, 1, 1)
    with pytest.raises(PointNotOnCurve):
        add_points(model, Point(Fraction(1), Fraction(1)), INFINITY)


def test_transform_scales_discriminant():
    model = integral_model(TateParameter(6, 3, 1))
    inv = invariants(model)
    scaled = transform(model, 2, 0, 0, 0)
    assert invariants(scaled).disc == Fraction(inv.disc, 2 ** 12)
    assert invariants(scaled).j == inv.j
    moved = transform(model, 1, 3, -1, 2)
    assert moved.is_integral
    assert invariants(moved).disc == inv.disc


def test_universal_model():
    model, inv = universal_model(1, 0)
    assert model == WeierstrassModel(1, -1, -1, 0, 0)
    assert inv.disc == 17
    assert inv.c4 ** 3 - inv.c6 ** 2 == 1728 * inv.disc
    model, inv = universal_model(1, 1)
    assert model == WeierstrassModel(0, -1, -1, 0, 0)
    assert inv.disc == -11
    with pytest.raises(SingularCurve):
        universal_model(0, 5)


def test_coprimality_conditions():
    assert all(coprimality_conditions(TateParameter(4, 1, 1)).values())
    assert all(coprimality_conditions(TateParameter(5, 13, 1)).values())
    assert all(coprimality_conditions(TateParameter(6, 2, 1)).values())
    assert coprimality_conditions(TateParameter(7, 2, 1)) == {}


def test_coprimality_conditions_across_the_grid():
    for N in (4, 5, 6):
        count = 0
        for param in grid(N, 30):
            assert all(coprimality_conditions(param).values()), param
            count += 1
        assert count > 1000


def test_group_law_axioms_on_a_rank_one_curve():
    # y^2 + y = x^3 - x, (0,0) has infinite order
    model = WeierstrassModel(0, 0, 1, -1, 0)
    P = point(model, 0, 0)
    assert order_of_point(model, P, 20) is None
    rng = random.Random(37)
    for _ in range(25):
        a, b, c = (rng.randint(-5, 5) for _ in range(3))
        A, B, C = (multiply(model, P, n) for n in (a, b, c))
        assert add_points(model, add_points(model, A, B), C) == add_points(model, A, add_points(model, B, C))
        assert add_points(model, A, B) == add_points(model, B, A)
        assert add_points(model, A, B) == multiply(model, P, a + b)
        assert add_points(model, A, negate(model, A)) == INFINITY
        assert add_points(model, A, INFINITY) == A
