from fractions import Fraction

import pytest

from app.errors import DomainError
from app.models import Factorization, LocalData, Reduction, TateParameter, WeierstrassModel
from app.services.arith import factor
from app.services.localdata import (
    canonical_model,
    check_local_data,
    components,
    conductor,
    conductor_of,
    minimalize,
    tate_local,
)
from app.services.weierstrass import integral_model, invariants, transform


def n7_model():
    return integral_model(TateParameter(7, 2, 1))


def test_components():
    assert components("I0") == 1
    assert components("I7") == 7
    assert components("I3*") == 8
    assert components("I0*") == 5
    assert components("IV") == 3
    assert components("II*") == 9


def test_n7_curve_is_semistable_with_conductor_26():
    data = conductor(n7_model())
    assert data.minimal_model == WeierstrassModel(1, -1, 1, -3, 3)
    assert data.disc_min == Factorization(-1, ((2, 7), (13, 1)))
    assert data.conductor == Factorization(1, ((2, 1), (13, 1)))
    assert data.scaling == 1
    at2, at13 = data.locals
    assert (at2.kodaira, at2.f_p, at2.m_p) == ("I7", 1, 7)
    assert (at13.kodaira, at13.f_p, at13.m_p) == ("I1", 1, 1)
    assert at2.reduction.is_multiplicative and at13.reduction.is_multiplicative


def test_good_reduction_prime():
    local = tate_local(n7_model(), 3)
    assert local.reduction == Reduction.GOOD
    assert (local.ord_disc, local.f_p) == (0, 0)


def test_non_prime_is_rejected():
    with pytest.raises(DomainError):
        tate_local(n7_model(), 4)


def test_scaled_model_minimalizes_back():
    model = n7_model()
    scaled = transform(model, Fraction(1, 3), 0, 0, 0)
    assert scaled.is_integral
    assert invariants(scaled).disc == invariants(model).disc * 3 ** 12
    data = conductor(scaled)
    assert data.scaling == 3
    assert data.minimal_model == conductor(model).minimal_model
    assert data.disc_min == Factorization(-1, ((2, 7), (13, 1)))
    assert tate_local(scaled, 3).reduction == Reduction.GOOD


def test_minimalize_checks_the_given_factorization():
    with pytest.raises(DomainError):
        minimalize(n7_model(), factor(1664))


def test_n8_curve_has_additive_reduction_at_2():
    data = conductor(integral_model(TateParameter(8, 1, 4)))
    assert data.disc_min == Factorization(-1, ((2, 11), (3, 8)))
    assert data.conductor.primes == (2, 3)
    at2, at3 = data.locals
    assert at2.reduction == Reduction.ADDITIVE
    assert at2.f_p >= 2
    assert at3.reduction.is_multiplicative and at3.f_p == 1


def test_witness_with_square_t_loses_twelfth_power():
    # t = 25 makes the cleared model non-minimal at 5
    data = conductor(integral_model(TateParameter(4, 1, 25)))
    assert data.scaling == 5
    assert data.disc_min == Factorization(1, ((5, 2), (41, 1)))
    assert data.conductor == Factorization(1, ((5, 1), (41, 1)))


def test_conductor_identity_holds_at_every_bad_prime():
    for N, s, t in [(4, 1, 1), (5, 13, 1), (6, 2, 1), (6, -9, 8), (8, 1, 4), (9, 2, 3), (12, 2, 3), (10, 3, 1)]:
        data = conductor(integral_model(TateParameter(N, s, t)))
        for local in data.locals:
            assert local.f_p == local.ord_disc - local.m_p + 1
            assert (local.f_p == 1) == local.reduction.is_multiplicative


def test_canonical_model_ranges():
    model = canonical_model(WeierstrassModel(5, 7, 9, 1, 2))
    assert model.a1 in (0, 1) and model.a2 in (-1, 0, 1) and model.a3 in (0, 1)
    assert conductor_of(WeierstrassModel(1, -1, 1, -3, 3)) == Factorization(1, ((2, 1), (13, 1)))


PARAMETERS = [(4, 1, 1), (4, 1, 25), (5, 13, 1), (6, 2, 1), (6, -9, 8), (7, 2, 1), (8, 1, 4), (9, 2, 3), (10, 3, 1)]


def test_minimal_and_canonical_models_are_fixed_points():
    for N, s, t in PARAMETERS:
        data = conductor(integral_model(TateParameter(N, s, t)))
        assert minimalize(data.minimal_model) == (data.minimal_model, 1)
        assert canonical_model(data.minimal_model) == data.minimal_model
        assert conductor(data.minimal_model).conductor == data.conductor
    reduced = canonical_model(WeierstrassModel(5, 7, 9, 1, 2))
    assert canonical_model(reduced) == reduced


def test_local_data_passes_the_reduction_type_checks():
    for N, s, t in PARAMETERS:
        for local in conductor(integral_model(TateParameter(N, s, t))).locals:
            check_local_data(local)


def test_inconsistent_local_data_is_rejected():
    with pytest.raises(ArithmeticError):
        check_local_data(LocalData(7, 7, "I0*", 3, 5, Reduction.ADDITIVE))
    with pytest.raises(ArithmeticError):
        check_local_data(LocalData(13, 2, "I1", 1, 1, Reduction.SPLIT))
    with pytest.raises(ArithmeticError):
        check_local_data(LocalData(2, 12, "I0*", 9, 5, Reduction.ADDITIVE))
    check_local_data(LocalData(7, 7, "I1*", 2, 6, Reduction.ADDITIVE))
    check_local_data(LocalData(3, 0, "I0", 0, 1, Reduction.GOOD))
