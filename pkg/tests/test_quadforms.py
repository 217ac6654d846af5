import pytest

from pqconductor.errors import InvalidInputError
from pqconductor.quadforms import (
    _count_imaginary_vectorised,
    _imaginary_forms,
    _real_forms,
    _real_forms_vectorised,
    class_number_analytic,
    class_number_imaginary,
    field_class_data,
    form_cycles,
    fundamental_discriminant,
    h_divisible_by_3,
    is_fundamental_discriminant,
    narrow_class_number_real,
    reduced_forms_imaginary,
    reduced_forms_real,
    reduction_step,
)
from pqconductor.schema import QuadForm


def _fundamental_discriminants(bound):
    return [D for D in range(-bound, bound + 1) if is_fundamental_discriminant(D)]


def test_fundamental_discriminant():
    assert fundamental_discriminant(5) == 5
    assert fundamental_discriminant(-1) == -4
    assert fundamental_discriminant(-151) == -151
    assert fundamental_discriminant(6) == 24
    for m in (0, 1, 12, -18):
        with pytest.raises(InvalidInputError):
            fundamental_discriminant(m)


@pytest.mark.parametrize(
    "D, h",
    [(-3, 1), (-4, 1), (-20, 2), (-23, 3), (-31, 3), (-47, 5), (-56, 4), (-71, 7), (-84, 4),
     (-163, 1)],
)
def test_class_number_imaginary(D, h):
    assert class_number_imaginary(D) == h


def test_reduced_forms_imaginary():
    forms = [form.as_tuple() for form in reduced_forms_imaginary(-23)]
    assert forms == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
    assert [form.as_tuple() for form in reduced_forms_imaginary(-31)] == [
        (1, 1, 8),
        (2, -1, 4),
        (2, 1, 4),
    ]


@pytest.mark.parametrize("D", [-12, -8 * 9, 5, 0])
def test_class_number_imaginary_rejects(D):
    with pytest.raises(InvalidInputError):
        class_number_imaginary(D)


@pytest.mark.parametrize("D, h_plus", [(5, 1), (8, 1), (12, 2), (13, 1), (28, 2), (229, 3), (316, 6)])
def test_narrow_class_number_real(D, h_plus):
    assert narrow_class_number_real(D) == h_plus


@pytest.mark.parametrize("D", [-23, 9, 20, 1])
def test_narrow_class_number_real_rejects(D):
    with pytest.raises(InvalidInputError):
        narrow_class_number_real(D)


def test_form_cycles_of_12():
    cycles = {frozenset(form.as_tuple() for form in cycle) for cycle in form_cycles(12)}
    assert cycles == {
        frozenset({(1, 2, -2), (-2, 2, 1)}),
        frozenset({(-1, 2, 2), (2, 2, -1)}),
    }


def test_reduction_step():
    assert reduction_step(QuadForm(a=1, b=1, c=-1), 5) == QuadForm(a=-1, b=1, c=1)
    assert reduction_step(QuadForm(a=-1, b=1, c=1), 5) == QuadForm(a=1, b=1, c=-1)
    with pytest.raises(InvalidInputError):
        reduction_step(QuadForm(a=1, b=1, c=-1), 13)


def test_reduced_forms_real_are_reduced():
    for D in (5, 12, 229, 316):
        forms = reduced_forms_real(D)
        root = D**0.5
        for form in forms:
            assert form.discriminant == D
            assert 0 < form.b < root
            assert root - form.b < 2 * abs(form.a) < root + form.b


def test_field_class_data():
    data = field_class_data(-31)
    assert (data.D, data.h_value, data.div3) == (-31, 3, True)
    data = field_class_data(79)
    assert (data.D, data.h_value, data.div3) == (316, 6, True)


def test_h_divisible_by_3():
    assert h_divisible_by_3(-31)
    assert h_divisible_by_3(-23)
    assert not h_divisible_by_3(5)
    assert not h_divisible_by_3(-151)
    assert not h_divisible_by_3(-1)


def test_class_number_analytic_examples():
    assert class_number_analytic(-23) == (3, 3)
    assert class_number_analytic(5) == (1, 1)
    assert class_number_analytic(12) == (1, 2)
    assert class_number_analytic(229) == (3, 3)


def _check_methods_agree(bound):
    for D in _fundamental_discriminants(bound):
        h, h_plus = class_number_analytic(D)
        if D < 0:
            assert class_number_imaginary(D) == h, D
        else:
            assert narrow_class_number_real(D) == h_plus, D


def test_forms_match_class_number_formula():
    _check_methods_agree(2000)


@pytest.mark.slow
def test_forms_match_class_number_formula_exhaustive():
    _check_methods_agree(10**4)


def test_vectorised_enumeration_matches_reference():
    for D in _fundamental_discriminants(3000):
        if D < 0:
            assert _count_imaginary_vectorised(D) == len(_imaginary_forms(D)), D
        else:
            assert sorted(_real_forms_vectorised(D)) == sorted(_real_forms(D)), D


def test_vectorised_enumeration_beyond_reference_limit():
    window = range(10**6 + 1, 10**6 + 41)
    positive = [D for D in window if is_fundamental_discriminant(D)][:3]
    negative = [-D for D in window if is_fundamental_discriminant(-D)][:3]
    assert len(positive) == 3 and len(negative) == 3
    for D in negative:
        assert _count_imaginary_vectorised(D) == len(_imaginary_forms(D)), D
        assert class_number_imaginary(D) == len(_imaginary_forms(D)), D
    for D in positive:
        assert sorted(_real_forms_vectorised(D)) == sorted(_real_forms(D)), D


def test_narrow_and_wide_class_numbers_agree_mod_3():
    for D in _fundamental_discriminants(2000):
        if D > 0:
            h_plus = narrow_class_number_real(D)
            h = class_number_analytic(D)[0]
            assert (h_plus % 3 == 0) == (h % 3 == 0), D
