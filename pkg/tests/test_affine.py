import math

import numpy as np
import pytest
import sympy

from conftest import random_unit, random_vector
from musubi.affine import (
    AffineIsometry,
    classify_element,
    compose,
    rotation_to_quaternion,
    shift_decompose,
)
from musubi.algebra import HAMILTON, SPLIT, PureVector, Quaternion
from musubi.utils.errors import (
    DegenerateAxisError,
    NonUnitError,
    PureTranslationError,
    VerificationFailure,
)

half = sympy.Rational(1, 2)
root_half = sympy.sqrt(2) / 2


def vec(x, y, z, params=HAMILTON) -> PureVector:
    return PureVector.from_coords(x, y, z, params=params)


def quarter_turn() -> Quaternion:
    # +90 degrees about Z
    return Quaternion(root_half, root_half, params=HAMILTON)


def test_composition_law(rng: np.random.Generator) -> None:
    first = AffineIsometry(random_vector(rng), random_unit(rng))
    second = AffineIsometry(random_vector(rng), random_unit(rng))
    point = random_vector(rng)
    composed = compose(first, second)
    assert composed.act(point).is_close(first.act(second.act(point)), 1e-9)
    assert (first * first.inverse()).is_close(first.identity(), 1e-9)


def test_power_matches_repeated_product(rng: np.random.Generator) -> None:
    e = AffineIsometry(random_vector(rng), random_unit(rng))
    assert (e**3).is_close(e * e * e, 1e-9)
    assert (e**-2).is_close(e.inverse() * e.inverse(), 1e-9)


def test_non_unit_linear_part() -> None:
    with pytest.raises(NonUnitError):
        AffineIsometry(vec(0, 0, 0), Quaternion(2, params=HAMILTON))
    equiform = AffineIsometry(vec(1, 0, 0), Quaternion(2, params=HAMILTON), equiform=True)
    assert equiform.equiform
    with pytest.raises(NonUnitError):
        AffineIsometry(vec(0, 0, 0), Quaternion(0, params=HAMILTON), equiform=True)


def test_matrix4_round_trip(rng: np.random.Generator) -> None:
    for _ in range(20):
        e = AffineIsometry(random_vector(rng), random_unit(rng))
        assert AffineIsometry.from_matrix4(e.matrix4()).same_map(e, 1e-9)


def test_same_map_ignores_sign_of_linear_part() -> None:
    e = AffineIsometry(vec(1, 2, 3), quarter_turn())
    flipped = AffineIsometry(vec(1, 2, 3), -quarter_turn())
    assert e.same_map(flipped, 0.0)
    assert not e.is_close(flipped)


def test_rotation_to_quaternion_rejects_reflections() -> None:
    with pytest.raises(VerificationFailure):
        rotation_to_quaternion(sympy.diag(1, 1, -1))


def test_rotation_about_offset_axis() -> None:
    # quarter turn about the vertical line through (1, 0, 0)
    e = AffineIsometry(vec(1, -1, 0), quarter_turn())
    assert e.act(vec(1, 0, 5)).is_close(vec(1, 0, 5), 0.0)
    found = classify_element(e)
    assert found.kind == "rotation"
    assert sympy.simplify(found.angle - sympy.pi / 2) == 0
    assert found.axis_point is not None
    assert found.axis_point.is_close(vec(1, 0, 0), 0.0)


def test_screw_shift_and_sigma() -> None:
    e = AffineIsometry(vec(1, -1, 1), quarter_turn())
    shift = shift_decompose(e)
    assert shift.shift_vector.is_close(vec(0, 0, 1), 0.0)
    assert shift.v_perp.is_close(vec(1, -1, 0), 0.0)
    assert sympy.simplify(shift.sigma - 1) == 0
    assert shift.kind == "euclidean"
    assert classify_element(e).kind == "screw"


def test_translation_and_identity() -> None:
    one = Quaternion.one(HAMILTON)
    assert classify_element(AffineIsometry(vec(0, 0, 0), one)).kind == "identity"
    found = classify_element(AffineIsometry.translation(vec(half, 0, 2)))
    assert found.kind == "translation"
    assert found.translation is not None
    assert found.translation.is_close(vec(half, 0, 2), 0.0)
    with pytest.raises(PureTranslationError):
        shift_decompose(AffineIsometry.translation(vec(1, 0, 0)))


def test_half_turn_prefers_positive_sigma() -> None:
    half_turn = Quaternion(0, 1, params=HAMILTON)
    e = AffineIsometry(vec(0, 0, -2), half_turn)
    found = classify_element(e)
    assert found.kind == "screw"
    assert sympy.simplify(found.angle - sympy.pi) == 0
    assert sympy.simplify(found.sigma - 2) == 0


def test_lorentz_classes() -> None:
    hyperbolic = Quaternion(sympy.Rational(5, 4), 0, 0, sympy.Rational(3, 4), params=SPLIT)
    elliptic = Quaternion(half, sympy.sqrt(3) / 2, params=SPLIT)
    parabolic = Quaternion(1, 1, 1, params=SPLIT)
    origin = vec(0, 0, 0, SPLIT)
    assert classify_element(AffineIsometry(vec(1, 0, 0, SPLIT), hyperbolic)).kind == "hyperbolic"
    found = classify_element(AffineIsometry(origin, elliptic))
    assert found.kind == "elliptic"
    assert sympy.simplify(found.angle - 2 * sympy.pi / 3) == 0
    assert classify_element(AffineIsometry(origin, parabolic)).kind == "parabolic"


def test_shift_of_hyperbolic_is_spacelike() -> None:
    g = Quaternion(sympy.Rational(5, 4), 0, 0, sympy.Rational(3, 4), params=SPLIT)
    shift = shift_decompose(AffineIsometry(vec(2, 1, 0, SPLIT), g))
    assert shift.kind == "spacelike"
    assert shift.shift_vector.is_close(vec(2, 0, 0, SPLIT), 0.0)


def test_null_axis_has_no_shift() -> None:
    parabolic = Quaternion(1, 1, 1, params=SPLIT)
    with pytest.raises(DegenerateAxisError):
        shift_decompose(AffineIsometry(vec(1, 0, 0, SPLIT), parabolic))


def test_large_split_powers_compose() -> None:
    boost = Quaternion(math.cosh(6.0), 0, math.sinh(6.0), params=SPLIT)
    e = AffineIsometry(PureVector.from_coords(0.0, 1.5, 0.0, params=SPLIT), boost)
    power = e**4
    assert power.linear.is_unit()
    assert power.v.coords[1] == pytest.approx(6.0)
