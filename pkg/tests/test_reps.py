import numpy as np
import pytest
import sympy

from musubi.algebra import COMPLEX_SPLIT, HAMILTON, SPLIT, PureVector
from musubi.lorentz import parabolic_fixed_line
from musubi.reps import (
    CaseTag,
    RepPoint,
    affine_rep,
    axis_distance,
    braid_residual,
    c_representation,
    case2_plane_action,
    classify,
    cone_trig_check,
    element_images,
    geometric_invariants,
    image_scale,
    linear_rep,
    representation_sigma,
    sample_points,
    trefoil_s,
    trefoil_y,
)
from musubi.utils.errors import (
    NoAffineDeformationError,
    OffVarietyError,
    TrivialDeformationError,
    UnsupportedAlgebraError,
    UnsupportedCaseError,
)
from musubi.utils.scalars import as_array, is_zero

half = sympy.Rational(1, 2)
quarter = sympy.Rational(1, 4)


@pytest.mark.parametrize(
    ("x", "case"),
    [
        (0, CaseTag.spherical),
        (half, CaseTag.spherical),
        (-0.8, CaseTag.spherical),
        (sympy.sqrt(3) / 2, CaseTag.boundary),
        (-sympy.sqrt(3) / 2, CaseTag.boundary),
        (0.9, CaseTag.elliptic_lorentz),
        (sympy.Integer(1), CaseTag.parabolic),
        (-1.0, CaseTag.parabolic),
        (2, CaseTag.hyperbolic),
        (-3.5, CaseTag.hyperbolic),
    ],
)
def test_classify(x, case: CaseTag) -> None:
    assert classify(x) is case


def test_case_numbers_and_algebras() -> None:
    assert [case.number for case in CaseTag] == [1, 2, 3, 4, 5]
    assert CaseTag.spherical.algebra == HAMILTON
    assert CaseTag.boundary.algebra.name == "ComplexSplit"
    assert CaseTag.hyperbolic.algebra == SPLIT


def test_trefoil_parameters() -> None:
    assert trefoil_y(half) == -quarter
    assert trefoil_s(half) == 1
    assert trefoil_s(sympy.Integer(1)) == -quarter
    with pytest.raises(NoAffineDeformationError):
        trefoil_s(0)


def test_rep_point_validation() -> None:
    point = RepPoint.from_x(sympy.Integer(2), affine=True)
    assert point.y == sympy.Rational(7, 2)
    assert point.s == sympy.Rational(-13, 8)
    assert point.case is CaseTag.hyperbolic
    with pytest.raises(OffVarietyError):
        RepPoint(x=1, y=0, case=CaseTag.parabolic)
    with pytest.raises(OffVarietyError):
        RepPoint(x=1, y=half, s=1, case=CaseTag.parabolic)


@pytest.mark.parametrize("x", [half, sympy.Rational(9, 10), sympy.Integer(1), sympy.Integer(2), -sympy.Integer(3)])
def test_linear_pair_is_conjugate(x) -> None:
    a, b = linear_rep(x)
    assert a.is_unit() and b.is_unit()
    assert a.w == b.w == x
    assert is_zero(a.pure.inner(b.pure) - trefoil_y(x))
    assert is_zero(a.pure.norm() - b.pure.norm())


def test_c_representation_rejects_unreachable_points() -> None:
    with pytest.raises(OffVarietyError):
        c_representation(half, 2, HAMILTON)
    with pytest.raises(OffVarietyError):
        c_representation(sympy.Integer(1), 0, SPLIT)
    with pytest.raises(UnsupportedAlgebraError):
        c_representation(half, -quarter, COMPLEX_SPLIT)


@pytest.mark.parametrize("case", list(CaseTag))
def test_braid_relation_in_every_case(case: CaseTag) -> None:
    for x in sample_points(case, 10, seed=11):
        assert braid_residual(*linear_rep(x)) < 1e-9
        if case is not CaseTag.boundary:
            assert braid_residual(*affine_rep(x)) < 1e-8


def test_braid_relation_exact() -> None:
    for x in (half, sympy.Integer(1), sympy.Integer(2)):
        rho_a, rho_b = affine_rep(x)
        assert (rho_a * rho_b * rho_a).same_map(rho_b * rho_a * rho_b, 0.0)


def test_sample_points_stay_in_their_region() -> None:
    for case in (CaseTag.spherical, CaseTag.elliptic_lorentz, CaseTag.hyperbolic):
        for x in sample_points(case, 30, seed=5):
            assert classify(x) is case
    assert sample_points(CaseTag.parabolic, 5) == [1.0, -1.0]
    assert max(abs(x) for x in sample_points(CaseTag.hyperbolic, 30, seed=5)) > 5


@pytest.mark.parametrize("x", [6.0, -8.5, 9.99])
def test_braid_relation_at_large_x(x: float) -> None:
    rho_a, rho_b = affine_rep(x)
    assert braid_residual(rho_a, rho_b) < 1e-9
    aba = rho_a * rho_b * rho_a
    assert aba.same_map(rho_b * rho_a * rho_b, 1e-9 * max(1.0, image_scale(aba)) ** 2)


def test_boundary_case_has_no_deformation() -> None:
    with pytest.raises(TrivialDeformationError):
        affine_rep(sympy.sqrt(3) / 2)
    a, b = linear_rep(sympy.sqrt(3) / 2)
    assert a.params.name == "ComplexSplit"
    assert braid_residual(a, b) < 1e-12


def euclidean_matrices(x: float) -> tuple[np.ndarray, np.ndarray]:
    x2 = x * x
    r, q = np.sqrt(1 - x2), np.sqrt(3 - 4 * x2)
    t = x * np.sqrt((4 * x2 - 3) / (x2 - 1))
    m = (1 - 2 * x2) * q / (2 * (x2 - 1))
    ma = np.array(
        [
            [2 * x2 - 1, (x - 2 * x**3) / r, t, 0],
            [x * (2 * x2 - 1) / r, (-4 * x**4 + 2 * x2 + 1) / (2 - 2 * x2), m, q**3 / (8 * x * r)],
            [-t, m, (1 - 2 * x2) / (2 * x2 - 2), (-8 * x**4 + 10 * x2 - 3) / (8 * x * r)],
            [0, 0, 0, 1],
        ]
    )
    mb = np.array(
        [
            [2 * x2 - 1, -2 * x * r, 0, -q / 2],
            [2 * x * r, 2 * x2 - 1, 0, 0],
            [0, 0, 1, (3 - 4 * x2) * r / (4 * x)],
            [0, 0, 0, 1],
        ]
    )
    return ma, mb


def elliptic_lorentz_matrices(x: float) -> tuple[np.ndarray, np.ndarray]:
    x2 = x * x
    r, p = np.sqrt(1 - x2), np.sqrt(4 * x2 - 3)
    t = x * np.sqrt((3 - 4 * x2) / (x2 - 1))
    m = p * (2 * x2 - 1) / (2 * (1 - x2))
    ma = np.array(
        [
            [2 * x2 - 1, -2 * x * r, 0, 0],
            [2 * x * r, 2 * x2 - 1, 0, 0],
            [0, 0, 1, (3 - 4 * x2) * r / (4 * x)],
            [0, 0, 0, 1],
        ]
    )
    mb = np.array(
        [
            [2 * x2 - 1, (x - 2 * x**3) / r, t, -p / 2],
            [x * (2 * x2 - 1) / r, (1 + 2 * x2 - 4 * x**4) / (2 - 2 * x2), m, p**3 / (8 * x * r)],
            [t, m, (1 - 2 * x2) / (2 * x2 - 2), (-3 + 10 * x2 - 9 * x**4) / (8 * x * r)],
            [0, 0, 0, 1],
        ]
    )
    return ma, mb


def hyperbolic_matrices(x: float) -> tuple[np.ndarray, np.ndarray]:
    x2 = x * x
    v, p = np.sqrt(x2 - 1), np.sqrt(4 * x2 - 3)
    m = p * (2 * x2 - 1) / (2 * (x2 - 1))
    ma = np.array(
        [
            [2 * x2 - 1, 0, 2 * x * v, 0],
            [0, 1, 0, (3 - 4 * x2) * v / (4 * x)],
            [2 * x * v, 0, 2 * x2 - 1, 0],
            [0, 0, 0, 1],
        ]
    )
    mb = np.array(
        [
            [2 * x2 - 1, x * p / v, -x * (2 * x2 - 1) / v, -p / 2],
            [-x * p / v, (1 - 2 * x2) / (2 * x2 - 2), m, (3 - 10 * x2 + 8 * x**4) / (8 * x * v)],
            [-x * (2 * x2 - 1) / v, m, (1 + 2 * x2 - 4 * x**4) / (2 - 2 * x2), -(p**3) / (8 * x * v)],
            [0, 0, 0, 1],
        ]
    )
    return ma, mb


def emitted(x: float) -> tuple[np.ndarray, np.ndarray]:
    rho_a, rho_b = affine_rep(x)
    return as_array(rho_a.matrix4()), as_array(rho_b.matrix4())


def preserves_lorentz_form(m: np.ndarray) -> bool:
    form = np.diag([-1.0, -1.0, 1.0])
    linear = m[:3, :3]
    return bool(np.allclose(linear.T @ form @ linear, form, atol=1e-9))


@pytest.mark.parametrize("x", sample_points(CaseTag.spherical, 20, seed=17))
def test_euclidean_matrices(x: float) -> None:
    ma, mb = euclidean_matrices(x)
    got_a, got_b = emitted(x)
    np.testing.assert_allclose(got_a, ma, rtol=1e-9, atol=1e-9)

    # printed with the opposite sign
    assert got_b[0, 3] == pytest.approx(np.sqrt(3 - 4 * x * x) / 2, abs=1e-9)
    mb[0, 3] = -mb[0, 3]
    np.testing.assert_allclose(got_b, mb, rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("x", sample_points(CaseTag.elliptic_lorentz, 20, seed=17))
def test_elliptic_lorentz_matrices(x: float) -> None:
    ma, mb = elliptic_lorentz_matrices(x)
    got_a, got_b = emitted(x)
    np.testing.assert_allclose(got_a, ma, rtol=1e-9, atol=1e-9)

    assert preserves_lorentz_form(got_b)
    assert not preserves_lorentz_form(mb)
    mb[2, 1] = -mb[2, 1]
    mb[1, 3] = -mb[1, 3]
    mb[2, 3] = (-8 * x**4 + 10 * x * x - 3) / (8 * x * np.sqrt(1 - x * x))
    np.testing.assert_allclose(got_b, mb, rtol=1e-9, atol=1e-9)


def test_parabolic_matrices() -> None:
    rho_a, rho_b = affine_rep(sympy.Integer(1))
    assert rho_a.matrix4() == sympy.Matrix(
        [[1, -2, 2, 0], [2, -1, 2, -quarter], [2, -2, 3, -quarter], [0, 0, 0, 1]]
    )
    eighth, sixteenth = sympy.Rational(1, 8), sympy.Rational(1, 16)
    assert rho_b.matrix4() == sympy.Matrix(
        [
            [1, -half, -half, half],
            [half, 7 * eighth, -eighth, sixteenth],
            [-half, eighth, 9 * eighth, -sixteenth],
            [0, 0, 0, 1],
        ]
    )


@pytest.mark.parametrize("x", sample_points(CaseTag.hyperbolic, 20, seed=17))
def test_hyperbolic_matrices(x: float) -> None:
    ma, mb = hyperbolic_matrices(x)
    got_a, got_b = emitted(x)
    np.testing.assert_allclose(got_a, ma, rtol=1e-9, atol=1e-9)

    assert preserves_lorentz_form(got_b)
    assert not preserves_lorentz_form(mb)
    mb[2, 1] = -mb[2, 1]
    mb[2, 3] = -mb[2, 3]
    np.testing.assert_allclose(got_b, mb, rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("t", [-1, 0, 2])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_parabolic_fixed_line(n: int, t: int) -> None:
    rho_a, _ = affine_rep(sympy.Integer(1))
    point = PureVector.from_coords(sympy.Rational(1, 8), t, t, params=SPLIT)
    assert (rho_a**n).act(point).is_close(point, 0.0)
    line = parabolic_fixed_line(rho_a)
    assert line is not None
    assert rho_a.act(line.at(t)).is_close(line.at(t), 0.0)


def test_invariants_at_one_half() -> None:
    found = geometric_invariants(half)
    assert found.case is CaseTag.spherical
    assert is_zero(found.delta_axis - sympy.sqrt(2) / 4)
    assert is_zero(found.sigma - sympy.sqrt(3) / 2)
    assert found.cos_omega == sympy.Rational(-1, 3)
    assert is_zero(found.alpha - 2 * sympy.pi / 3)


def test_invariants_agree_with_the_representation() -> None:
    rho_a, rho_b = affine_rep(half)
    assert is_zero(axis_distance(rho_a, rho_b) - sympy.sqrt(2) / 4)
    assert is_zero(representation_sigma(half) - sympy.sqrt(3) / 2)
    for x in (0.2, -0.7, 0.95, 1.7, -2.4):
        assert abs(representation_sigma(x) - geometric_invariants(x).sigma) < 1e-9


def test_invariants_by_case() -> None:
    assert geometric_invariants(sympy.Integer(1)).to_json()["sigma"] is None
    lorentz = geometric_invariants(sympy.Integer(2))
    assert lorentz.case is CaseTag.hyperbolic
    assert lorentz.cosh_d == sympy.Rational(7, 6)
    assert lorentz.alpha is None
    assert is_zero(lorentz.sigma + sympy.Rational(13, 8) * sympy.sqrt(3))


def test_axis_distance_needs_euclidean_pair() -> None:
    with pytest.raises(UnsupportedCaseError):
        axis_distance(*affine_rep(sympy.Integer(2)))


@pytest.mark.parametrize("x", [half, sympy.Rational(9, 10), sympy.Integer(2), 0.31, 3.3])
def test_cone_trigonometry(x) -> None:
    check = cone_trig_check(x)
    assert is_zero(check.difference, 1e-9)


def test_cone_trigonometry_skips_isolated_cases() -> None:
    with pytest.raises(UnsupportedCaseError):
        cone_trig_check(sympy.Integer(1))


@pytest.mark.parametrize("affine", [False, True])
@pytest.mark.parametrize("x", [0.4, 0.9, 1.0, 2.0])
def test_c_is_central(x: float, affine: bool) -> None:
    assert element_images(x, affine=affine).c_is_central(1e-8)


def test_plane_action_braids() -> None:
    a, b = case2_plane_action()
    aba, bab = a.then(b).then(a), b.then(a).then(b)
    assert is_zero(aba.rotation - bab.rotation)
    assert is_zero(aba.translation - bab.translation)
    assert a.fixed_point == 0
    assert sympy.simplify(b.fixed_point - sympy.I) == 0
    assert is_zero(a.angle - sympy.pi / 3)


def test_plane_action_products() -> None:
    a, b = case2_plane_action()
    ab = a.then(b)
    barycenter = (0 + sympy.I + (sympy.sqrt(3) / 2 + sympy.I / 2)) / 3
    assert is_zero(ab.fixed_point - barycenter)
    assert is_zero(ab(barycenter) - barycenter)
    assert is_zero(ab.angle - 2 * sympy.pi / 3)

    cube = ab.then(ab).then(ab)
    assert is_zero(cube.rotation - 1)
    assert is_zero(cube.translation)

    # aba is the half-turn about the midpoint of the two centers
    aba = ab.then(a)
    assert is_zero(aba.rotation + 1)
    assert is_zero(aba.fixed_point - sympy.I / 2)
    assert aba.then(aba).fixed_point is None


def test_float_and_exact_backends_agree() -> None:
    exact_a, exact_b = affine_rep(sympy.Rational(3, 2))
    float_a, float_b = affine_rep(1.5)
    assert np.allclose(
        np.array(exact_a.matrix4().evalf(), dtype=float), float_a.matrix4(), atol=1e-12
    )
    assert exact_b.is_exact and not float_b.is_exact
