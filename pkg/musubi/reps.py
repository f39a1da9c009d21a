"""Representations of the trefoil group <a, b | aba = bab>.

Every non-abelian representation into the unit quaternions sends a and b to
conjugate units A, B with A+ = B+ = x and <A-, B-> = y = (2x^2 - 1)/2. The
value of x alone decides which algebra carries the pair:

    |x| <  sqrt(3)/2    Hamilton, spherical cone data
    |x| == sqrt(3)/2    split algebra over C
    sqrt(3)/2 < |x| < 1 split algebra, elliptic linear parts
    |x| == 1            split algebra, parabolic linear parts
    |x| >  1            split algebra, hyperbolic linear parts

The affine deformations are (s A-, A) and (s B- + (A- B-)-, B) with
s = (3 - 4x^2) / (4x).
"""

from __future__ import annotations

import cmath
import logging
from enum import Enum
from typing import Any, Optional, Union

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict, model_validator

from musubi.affine import AffineIsometry, shift_decompose
from musubi.algebra import (
    COMPLEX_SPLIT,
    HAMILTON,
    SPLIT,
    AlgebraParams,
    Field,
    PureVector,
    Quaternion,
    inner,
    mul,
)
from musubi.utils.errors import (
    NoAffineDeformationError,
    OffVarietyError,
    TrivialDeformationError,
    UnsupportedAlgebraError,
    UnsupportedCaseError,
)
from musubi.utils.scalars import (
    DEFAULT_TOLERANCE,
    Scalar,
    acos,
    acosh,
    div,
    imag_unit,
    is_exact,
    is_zero,
    max_abs,
    sign,
    simplify,
    sqrt,
    to_float,
    to_json,
)
from musubi.words import C_WORD, D_WORD, F_WORD, evaluate, trefoil_affine_poly, trefoil_char_poly

log = logging.getLogger(__name__)

Pair = tuple[Quaternion, Quaternion]
AffinePair = tuple[AffineIsometry, AffineIsometry]


class CaseTag(str, Enum):
    spherical = "Case1_spherical"
    boundary = "Case2_boundary"
    elliptic_lorentz = "Case3_elliptic_lorentz"
    parabolic = "Case4_parabolic"
    hyperbolic = "Case5_hyperbolic"

    @property
    def number(self) -> int:
        return list(CaseTag).index(self) + 1

    @property
    def algebra(self) -> AlgebraParams:
        if self is CaseTag.spherical:
            return HAMILTON
        if self is CaseTag.boundary:
            return COMPLEX_SPLIT
        return SPLIT


def trefoil_y(x: Scalar) -> Scalar:
    return div(2 * x**2 - 1, 2)


def trefoil_s(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> Scalar:
    if is_zero(x, 0.0 if is_exact(x) else tol):
        raise NoAffineDeformationError("4x^2 + 4sx - 3 = 0 has no solution at x = 0")
    return div(3 - 4 * x**2, 4 * x)


def _cmp(value: Scalar, bound: Scalar, tol: float) -> int:
    return sign(value - bound, 0.0 if is_exact(value) else tol)


def classify(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> CaseTag:
    square = simplify(x**2)
    three_quarters = sympy.Rational(3, 4) if is_exact(x) else 0.75
    boundary = _cmp(square, three_quarters, tol)
    if boundary < 0:
        return CaseTag.spherical
    if boundary == 0:
        return CaseTag.boundary
    unit = _cmp(square, 1, tol)
    if unit < 0:
        return CaseTag.elliptic_lorentz
    if unit == 0:
        return CaseTag.parabolic
    return CaseTag.hyperbolic


class RepPoint(BaseModel):
    """A point (x, y[, s]) of the trefoil representation variety."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: Any
    y: Any
    s: Any = None
    case: CaseTag
    tol: float = DEFAULT_TOLERANCE

    @model_validator(mode="after")
    def _on_variety(self) -> "RepPoint":
        exact = is_exact(self.x, self.y)
        if not is_zero(trefoil_char_poly(self.x, self.y), 0.0 if exact else self.tol):
            raise OffVarietyError(f"2x^2 - 2y - 1 != 0 at x={self.x}, y={self.y}")
        if self.s is not None and not is_zero(
            trefoil_affine_poly(self.x, self.s), 0.0 if is_exact(self.x, self.s) else self.tol
        ):
            raise OffVarietyError(f"4x^2 + 4sx - 3 != 0 at x={self.x}, s={self.s}")
        return self

    @classmethod
    def from_x(
        cls, x: Scalar, *, affine: bool = False, tol: float = DEFAULT_TOLERANCE
    ) -> "RepPoint":
        s = trefoil_s(x, tol) if affine else None
        return cls(x=x, y=trefoil_y(x), s=s, case=classify(x, tol), tol=tol)

    def to_json(self) -> dict[str, Any]:
        return {
            "x": to_json(self.x),
            "y": to_json(self.y),
            "s": None if self.s is None else to_json(self.s),
            "case": self.case.value,
        }


def c_representation(
    x: Scalar, y: Scalar, params: AlgebraParams = HAMILTON, *, tol: float = DEFAULT_TOLERANCE
) -> Pair:
    """Conjugate units A, B with A+ = B+ = x and <A-, B-> = y.

    Only real Hamilton and split algebras are supported. Raises
    ``OffVarietyError`` when no real pair exists for (x, y).
    """
    if params.field is not Field.real or not (params == HAMILTON or params.is_split):
        raise UnsupportedAlgebraError(f"no c-representation constructor for {params.name}")
    exact = is_exact(x, y)
    eps = 0.0 if exact else tol
    u = simplify(1 - x**2)
    u_sign = sign(u, eps)

    if params == HAMILTON:
        gap = simplify(u**2 - y**2)
        if u_sign <= 0 or sign(gap, eps) < 0:
            raise OffVarietyError(f"no Hamilton pair with x={x}, y={y}")
        root_u = sqrt(u)
        b = Quaternion(x, root_u, params=params)
        a = Quaternion(x, div(y, root_u), sqrt(div(gap, u)), params=params)
        return a, b

    if u_sign > 0:
        gap = simplify(y**2 - u**2)
        if sign(gap, eps) < 0:
            raise OffVarietyError(f"timelike pair cannot reach y={y} at x={x}")
        root_u = sqrt(u)
        a = Quaternion(x, root_u, params=params)
        b = Quaternion(x, div(y, root_u), sqrt(div(gap, u)), params=params)
        return a, b

    if u_sign == 0:
        if is_zero(y, eps):
            raise OffVarietyError("parabolic pair needs y != 0")
        half = div(y, 2)
        return Quaternion(x, 1, 1, params=params), Quaternion(x, half, -half, params=params)

    v = simplify(x**2 - 1)
    root_v = sqrt(v)
    a = Quaternion(x, 0, root_v, params=params)
    gamma = -div(y, root_v)
    gap = simplify(y**2 - v**2)
    if sign(gap, eps) >= 0:
        beta = -sqrt(div(gap, v))
        return a, Quaternion(x, beta, gamma, params=params)
    return a, Quaternion(x, 0, gamma, sqrt(div(-gap, v)), params=params)


def _boundary_pair(x: Scalar) -> Pair:
    half = sympy.Rational(1, 2) if is_exact(x) else 0.5
    w = sign(x) * sqrt(3 if is_exact(x) else 3.0) / 2
    half_i = imag_unit(x) * half
    a = Quaternion(w, 0, 0, half_i, params=COMPLEX_SPLIT)
    b = Quaternion(w, -half, half, half_i, params=COMPLEX_SPLIT)
    return a, b


def linear_rep(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> Pair:
    case = classify(x, tol)
    if case is CaseTag.boundary:
        return _boundary_pair(x)
    if case is CaseTag.parabolic:
        # x is +-1 up to tol; snap so the pair stays rational
        w = sign(x)
        return c_representation(w, trefoil_y(w), SPLIT, tol=tol)
    return c_representation(x, trefoil_y(x), case.algebra, tol=tol)


def pure_product(a: Quaternion, b: Quaternion) -> PureVector:
    """(A- B-)-, the pure part of the product of the pure parts."""
    return mul(a.pure.as_quaternion(), b.pure.as_quaternion()).pure


def affine_rep(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> AffinePair:
    case = classify(x, tol)
    if case is CaseTag.boundary:
        raise TrivialDeformationError(f"s = 0 at x = {x}")
    a, b = linear_rep(x, tol)
    s = trefoil_s(a.w, tol)
    rho_a = AffineIsometry(a.pure * s, a, tol=tol)
    rho_b = AffineIsometry(b.pure * s + pure_product(a, b), b, tol=tol)
    log.debug("affine pair at x=%s with s=%s", x, s)
    return rho_a, rho_b


class GeometricInvariants(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    case: CaseTag
    alpha: Any = None
    partial: Any = None
    omega: Any = None
    cos_omega: Any = None
    d: Any = None
    cosh_d: Any = None
    delta_axis: Any = None
    sigma: Any = None

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"case": self.case.value}
        for name in ("alpha", "partial", "omega", "cos_omega", "d", "cosh_d", "delta_axis", "sigma"):
            value = getattr(self, name)
            payload[name] = None if value is None else to_json(value)
        return payload


def geometric_invariants(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> GeometricInvariants:
    """Cone angles, axis distances and shifts in closed form."""
    case = classify(x, tol)
    y = trefoil_y(x)
    u = simplify(1 - x**2)
    exact = is_exact(x)

    if case in (CaseTag.spherical, CaseTag.boundary):
        cos_omega = div(y, u)
        invariants: dict[str, Any] = {
            "alpha": 2 * acos(x),
            "cos_omega": cos_omega,
            "omega": acos(cos_omega),
        }
        if case is CaseTag.spherical:
            invariants["delta_axis"] = sqrt(3 - 4 * x**2) / 4
            if not is_zero(x, 0.0 if exact else tol):
                invariants["sigma"] = simplify((div(3, 4 * x) - x) * sqrt(u))
        return GeometricInvariants(case=case, **invariants)

    if case is CaseTag.elliptic_lorentz:
        cosh_d = div(y, u)
        return GeometricInvariants(
            case=case,
            alpha=2 * acos(x),
            cosh_d=cosh_d,
            d=acosh(cosh_d),
            sigma=simplify(trefoil_s(x, tol) * sqrt(u)),
        )

    if case is CaseTag.hyperbolic:
        v = simplify(x**2 - 1)
        cosh_d = div(y, v)
        magnitude = x if sign(x) > 0 else -x
        return GeometricInvariants(
            case=case,
            partial=2 * acosh(magnitude),
            cosh_d=cosh_d,
            d=acosh(cosh_d),
            sigma=simplify(trefoil_s(x, tol) * sqrt(v)),
        )

    return GeometricInvariants(case=case)


def axis_distance(rho_a: AffineIsometry, rho_b: AffineIsometry, tol: float = DEFAULT_TOLERANCE) -> Scalar:
    """Euclidean distance between the rotation axes of two Hamilton isometries."""
    if rho_a.params != HAMILTON:
        raise UnsupportedCaseError("axis distance is only defined for Euclidean pairs")
    normal = pure_product(rho_a.linear, rho_b.linear)
    point_a = shift_decompose(rho_a, tol).axis_point
    point_b = shift_decompose(rho_b, tol).axis_point
    assert point_a is not None and point_b is not None
    offset = inner(point_b - point_a, normal)
    distance = div(offset, sqrt(normal.norm()))
    return distance if sign(distance, tol) >= 0 else -distance


def representation_sigma(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> Scalar:
    """Shift of rho(a) read off the affine representation."""
    rho_a, _ = affine_rep(x, tol)
    return shift_decompose(rho_a, tol).sigma


class ConeTrigCheck(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    case: CaseTag
    lhs: Any
    rhs: Any
    difference: Any

    def to_json(self) -> dict[str, Any]:
        return {
            "case": self.case.value,
            "lhs": to_json(self.lhs),
            "rhs": to_json(self.rhs),
            "difference": to_json(self.difference),
        }


def cone_trig_check(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> ConeTrigCheck:
    """Compare the cone-manifold trigonometry with the representation.

    The left side is (cos^2(t) + cos(2pi/3)) / sin^2(t) with cos(t) = x, or
    its hyperbolic analogue; the right side is the normalized inner product
    of A- and B-.
    """
    case = classify(x, tol)
    half = sympy.Rational(1, 2) if is_exact(x) else 0.5
    if case in (CaseTag.spherical, CaseTag.elliptic_lorentz):
        lhs = div(x**2 - half, 1 - x**2)
    elif case is CaseTag.hyperbolic:
        lhs = div(x**2 - half, x**2 - 1)
    else:
        raise UnsupportedCaseError(f"no cone trigonometry for {case.value}")

    a, b = linear_rep(x, tol)
    rhs = div(inner(a.pure, b.pure), sqrt(simplify(a.pure.norm() * b.pure.norm())))
    return ConeTrigCheck(case=case, lhs=lhs, rhs=rhs, difference=simplify(lhs - rhs))


class ElementImages(BaseModel):
    """Images of F = ab, D = aba and the central C = D^2."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    a: Any
    b: Any
    F: Any
    D: Any
    C: Any

    def c_is_central(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        pairs = ((self.C * self.a, self.a * self.C), (self.C * self.b, self.b * self.C))
        if isinstance(self.C, AffineIsometry):
            return all(left.same_map(right, tol) for left, right in pairs)
        return all(left.is_close(right, tol) for left, right in pairs)

    def to_json(self) -> dict[str, Any]:
        return {"F": self.F.to_json(), "D": self.D.to_json(), "C": self.C.to_json()}


def element_images(
    x: Scalar, *, affine: bool = False, tol: float = DEFAULT_TOLERANCE
) -> ElementImages:
    a, b = affine_rep(x, tol) if affine else linear_rep(x, tol)
    return ElementImages(
        a=a,
        b=b,
        F=evaluate(F_WORD, a, b),
        D=evaluate(D_WORD, a, b),
        C=evaluate(C_WORD, a, b),
    )


class PlaneMap:
    """z -> rotation * z + translation on the complex plane."""

    __slots__ = ("rotation", "translation")

    def __init__(self, rotation: Scalar, translation: Scalar = 0) -> None:
        self.rotation = simplify(rotation)
        self.translation = simplify(translation)

    def __call__(self, z: Scalar) -> Scalar:
        return simplify(self.rotation * z + self.translation)

    def then(self, other: PlaneMap) -> PlaneMap:
        """Apply ``self`` first and ``other`` second."""
        return PlaneMap(other.rotation * self.rotation, other.rotation * self.translation + other.translation)

    @property
    def angle(self) -> Scalar:
        if is_exact(self.rotation):
            return sympy.simplify(sympy.arg(self.rotation))
        return cmath.phase(complex(to_float(self.rotation)))

    @property
    def fixed_point(self) -> Optional[Scalar]:
        if is_zero(self.rotation - 1):
            return None
        if is_exact(self.rotation, self.translation):
            return sympy.nsimplify(sympy.simplify(self.translation / (1 - self.rotation)))
        return self.translation / (1 - self.rotation)

    def to_json(self) -> dict[str, Any]:
        return {"rotation": to_json(self.rotation), "translation": to_json(self.translation)}


def case2_plane_action() -> tuple[PlaneMap, PlaneMap]:
    """Rotations by pi/3 about 0 and about i."""
    sixth = sympy.Rational(1, 2) + sympy.sqrt(3) / 2 * sympy.I
    twelfth = sympy.sqrt(3) / 2 + sympy.I / 2
    return PlaneMap(sixth), PlaneMap(sixth, twelfth)


_REGIONS: dict[CaseTag, tuple[float, float]] = {
    CaseTag.spherical: (0.0, float(np.sqrt(3) / 2)),
    CaseTag.elliptic_lorentz: (float(np.sqrt(3) / 2), 1.0),
    CaseTag.hyperbolic: (1.0, 10.0),
}


def sample_points(
    case: CaseTag,
    count: int,
    *,
    seed: Union[int, np.random.Generator] = 3,
    margin: float = 1e-3,
) -> list[float]:
    """Random x values of one region, both signs, ``margin`` away from its ends.

    The two isolated cases return their two points.
    """
    if case is CaseTag.boundary:
        return [float(np.sqrt(3) / 2), -float(np.sqrt(3) / 2)][:count]
    if case is CaseTag.parabolic:
        return [1.0, -1.0][:count]
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    low, high = _REGIONS[case]
    magnitudes = rng.uniform(low + margin, high - margin, size=count)
    signs = rng.choice([-1.0, 1.0], size=count)
    return [float(v) for v in magnitudes * signs]


def image_distance(left: Any, right: Any) -> float:
    """Largest entrywise gap between two images of the same word.

    Affine images are compared as maps, (v, A) against (v, ±A); quaternions
    up to sign.
    """
    if isinstance(left, AffineIsometry):
        translation = max_abs(p - q for p, q in zip(left.v.coords, right.v.coords))
        return max(translation, image_distance(left.linear, right.linear))
    pairs = list(zip(left.coefficients, right.coefficients))
    return min(max_abs(p - q for p, q in pairs), max_abs(p + q for p, q in pairs))


def image_scale(image: Any) -> float:
    if isinstance(image, AffineIsometry):
        return max(max_abs(image.v.coords), image.linear.magnitude())
    return image.magnitude()


def relative_gap(left: Any, right: Any) -> float:
    """``image_distance`` measured against the size of the images, floored at 1."""
    return image_distance(left, right) / max(1.0, image_scale(left), image_scale(right))


def braid_residual(a: Any, b: Any) -> float:
    return relative_gap(evaluate(D_WORD, a, b), evaluate("bab", a, b))
