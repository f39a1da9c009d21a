"""Affine isometries (v, A) of a quaternion algebra.

The group law is the semidirect product (v, A)(w, B) = (v + c(A)w, AB) and
(v, A) acts on pure quaternions by u -> v + c(A)u. Units give the affine
isometry group, invertible non-units the equiform group.
"""

from __future__ import annotations

import logging
from typing import Any, Literal, Optional

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict
from typing_extensions import Self

from musubi.algebra import (
    HAMILTON,
    AlgebraParams,
    PureVector,
    Quaternion,
    form_matrix,
    inner,
    linear_matrix,
    sandwich,
)
from musubi.utils.errors import (
    DegenerateAxisError,
    IncompatibleAlgebraError,
    NonUnitError,
    PureTranslationError,
    VerificationFailure,
)
from musubi.utils.scalars import (
    DEFAULT_TOLERANCE,
    Matrix,
    Scalar,
    as_array,
    div,
    is_exact,
    is_exact_matrix,
    is_zero,
    matrices_close,
    matrix,
    sign,
    sqrt,
    to_float,
    to_json,
)

log = logging.getLogger(__name__)

AxisKind = Literal["euclidean", "timelike", "spacelike"]


class AffineIsometry:
    __slots__ = ("v", "linear", "equiform")

    def __init__(
        self,
        v: PureVector,
        linear: Quaternion,
        *,
        equiform: bool = False,
        tol: float = DEFAULT_TOLERANCE,
    ) -> None:
        if v.params != linear.params:
            raise IncompatibleAlgebraError("translation and linear part disagree")
        if equiform:
            if is_zero(linear.norm(), 0.0 if linear.is_exact else tol):
                raise NonUnitError("equiform elements need an invertible linear part")
        elif not linear.is_unit(tol):
            raise NonUnitError(f"linear part has norm {linear.norm()}, expected 1")
        self.v: PureVector = v
        self.linear: Quaternion = linear
        self.equiform: bool = equiform

    @classmethod
    def identity_of(cls, params: AlgebraParams = HAMILTON) -> Self:
        return cls(PureVector.zero(params), Quaternion.one(params))

    @classmethod
    def translation(cls, w: PureVector) -> Self:
        return cls(w, Quaternion.one(w.params))

    @classmethod
    def from_matrix4(
        cls, m: Matrix, *, tol: float = DEFAULT_TOLERANCE
    ) -> AffineIsometry:
        """Recover (v, A) in the Hamilton algebra from a 4x4 Euclidean matrix."""
        rotation = _submatrix(m, 3, 3)
        linear = rotation_to_quaternion(rotation, tol=tol)
        v = PureVector.from_coords(m[0, 3], m[1, 3], m[2, 3], params=HAMILTON)
        return cls(v, linear, tol=tol)

    @property
    def params(self) -> AlgebraParams:
        return self.linear.params

    @property
    def is_exact(self) -> bool:
        return self.v.is_exact and self.linear.is_exact

    def identity(self) -> AffineIsometry:
        return AffineIsometry(
            PureVector.zero(self.params), self.linear.identity(), equiform=self.equiform
        )

    def __mul__(self, other: AffineIsometry) -> AffineIsometry:
        return compose(self, other)

    def __pow__(self, exponent: int) -> AffineIsometry:
        base = self if exponent >= 0 else self.inverse()
        result = self.identity()
        for _ in range(abs(exponent)):
            result = compose(result, base)
        return result

    def inverse(self) -> AffineIsometry:
        inv = self.linear.inverse()
        return AffineIsometry(-sandwich(inv, self.v), inv, equiform=self.equiform)

    def act(self, u: PureVector) -> PureVector:
        return act(self, u)

    def matrix4(self) -> Matrix:
        return affine_matrix4(self)

    def is_close(self, other: AffineIsometry, tol: float = DEFAULT_TOLERANCE) -> bool:
        return self.v.is_close(other.v, tol) and self.linear.is_close(other.linear, tol)

    def same_map(self, other: AffineIsometry, tol: float = DEFAULT_TOLERANCE) -> bool:
        """Equality as maps of H0, so linear parts A and -A agree."""
        return matrices_close(affine_matrix4(self), affine_matrix4(other), tol)

    def to_json(self) -> dict[str, Any]:
        return {"v": self.v.to_json(), "A": self.linear.to_json()}

    def __repr__(self) -> str:
        return f"AffineIsometry(v={self.v!r}, A={self.linear!r})"


def compose(first: AffineIsometry, second: AffineIsometry) -> AffineIsometry:
    if first.params != second.params:
        raise IncompatibleAlgebraError(
            f"cannot compose {first.params.name} with {second.params.name}"
        )
    return AffineIsometry(
        first.v + sandwich(first.linear, second.v),
        first.linear * second.linear,
        equiform=first.equiform or second.equiform,
    )


def act(e: AffineIsometry, u: PureVector) -> PureVector:
    return e.v + sandwich(e.linear, u)


def affine_matrix4(e: AffineIsometry) -> Matrix:
    m = linear_matrix(e.linear)
    v = e.v.coords
    rows = [[m[r, c] for c in range(3)] + [v[r]] for r in range(3)]
    return matrix(rows + [[0, 0, 0, 1]])


class ShiftData(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    s: Any
    shift_vector: PureVector
    v_perp: PureVector
    sigma: Any
    kind: AxisKind
    axis_point: Optional[PureVector] = None

    def to_json(self) -> dict[str, Any]:
        return {
            "s": to_json(self.s),
            "shift_vector": self.shift_vector.to_json(),
            "v_perp": self.v_perp.to_json(),
            "sigma": to_json(self.sigma),
            "kind": self.kind,
            "axis_point": None if self.axis_point is None else self.axis_point.to_json(),
        }


def _axis_kind(params: AlgebraParams, n: Scalar, tol: float) -> AxisKind:
    if not params.is_split:
        return "euclidean"
    return "timelike" if sign(n, tol) > 0 else "spacelike"


def shift_decompose(e: AffineIsometry, tol: float = DEFAULT_TOLERANCE) -> ShiftData:
    """Split v into s A- plus a part orthogonal to A-, and locate the axis."""
    direction = e.linear.pure
    if direction.is_zero(tol):
        raise PureTranslationError()
    n = direction.norm()
    if is_zero(n, 0.0 if e.is_exact else tol):
        raise DegenerateAxisError()

    s = div(inner(e.v, direction), n)
    shift_vector = direction * s
    v_perp = e.v - shift_vector
    sigma = s * sqrt(n * sign(n, tol))
    axis_point = None
    if not e.equiform:
        axis_point = _axis_point(e, direction, v_perp, tol)

    return ShiftData(
        s=s,
        shift_vector=shift_vector,
        v_perp=v_perp,
        sigma=sigma,
        kind=_axis_kind(e.params, n, tol),
        axis_point=axis_point,
    )


def _axis_point(
    e: AffineIsometry, direction: PureVector, v_perp: PureVector, tol: float
) -> PureVector:
    m = linear_matrix(e.linear)
    gram = form_matrix(e.params)
    a = direction.coords
    constraint = [sum(gram[r, c] * a[c] for c in range(3)) for r in range(3)]
    rhs = [-c for c in v_perp.coords]

    if e.is_exact and is_exact_matrix(m):
        system = (m - sympy.eye(3)).col_join(sympy.Matrix([constraint]))
        target = sympy.Matrix(rhs + [0])
        solution, free = system.gauss_jordan_solve(target)
        solution = solution.subs({symbol: 0 for symbol in free})
        point = [sympy.simplify(solution[k]) for k in range(3)]
    else:
        system = np.vstack(
            [as_array(m) - np.eye(3), np.array([to_float(c) for c in constraint])]
        )
        target = np.array([to_float(c) for c in rhs] + [0.0])
        solution, *_ = np.linalg.lstsq(system, target, rcond=None)
        if np.max(np.abs(system @ solution - target)) > max(tol, 1e-7) * max(
            1.0, float(np.max(np.abs(target)))
        ):
            log.warning("axis system residual above tolerance for %r", e)
        point = [_real_if_close(c) for c in solution]
    return PureVector.from_coords(*point, params=e.params)


def _real_if_close(value: Any) -> Any:
    value = complex(value)
    return value.real if abs(value.imag) < 1e-12 else value


def _submatrix(m: Matrix, rows: int, cols: int) -> Matrix:
    return matrix([[m[r, c] for c in range(cols)] for r in range(rows)])


def rotation_to_quaternion(r: Matrix, *, tol: float = DEFAULT_TOLERANCE) -> Quaternion:
    """Unit Hamilton quaternion with so3_matrix equal to ``r``.

    Picks the numerically largest of w, x, y, z to divide by; the result has
    w >= 0.
    """
    trace = r[0, 0] + r[1, 1] + r[2, 2]
    candidates = [trace, r[0, 0], r[1, 1], r[2, 2]]
    branch = int(np.argmax([float(to_float(c)) for c in candidates]))

    if branch == 0:
        w = sqrt(1 + trace) / 2
        x = (r[2, 1] - r[1, 2]) / (4 * w)
        y = (r[0, 2] - r[2, 0]) / (4 * w)
        z = (r[1, 0] - r[0, 1]) / (4 * w)
    elif branch == 1:
        x = sqrt(1 + r[0, 0] - r[1, 1] - r[2, 2]) / 2
        w = (r[2, 1] - r[1, 2]) / (4 * x)
        y = (r[0, 1] + r[1, 0]) / (4 * x)
        z = (r[0, 2] + r[2, 0]) / (4 * x)
    elif branch == 2:
        y = sqrt(1 - r[0, 0] + r[1, 1] - r[2, 2]) / 2
        w = (r[0, 2] - r[2, 0]) / (4 * y)
        x = (r[0, 1] + r[1, 0]) / (4 * y)
        z = (r[1, 2] + r[2, 1]) / (4 * y)
    else:
        z = sqrt(1 - r[0, 0] - r[1, 1] + r[2, 2]) / 2
        w = (r[1, 0] - r[0, 1]) / (4 * z)
        x = (r[0, 2] + r[2, 0]) / (4 * z)
        y = (r[1, 2] + r[2, 1]) / (4 * z)

    pure = PureVector.from_coords(x, y, z, params=HAMILTON)
    q = Quaternion.from_parts(w, pure)
    if sign(q.w, tol) < 0:
        q = -q
    if not matrices_close(linear_matrix(q), r, tol):
        raise VerificationFailure("matrix is not a proper rotation")
    return q


ElementKind = Literal[
    "identity",
    "translation",
    "rotation",
    "screw",
    "elliptic",
    "parabolic",
    "hyperbolic",
]


class ElementClass(BaseModel):
    """Geometric type of an affine isometry."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: ElementKind
    angle: Any = None
    axis_direction: Optional[PureVector] = None
    axis_point: Optional[PureVector] = None
    shift_vector: Optional[PureVector] = None
    sigma: Any = None
    translation: Optional[PureVector] = None

    def to_json(self) -> dict[str, Any]:
        def vec(value: Optional[PureVector]) -> Optional[list[Any]]:
            return None if value is None else value.to_json()

        return {
            "kind": self.kind,
            "angle": None if self.angle is None else to_json(self.angle),
            "axis_direction": vec(self.axis_direction),
            "axis_point": vec(self.axis_point),
            "shift_vector": vec(self.shift_vector),
            "sigma": None if self.sigma is None else to_json(self.sigma),
            "translation": vec(self.translation),
        }


def _rotation_angle(w: Scalar) -> Scalar:
    if is_exact(w):
        return sympy.simplify(2 * sympy.acos(w))
    return 2 * float(np.arccos(np.clip(float(to_float(w)), -1.0, 1.0)))


def classify_element(e: AffineIsometry, tol: float = DEFAULT_TOLERANCE) -> ElementClass:
    linear = e.linear
    if linear.pure.is_zero(tol):
        if e.v.is_zero(tol):
            return ElementClass(kind="identity")
        return ElementClass(kind="translation", translation=e.v)

    # A and -A give the same map; prefer a non-negative scalar part
    if sign(linear.w, tol) < 0:
        e = AffineIsometry(e.v, -linear, equiform=e.equiform)
    if e.params.is_split:
        return _classify_lorentz_element(e, tol)

    shift = shift_decompose(e, tol)
    if is_zero(linear.w, tol) and sign(shift.sigma, tol) < 0:
        e = AffineIsometry(e.v, -e.linear, equiform=e.equiform)
        shift = shift_decompose(e, tol)

    kind: ElementKind = "rotation" if shift.shift_vector.is_zero(tol) else "screw"
    return ElementClass(
        kind=kind,
        angle=_rotation_angle(e.linear.w),
        axis_direction=e.linear.pure,
        axis_point=shift.axis_point,
        shift_vector=shift.shift_vector,
        sigma=shift.sigma,
    )


def _classify_lorentz_element(e: AffineIsometry, tol: float) -> ElementClass:
    n = e.linear.pure.norm()
    if is_zero(n, 0.0 if e.is_exact else tol):
        return ElementClass(kind="parabolic", axis_direction=e.linear.pure)
    shift = shift_decompose(e, tol)
    if sign(n, tol) > 0:
        return ElementClass(
            kind="elliptic",
            angle=_rotation_angle(e.linear.w),
            axis_direction=e.linear.pure,
            axis_point=shift.axis_point,
            shift_vector=shift.shift_vector,
            sigma=shift.sigma,
        )
    return ElementClass(
        kind="hyperbolic",
        axis_direction=e.linear.pure,
        axis_point=shift.axis_point,
        shift_vector=shift.shift_vector,
        sigma=shift.sigma,
    )
