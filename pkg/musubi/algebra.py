"""Arithmetic of the quaternion algebra (mu, nu / k).

The algebra has basis 1, i, j, ij with i^2 = mu, j^2 = nu and ij = -ji.
Pure quaternions are also read in the coordinate basis {-ij, j, i}, written
(X, Y, Z); every 3x3 and 4x4 matrix in musubi uses that ordering. With it
the norm form on pure quaternions is X^2 + Y^2 + Z^2 for Hamilton and
-X^2 - Y^2 + Z^2 for Split, so Z is the timelike direction.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Union

from typing_extensions import Self

from musubi.utils.errors import (
    IncompatibleAlgebraError,
    NonUnitError,
    UnsupportedAlgebraError,
)
from musubi.utils.scalars import (
    DEFAULT_TOLERANCE,
    Matrix,
    Scalar,
    div,
    is_exact,
    is_zero,
    matrix,
    simplify,
    to_float,
    to_json,
)


class Field(str, Enum):
    real = "real"
    complex = "complex"


class AlgebraParams:
    __slots__ = ("mu", "nu", "field")

    def __init__(self, mu: Scalar, nu: Scalar, field: Field = Field.real) -> None:
        if is_zero(mu, 0.0) or is_zero(nu, 0.0):
            raise UnsupportedAlgebraError("mu and nu must be nonzero")
        self.mu: Scalar = mu
        self.nu: Scalar = nu
        self.field: Field = field

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraParams):
            return NotImplemented
        return (
            self.field is other.field
            and is_zero(self.mu - other.mu, 0.0)
            and is_zero(self.nu - other.nu, 0.0)
        )

    def __hash__(self) -> int:
        return hash((str(self.mu), str(self.nu), self.field))

    def __repr__(self) -> str:
        return f"AlgebraParams(mu={self.mu}, nu={self.nu}, field={self.field.value})"

    @property
    def name(self) -> str:
        for name, params in NAMED_ALGEBRAS.items():
            if params == self:
                return name
        return f"({self.mu},{self.nu})"

    @property
    def is_split(self) -> bool:
        return is_zero(self.mu + 1, 0.0) and is_zero(self.nu - 1, 0.0)


HAMILTON = AlgebraParams(-1, -1)
SPLIT = AlgebraParams(-1, 1)
COMPLEX_SPLIT = AlgebraParams(-1, 1, Field.complex)

NAMED_ALGEBRAS: dict[str, AlgebraParams] = {
    "Hamilton": HAMILTON,
    "Split": SPLIT,
    "ComplexSplit": COMPLEX_SPLIT,
}


def _check_same(left: AlgebraParams, right: AlgebraParams) -> None:
    if left != right:
        raise IncompatibleAlgebraError(f"cannot combine {left.name} with {right.name}")


class PureVector:
    """An element of H0, stored by its i, j and ij coefficients."""

    __slots__ = ("i", "j", "ij", "params")

    def __init__(
        self, i: Scalar = 0, j: Scalar = 0, ij: Scalar = 0, *, params: AlgebraParams
    ) -> None:
        self.i: Scalar = simplify(i)
        self.j: Scalar = simplify(j)
        self.ij: Scalar = simplify(ij)
        self.params: AlgebraParams = params

    @classmethod
    def from_coords(
        cls, x: Scalar, y: Scalar, z: Scalar, *, params: AlgebraParams
    ) -> Self:
        return cls(i=z, j=y, ij=-x, params=params)

    @classmethod
    def zero(cls, params: AlgebraParams) -> Self:
        return cls(params=params)

    @property
    def coords(self) -> tuple[Scalar, Scalar, Scalar]:
        return (simplify(-self.ij), self.j, self.i)

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0, self.i, self.j, self.ij, params=self.params)

    def __add__(self, other: PureVector) -> PureVector:
        _check_same(self.params, other.params)
        return PureVector(
            self.i + other.i, self.j + other.j, self.ij + other.ij, params=self.params
        )

    def __sub__(self, other: PureVector) -> PureVector:
        return self + (-other)

    def __neg__(self) -> PureVector:
        return PureVector(-self.i, -self.j, -self.ij, params=self.params)

    def __mul__(self, scalar: Scalar) -> PureVector:
        return PureVector(
            self.i * scalar, self.j * scalar, self.ij * scalar, params=self.params
        )

    __rmul__ = __mul__

    def norm(self) -> Scalar:
        return norm(self.as_quaternion())

    def inner(self, other: PureVector) -> Scalar:
        return inner(self, other)

    def is_zero(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return all(is_zero(c, tol) for c in (self.i, self.j, self.ij))

    def is_close(self, other: PureVector, tol: float = DEFAULT_TOLERANCE) -> bool:
        return (self - other).is_zero(tol)

    @property
    def is_exact(self) -> bool:
        return is_exact(self.i, self.j, self.ij)

    def to_json(self) -> list[Any]:
        return [to_json(c) for c in self.coords]

    def __repr__(self) -> str:
        return f"PureVector(i={self.i}, j={self.j}, ij={self.ij})"


class Quaternion:
    __slots__ = ("w", "i", "j", "ij", "params")

    def __init__(
        self,
        w: Scalar = 0,
        i: Scalar = 0,
        j: Scalar = 0,
        ij: Scalar = 0,
        *,
        params: AlgebraParams = HAMILTON,
    ) -> None:
        self.w: Scalar = simplify(w)
        self.i: Scalar = simplify(i)
        self.j: Scalar = simplify(j)
        self.ij: Scalar = simplify(ij)
        self.params: AlgebraParams = params

    @classmethod
    def one(cls, params: AlgebraParams = HAMILTON) -> Self:
        return cls(1, params=params)

    @classmethod
    def from_parts(cls, scalar: Scalar, pure: PureVector) -> Self:
        return cls(scalar, pure.i, pure.j, pure.ij, params=pure.params)

    def identity(self) -> Quaternion:
        return Quaternion.one(self.params)

    @property
    def scalar(self) -> Scalar:
        """The scalar part A+."""
        return self.w

    @property
    def pure(self) -> PureVector:
        """The pure part A-."""
        return PureVector(self.i, self.j, self.ij, params=self.params)

    @property
    def coefficients(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.w, self.i, self.j, self.ij)

    @property
    def is_exact(self) -> bool:
        return is_exact(*self.coefficients)

    def __add__(self, other: Union[Quaternion, Scalar]) -> Quaternion:
        if not isinstance(other, Quaternion):
            return Quaternion(self.w + other, self.i, self.j, self.ij, params=self.params)
        _check_same(self.params, other.params)
        return Quaternion(
            *(a + b for a, b in zip(self.coefficients, other.coefficients)),
            params=self.params,
        )

    __radd__ = __add__

    def __neg__(self) -> Quaternion:
        return Quaternion(*(-c for c in self.coefficients), params=self.params)

    def __sub__(self, other: Union[Quaternion, Scalar]) -> Quaternion:
        return self + (-other)

    def __mul__(self, other: Union[Quaternion, Scalar]) -> Quaternion:
        if isinstance(other, Quaternion):
            return mul(self, other)
        return Quaternion(*(c * other for c in self.coefficients), params=self.params)

    def __rmul__(self, other: Scalar) -> Quaternion:
        return self * other

    def __truediv__(self, other: Scalar) -> Quaternion:
        return Quaternion(*(div(c, other) for c in self.coefficients), params=self.params)

    def __pow__(self, exponent: int) -> Quaternion:
        base = self if exponent >= 0 else self.inverse()
        result = self.identity()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.params == other.params and all(
            is_zero(a - b, 0.0) for a, b in zip(self.coefficients, other.coefficients)
        )

    __hash__ = None  # type: ignore[assignment]

    def conjugate(self) -> Quaternion:
        return conjugate(self)

    def trace(self) -> Scalar:
        return trace(self)

    def norm(self) -> Scalar:
        return norm(self)

    def inverse(self) -> Quaternion:
        n = self.norm()
        if is_zero(n, 0.0):
            raise NonUnitError("quaternion has zero norm and no inverse")
        return self.conjugate() / n

    def magnitude(self) -> float:
        """Largest absolute coefficient."""
        return max(abs(to_float(c)) for c in self.coefficients)

    def is_unit(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        if self.is_exact:
            return is_zero(self.norm() - 1, 0.0)
        # split-algebra units have unbounded coefficients; N = 1 only holds to
        # within rounding of their squares
        return is_zero(self.norm() - 1, tol * max(1.0, self.magnitude()) ** 2)

    def is_close(self, other: Quaternion, tol: float = DEFAULT_TOLERANCE) -> bool:
        _check_same(self.params, other.params)
        return all(is_zero(a - b, tol) for a, b in zip(self.coefficients, other.coefficients))

    def to_json(self) -> dict[str, Any]:
        return {
            "w": to_json(self.w),
            "i": to_json(self.i),
            "j": to_json(self.j),
            "ij": to_json(self.ij),
            "mu": to_json(self.params.mu),
            "nu": to_json(self.params.nu),
        }

    def __repr__(self) -> str:
        return (
            f"Quaternion({self.w}, {self.i}, {self.j}, {self.ij}, "
            f"params={self.params.name})"
        )


def mul(left: Quaternion, right: Quaternion) -> Quaternion:
    _check_same(left.params, right.params)
    mu, nu = left.params.mu, left.params.nu
    a0, a1, a2, a3 = left.coefficients
    b0, b1, b2, b3 = right.coefficients
    return Quaternion(
        a0 * b0 + mu * a1 * b1 + nu * a2 * b2 - mu * nu * a3 * b3,
        a0 * b1 + a1 * b0 + nu * (a3 * b2 - a2 * b3),
        a0 * b2 + a2 * b0 + mu * (a1 * b3 - a3 * b1),
        a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
        params=left.params,
    )


def conjugate(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.i, -q.j, -q.ij, params=q.params)


def trace(q: Quaternion) -> Scalar:
    return simplify(2 * q.w)


def norm(q: Quaternion) -> Scalar:
    mu, nu = q.params.mu, q.params.nu
    return simplify(q.w**2 - mu * q.i**2 - nu * q.j**2 + mu * nu * q.ij**2)


def inner(p: PureVector, q: PureVector) -> Scalar:
    """Polar form of the norm on H0, equal to -(PQ)+."""
    return simplify(-mul(p.as_quaternion(), q.as_quaternion()).w)


def to_matrix2(q: Quaternion) -> Matrix:
    """2x2 model of the split algebra (-1, 1 / k).

    i -> [[0, 1], [-1, 0]], j -> [[0, 1], [1, 0]], ij -> diag(1, -1), so
    that trace and determinant are the quaternion trace and norm.
    """
    if not q.params.is_split:
        raise UnsupportedAlgebraError(f"{q.params.name} has no 2x2 matrix model")
    return matrix(
        [
            [q.w + q.ij, q.i + q.j],
            [q.j - q.i, q.w - q.ij],
        ]
    )


def from_matrix2(m: Matrix, params: AlgebraParams = SPLIT) -> Quaternion:
    if not params.is_split:
        raise UnsupportedAlgebraError(f"{params.name} has no 2x2 matrix model")
    p, q, r, s = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    return Quaternion(
        div(p + s, 2), div(q - r, 2), div(q + r, 2), div(p - s, 2), params=params
    )


def sandwich(a: Quaternion, p: PureVector) -> PureVector:
    """A P conj(A) without the unit check; scales the form by N(A)."""
    return mul(mul(a, p.as_quaternion()), conjugate(a)).pure


def conj_action(
    a: Quaternion, p: PureVector, tol: float = DEFAULT_TOLERANCE
) -> PureVector:
    if not a.is_unit(tol):
        raise NonUnitError(f"conjugation action needs a unit, got norm {a.norm()}")
    return sandwich(a, p)


def coordinate_basis(params: AlgebraParams) -> tuple[PureVector, PureVector, PureVector]:
    return (
        PureVector.from_coords(1, 0, 0, params=params),
        PureVector.from_coords(0, 1, 0, params=params),
        PureVector.from_coords(0, 0, 1, params=params),
    )


def linear_matrix(a: Quaternion) -> Matrix:
    columns = [sandwich(a, e).coords for e in coordinate_basis(a.params)]
    return matrix([[columns[c][r] for c in range(3)] for r in range(3)])


def so3_matrix(a: Quaternion, tol: float = DEFAULT_TOLERANCE) -> Matrix:
    """Matrix of the conjugation action in the basis {-ij, j, i}."""
    if not a.is_unit(tol):
        raise NonUnitError(f"expected a unit quaternion, got norm {a.norm()}")
    return linear_matrix(a)


def form_matrix(params: AlgebraParams) -> Matrix:
    """Gram matrix of the norm form in (X, Y, Z) coordinates."""
    e = coordinate_basis(params)
    return matrix([[inner(e[r], e[c]) for c in range(3)] for r in range(3)])
