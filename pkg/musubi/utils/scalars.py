"""Scalar and matrix helpers shared by the float64 and exact backends.

Exact values are SymPy expressions built from rationals and square roots;
float values are Python or NumPy floats and complex numbers. Matrices follow
their entries: a SymPy ``Matrix`` when every entry is exact, a NumPy array
otherwise.
"""

from __future__ import annotations

import cmath
import math
from typing import Any, Iterable, Sequence, Union

import numpy as np
import sympy

Scalar = Union[int, float, complex, sympy.Expr]
Matrix = Union[sympy.MatrixBase, np.ndarray]

DEFAULT_TOLERANCE = 1e-9


def is_exact(*values: Any) -> bool:
    for value in values:
        if isinstance(value, bool):
            return False
        if isinstance(value, (int, np.integer)):
            continue
        if isinstance(value, sympy.Basic) and not value.has(sympy.Float):
            continue
        return False
    return True


def simplify(value: Scalar) -> Scalar:
    if isinstance(value, sympy.Basic):
        return sympy.expand(value)
    return value


def div(numerator: Scalar, denominator: Scalar) -> Scalar:
    """Division that stays exact when both operands are exact."""
    if is_exact(numerator, denominator):
        return simplify(sympy.S(numerator) / denominator)
    return numerator / denominator


def to_float(value: Scalar) -> Union[float, complex]:
    if isinstance(value, sympy.Basic):
        value = complex(sympy.N(value, 30))
    if isinstance(value, complex):
        if value.imag == 0:
            return float(value.real)
        return value
    return float(value)


def is_zero(value: Scalar, tol: float = DEFAULT_TOLERANCE) -> bool:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return value == 0
    if isinstance(value, sympy.Basic):
        if value.has(sympy.Float):
            return abs(complex(sympy.N(value))) <= tol
        expanded = sympy.expand(value)
        if expanded == 0:
            return True
        return sympy.simplify(expanded) == 0 or expanded.equals(0) is True
    return abs(value) <= tol


def sign(value: Scalar, tol: float = DEFAULT_TOLERANCE) -> int:
    """Sign of a real scalar, with zero decided at ``tol``."""
    if is_zero(value, tol):
        return 0
    if isinstance(value, sympy.Basic):
        positive = value.is_positive
        if positive is None:
            positive = float(sympy.re(sympy.N(value, 50))) > 0
        return 1 if positive else -1
    return 1 if value > 0 else -1


def sqrt(value: Scalar) -> Scalar:
    if is_exact(value):
        return sympy.sqrt(value)
    if isinstance(value, complex):
        return cmath.sqrt(value)
    if value < 0:
        return cmath.sqrt(value)
    return math.sqrt(value)


def imag_unit(like: Scalar) -> Scalar:
    return sympy.I if is_exact(like) else 1j


def acos(value: Scalar) -> Scalar:
    if is_exact(value):
        return sympy.simplify(sympy.acos(value))
    return math.acos(max(-1.0, min(1.0, float(to_float(value)))))  # type: ignore[arg-type]


def acosh(value: Scalar) -> Scalar:
    if is_exact(value):
        return sympy.simplify(sympy.acosh(value))
    return math.acosh(max(1.0, float(to_float(value))))  # type: ignore[arg-type]


def matrix(rows: Iterable[Sequence[Scalar]]) -> Matrix:
    materialized = [list(row) for row in rows]
    if all(is_exact(entry) for row in materialized for entry in row):
        return sympy.Matrix(materialized).applyfunc(simplify)
    return np.array([[to_float(entry) for entry in row] for row in materialized])


def identity(size: int, *, exact: bool) -> Matrix:
    return sympy.eye(size) if exact else np.eye(size)


def is_exact_matrix(value: Matrix) -> bool:
    return isinstance(value, sympy.MatrixBase) and all(is_exact(v) for v in value)


def as_array(value: Matrix) -> np.ndarray:
    if isinstance(value, sympy.MatrixBase):
        return np.array(
            [[to_float(value[r, c]) for c in range(value.cols)] for r in range(value.rows)]
        )
    return np.asarray(value)


def matrices_close(left: Matrix, right: Matrix, tol: float = DEFAULT_TOLERANCE) -> bool:
    if is_exact_matrix(left) and is_exact_matrix(right):
        if left.shape != right.shape:
            return False
        return all(is_zero(entry) for entry in (left - right))
    a, b = as_array(left), as_array(right)
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))


def max_abs(values: Iterable[Scalar]) -> float:
    return max((abs(to_float(v)) for v in values), default=0.0)


def to_json(value: Any) -> Any:
    """Encode a scalar for report payloads."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, np.integer)):
        return {"rat": [int(value), 1]}
    if isinstance(value, sympy.Basic) and is_exact(value):
        return _exact_to_json(sympy.expand(value))
    number = to_float(value)
    if isinstance(number, complex):
        return {"re": number.real, "im": number.imag}
    return number


def _exact_to_json(expr: sympy.Expr) -> dict[str, Any]:
    rational = sympy.Integer(0)
    surd = None
    for base, coeff in expr.as_coefficients_dict().items():
        if not coeff.is_Rational:
            return _expr_payload(expr)
        if base == 1:
            rational += coeff
        elif (
            surd is None
            and base.is_Pow
            and base.exp == sympy.S.Half
            and base.base.is_Integer
        ):
            surd = (coeff, int(base.base))
        else:
            return _expr_payload(expr)

    payload: dict[str, Any] = {"rat": [int(rational.p), int(rational.q)]}
    if surd is not None:
        coeff, radicand = surd
        payload["surd"] = {"c": [int(coeff.p), int(coeff.q)], "d": radicand}
    return payload


def _expr_payload(expr: sympy.Expr) -> dict[str, Any]:
    approx = to_float(expr)
    if isinstance(approx, complex):
        return {"expr": str(expr), "approx": {"re": approx.real, "im": approx.imag}}
    return {"expr": str(expr), "approx": approx}


def matrix_to_json(value: Matrix) -> list[list[Any]]:
    if isinstance(value, sympy.MatrixBase):
        return [[to_json(value[r, c]) for c in range(value.cols)] for r in range(value.rows)]
    return [[to_json(entry) for entry in row] for row in np.asarray(value).tolist()]


def parse_scalar(text: str, *, exact: bool) -> Scalar:
    """Parse command-line numbers such as ``0.5``, ``1/2`` or ``sqrt(3)/2``."""
    parsed = sympy.sympify(text, rational=exact)
    if not parsed.is_number:
        raise ValueError(f"not a number: {text!r}")
    if exact:
        return parsed
    return to_float(parsed)
