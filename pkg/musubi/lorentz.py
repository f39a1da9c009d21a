"""Dynamics of affine Lorentz isometries of the split algebra.

Pure quaternions of the split algebra carry Q = -X^2 - Y^2 + Z^2 in the
(X, Y, Z) coordinates, so the positive nullcone component is Z > 0.
"""

from __future__ import annotations

import itertools
import logging
import math
from typing import Any, Literal, Optional

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict

from musubi.affine import AffineIsometry
from musubi.algebra import SPLIT, PureVector, Quaternion, inner, linear_matrix
from musubi.reps import CaseTag, affine_rep, classify
from musubi.utils.errors import (
    EigenvalueCollisionError,
    IdentityClassError,
    NotHyperbolicError,
    UnsupportedAlgebraError,
    UnsupportedCaseError,
)
from musubi.utils.scalars import (
    DEFAULT_TOLERANCE,
    Matrix,
    Scalar,
    as_array,
    div,
    identity,
    is_exact,
    is_exact_matrix,
    is_zero,
    matrices_close,
    sign,
    simplify,
    sqrt,
    to_float,
    to_json,
)
from musubi.words import GroupWord, evaluate

log = logging.getLogger(__name__)

LorentzKind = Literal["elliptic", "parabolic", "hyperbolic"]
Verdict = Literal["not_proper", "inconclusive"]

G2_WORD = GroupWord.parse("a^2")
G3_WORD = GroupWord.parse("a^2 b^2")
SCAN_LETTERS = (GroupWord.parse("a^2"), GroupWord.parse("b^-2"))


def classify_lorentz(a: Quaternion, tol: float = DEFAULT_TOLERANCE) -> LorentzKind:
    if not a.params.is_split:
        raise UnsupportedAlgebraError(f"{a.params.name} is not a Lorentz algebra")
    eps = 0.0 if a.is_exact else tol
    if a.pure.is_zero(eps):
        raise IdentityClassError(f"linear part {a!r} is +-1")
    n = a.pure.norm()
    if is_zero(n, eps):
        return "parabolic"
    return "elliptic" if sign(n, eps) > 0 else "hyperbolic"


class LorentzFrame(BaseModel):
    """Eigen-frame of a hyperbolic element g.

    g x_minus = lam x_minus, g x_plus = x_plus / lam and g x_zero = x_zero,
    with x_minus and x_plus scaled to Z = 1.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    lam: Any
    x_minus: PureVector
    x_plus: PureVector
    x_zero: PureVector

    def orientation(self) -> Scalar:
        rows = [self.x_minus.coords, self.x_plus.coords, self.x_zero.coords]
        if all(is_exact(c) for row in rows for c in row):
            return sympy.simplify(sympy.Matrix(rows).T.det())
        return float(np.linalg.det(np.array([[to_float(c) for c in row] for row in rows]).T))

    def reconstruct(self) -> Matrix:
        """g rebuilt from its eigen-decomposition."""
        columns = [self.x_minus.coords, self.x_plus.coords, self.x_zero.coords]
        lam = self.lam
        if is_exact(lam) and all(is_exact(c) for col in columns for c in col):
            basis = sympy.Matrix(columns).T
            diagonal = sympy.diag(lam, 1 / lam, 1)
            return (basis * diagonal * basis.inv()).applyfunc(sympy.simplify)
        basis = np.array([[to_float(c) for c in col] for col in columns]).T
        lam_f = float(to_float(lam))
        return basis @ np.diag([lam_f, 1 / lam_f, 1.0]) @ np.linalg.inv(basis)

    def to_json(self) -> dict[str, Any]:
        return {
            "lambda": to_json(self.lam),
            "x_minus": [to_json(c) for c in self.x_minus.coords],
            "x_plus": [to_json(c) for c in self.x_plus.coords],
            "x_zero": [to_json(c) for c in self.x_zero.coords],
        }


def _tidy(value: Scalar) -> Scalar:
    if isinstance(value, sympy.Basic) and is_exact(value):
        return sympy.expand(sympy.radsimp(value))
    return value


def _kernel_vector(m: Matrix) -> tuple[Scalar, Scalar, Scalar]:
    """A kernel vector of a rank-2 3x3 matrix, as the largest row cross product."""
    rows = [tuple(m[r, c] for c in range(3)) for r in range(3)]
    best: Optional[tuple[Scalar, Scalar, Scalar]] = None
    best_size = -1.0
    for p, q in itertools.combinations(rows, 2):
        cross = (
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        )
        size = sum(abs(to_float(c)) for c in cross)
        if size > best_size:
            best, best_size = cross, size
    assert best is not None
    return best


def eigen_frame(g: Matrix, tol: float = DEFAULT_TOLERANCE) -> LorentzFrame:
    exact = is_exact_matrix(g)
    eps = 0.0 if exact else tol
    if matrices_close(g, identity(3, exact=exact), eps):
        raise NotHyperbolicError("identity has no eigen-frame")

    # eigenvalues are lam, 1 and 1/lam, so lam + 1/lam = trace - 1
    t = simplify(g[0, 0] + g[1, 1] + g[2, 2] - 1)
    gap = sign(t - 2, eps)
    if gap == 0:
        raise EigenvalueCollisionError(f"trace {t + 1} gives a repeated eigenvalue")
    if gap < 0:
        raise NotHyperbolicError(f"trace {t + 1} is not that of a hyperbolic element")

    inv_lam = _tidy(div(t + sqrt(t**2 - 4), 2))
    # t - sqrt(t**2 - 4) cancels to nothing in float64 once t is large
    lam = _tidy(div(t - sqrt(t**2 - 4), 2)) if exact else 1 / inv_lam
    one = identity(3, exact=exact)

    def null_eigenvector(value: Scalar) -> list[Scalar]:
        shifted = g - one * value
        vector = _kernel_vector(shifted)
        z = vector[2]
        if is_zero(z, eps):
            raise NotHyperbolicError("null eigenvector has no Z component")
        return [_tidy(div(c, z)) for c in vector]

    x_minus = null_eigenvector(lam)
    x_plus = null_eigenvector(inv_lam)
    fixed = list(_kernel_vector(g - one))

    x0 = PureVector.from_coords(*fixed, params=SPLIT)
    q = x0.norm()
    if sign(q, eps) >= 0:
        raise NotHyperbolicError("fixed direction is not spacelike")
    scale = sqrt(-q)
    zero_coords = [_tidy(div(c, scale)) for c in fixed]

    frame = LorentzFrame(
        lam=lam,
        x_minus=PureVector.from_coords(*x_minus, params=SPLIT),
        x_plus=PureVector.from_coords(*x_plus, params=SPLIT),
        x_zero=PureVector.from_coords(*zero_coords, params=SPLIT),
    )
    if sign(frame.orientation(), eps) < 0:
        frame = frame.model_copy(update={"x_zero": -frame.x_zero})
    log.debug("eigen-frame lambda=%s x0=%r", lam, frame.x_zero)
    return frame


def _require_hyperbolic(phi: AffineIsometry, tol: float) -> None:
    eps = 0.0 if phi.is_exact else tol
    if not phi.params.is_split:
        raise UnsupportedAlgebraError(f"{phi.params.name} is not a Lorentz algebra")
    if phi.linear.pure.is_zero(eps):
        raise NotHyperbolicError("linear part is +-1")
    kind = classify_lorentz(phi.linear, tol)
    if kind != "hyperbolic":
        raise NotHyperbolicError(f"linear part is {kind}")


def margulis_alpha(
    phi: AffineIsometry,
    probe: Optional[PureVector] = None,
    *,
    tol: float = DEFAULT_TOLERANCE,
) -> Scalar:
    """Q(x0, phi(p) - p) for the neutral eigenvector x0 of the linear part."""
    _require_hyperbolic(phi, tol)
    frame = eigen_frame(linear_matrix(phi.linear), tol)
    p = probe if probe is not None else PureVector.zero(phi.params)
    return _tidy(inner(frame.x_zero, phi.act(p) - p))


def probe_spread(
    phi: AffineIsometry, count: int, *, seed: int = 3, tol: float = DEFAULT_TOLERANCE
) -> float:
    """Variance of alpha over random base points; zero up to rounding."""
    rng = np.random.default_rng(seed)
    values = []
    for coords in rng.uniform(-5.0, 5.0, size=(count, 3)):
        probe = PureVector.from_coords(*coords.tolist(), params=phi.params)
        values.append(float(to_float(margulis_alpha(phi, probe, tol=tol))))
    return float(np.var(values))


def margulis_alpha_quaternion(phi: AffineIsometry, tol: float = DEFAULT_TOLERANCE) -> Scalar:
    """sign(G+) <G-, v> / sqrt(-N(G-)) for phi = (v, G)."""
    _require_hyperbolic(phi, tol)
    g = phi.linear
    scale = sqrt(-g.pure.norm())
    return _tidy(sign(g.w, tol) * div(inner(g.pure, phi.v), scale))


class MargulisReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    word: str
    alpha: Any
    frame: LorentzFrame

    def to_json(self) -> dict[str, Any]:
        return {"word": self.word, "alpha": to_json(self.alpha), "frame": self.frame.to_json()}


def margulis_report(x: Scalar, w: GroupWord, tol: float = DEFAULT_TOLERANCE) -> MargulisReport:
    rho_a, rho_b = affine_rep(x, tol)
    phi = evaluate(w, rho_a, rho_b)
    _require_hyperbolic(phi, tol)
    frame = eigen_frame(linear_matrix(phi.linear), tol)
    alpha = _tidy(inner(frame.x_zero, phi.v))
    return MargulisReport(word=str(w), alpha=alpha, frame=frame)


def _check_beyond_one(x: Scalar, tol: float) -> None:
    if sign(x - 1, 0.0 if is_exact(x) else tol) <= 0:
        raise UnsupportedCaseError(f"closed form needs x > 1, got {x}")


def alpha_g2_closed_form(
    x: Scalar, *, continuation: bool = False, tol: float = DEFAULT_TOLERANCE
) -> Scalar:
    """-(3 - 4x^2) sqrt(x^2 - 1) / (2x), the invariant of rho(a^2).

    With ``continuation`` the formula is evaluated for any nonzero x.
    """
    if not continuation:
        _check_beyond_one(x, tol)
    factor = simplify(3 - 4 * x**2)
    if is_zero(factor, 0.0 if is_exact(x) else tol):
        return 0
    return simplify(-div(factor * sqrt(x**2 - 1), 2 * x))


def alpha_g3_closed_form(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> Scalar:
    """The published closed form for rho(a^2 b^2).

    Kept as a diagnostic: it disagrees with margulis_alpha, which gives the
    same value as for a^2.
    """
    _check_beyond_one(x, tol)
    root = sqrt(x**2 - 1)
    inner_poly = 9 + 4 * x**2 * (-21 + 63 * x**2 - 76 * x**4 + 32 * x**6)
    numerator = 3 + x**2 * (-1 - 22 * x**2 + 36 * x**4 - 16 * x**6 - 8 * x * root * inner_poly)
    return simplify(div(numerator, 8 * x * sqrt((x**2 - 1) ** 5)))


class FixedLine(BaseModel):
    """The affine line {point + t * direction}."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    point: PureVector
    direction: PureVector

    def at(self, t: Scalar) -> PureVector:
        return self.point + self.direction * t

    def to_json(self) -> dict[str, Any]:
        return {
            "point": [to_json(c) for c in self.point.coords],
            "direction": [to_json(c) for c in self.direction.coords],
        }


def parabolic_fixed_line(
    phi: AffineIsometry, tol: float = DEFAULT_TOLERANCE
) -> Optional[FixedLine]:
    kind = classify_lorentz(phi.linear, tol)
    if kind != "parabolic":
        raise UnsupportedCaseError(f"fixed lines are computed for parabolics, got {kind}")

    m = linear_matrix(phi.linear)
    rhs = [-c for c in phi.v.coords]
    params = phi.params

    if phi.is_exact and is_exact_matrix(m):
        system = m - sympy.eye(3)
        try:
            solution, free = system.gauss_jordan_solve(sympy.Matrix(rhs))
        except ValueError:
            return None
        if free.shape[0] != 1:
            return None
        tau = free[0]
        point = solution.subs(tau, 0)
        direction = solution.subs(tau, 1) - point
        return FixedLine(
            point=PureVector.from_coords(*point, params=params),
            direction=PureVector.from_coords(*direction, params=params),
        )

    system = as_array(m) - np.eye(3)
    target = np.array([float(to_float(c)) for c in rhs])
    solution, *_ = np.linalg.lstsq(system, target, rcond=None)
    if np.max(np.abs(system @ solution - target)) > max(tol, 1e-9):
        return None
    _, singular, vt = np.linalg.svd(system)
    kernel = [row for value, row in zip(singular, vt) if value <= max(tol, 1e-9)]
    if len(kernel) != 1:
        return None
    return FixedLine(
        point=PureVector.from_coords(*solution.tolist(), params=params),
        direction=PureVector.from_coords(*kernel[0].tolist(), params=params),
    )


class Witness(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    word: str
    alpha: Any

    def to_json(self) -> list[Any]:
        return [self.word, to_json(self.alpha)]


class PropernessVerdict(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: Any
    verdict: Verdict
    reason: str
    witness_positive: Optional[Witness] = None
    witness_negative: Optional[Witness] = None
    witnesses: list[Witness] = []
    scanned: list[Witness] = []
    fixed_line: Optional[FixedLine] = None
    diagnostics: dict[str, Any] = {}

    def to_json(self) -> dict[str, Any]:
        return {
            "x": to_json(self.x),
            "verdict": self.verdict,
            "reason": self.reason,
            "witness_positive": None if self.witness_positive is None else self.witness_positive.to_json(),
            "witness_negative": None if self.witness_negative is None else self.witness_negative.to_json(),
            "witnesses": [w.to_json() for w in self.witnesses],
            "scanned": [w.to_json() for w in self.scanned],
            "fixed_line": None if self.fixed_line is None else self.fixed_line.to_json(),
            "diagnostics": {k: to_json(v) for k, v in self.diagnostics.items()},
        }


def scan_words(depth: int) -> list[GroupWord]:
    """Nonempty positive words in a^2 and b^-2 of at most ``depth`` letters."""
    words = []
    for length in range(1, depth + 1):
        for letters in itertools.product(SCAN_LETTERS, repeat=length):
            combined = GroupWord()
            for letter in letters:
                combined = combined * letter
            words.append(combined)
    return words


def mess_order(x: Scalar, tol: float = DEFAULT_TOLERANCE) -> Optional[int]:
    """n when x = cos(pi/n) for an integer n >= 7."""
    if is_exact(x):
        ratio = sympy.simplify(sympy.pi / sympy.acos(x))
        if ratio.is_Integer and ratio >= 7:
            return int(ratio)
        return None
    value = float(to_float(x))
    if not 0.0 < value < 1.0:
        return None
    n = round(math.pi / math.acos(value))
    if n >= 7 and abs(math.cos(math.pi / n) - value) <= tol:
        return n
    return None


def properness_verdict(
    x: Scalar, *, depth: int = 3, tol: float = DEFAULT_TOLERANCE
) -> PropernessVerdict:
    """Search for a certificate that the affine image of the trefoil group is not proper.

    The Margulis route works in float64 whatever the input backend: it only
    compares signs.
    """
    case = classify(x, tol)

    if case is CaseTag.parabolic:
        rho_a, _ = affine_rep(x, tol)
        line = parabolic_fixed_line(rho_a, tol)
        if line is not None:
            return PropernessVerdict(
                x=x, verdict="not_proper", reason="fixed line of rho(a)", fixed_line=line
            )
        return PropernessVerdict(x=x, verdict="inconclusive", reason="no fixed line")

    if case is CaseTag.elliptic_lorentz:
        n = mess_order(x, tol)
        if n is not None:
            return PropernessVerdict(
                x=x,
                verdict="not_proper",
                reason="Mess (cocompact linear quotient)",
                diagnostics={"n": n},
            )
        return PropernessVerdict(x=x, verdict="inconclusive", reason="elliptic linear parts")

    if case is not CaseTag.hyperbolic:
        return PropernessVerdict(x=x, verdict="inconclusive", reason="Euclidean linear parts")

    x_float = float(to_float(x))
    rho_a, rho_b = affine_rep(x_float, tol)

    # eigen_frame squares the coefficients, the quaternion form does not
    def alpha_of(w: GroupWord) -> Witness:
        phi = evaluate(w, rho_a, rho_b)
        return Witness(word=str(w), alpha=float(to_float(margulis_alpha_quaternion(phi, tol))))

    witnesses = [alpha_of(G2_WORD), alpha_of(G3_WORD)]
    scanned = [alpha_of(w) for w in scan_words(depth)]
    candidates = witnesses + scanned
    positive = next((w for w in candidates if w.alpha > tol), None)
    negative = next((w for w in candidates if w.alpha < -tol), None)

    diagnostics: dict[str, Any] = {}
    if x_float > 1:
        diagnostics["alpha_g2_closed_form"] = float(to_float(alpha_g2_closed_form(x_float)))
        diagnostics["alpha_g3_closed_form"] = float(to_float(alpha_g3_closed_form(x_float)))

    if positive is not None and negative is not None:
        verdict: Verdict = "not_proper"
        reason = "margulis invariants of opposite sign"
    else:
        verdict = "inconclusive"
        reason = "margulis invariants share a sign on every scanned word"
    log.info("properness at x=%s: %s", x, verdict)
    return PropernessVerdict(
        x=x,
        verdict=verdict,
        reason=reason,
        witness_positive=positive,
        witness_negative=negative,
        witnesses=witnesses,
        scanned=scanned,
        diagnostics=diagnostics,
    )
