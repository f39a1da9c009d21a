"""Euclidean crystallographic quotients of the trefoil group.

Three groups are generated by an element of order two and one of order
three: P6_1, I2_13 and P4_132. Each ships with exact generators and a list
of facts that ``CrystalGroupData.verify`` checks without tolerances.
"""

from __future__ import annotations

import itertools
import logging
import math
from functools import reduce
from typing import Any, Callable, Optional, Sequence, Union

import sympy
from pydantic import BaseModel, ConfigDict
from sympy.combinatorics import Permutation, PermutationGroup

from musubi.affine import AffineIsometry, ElementClass, classify_element
from musubi.algebra import HAMILTON, PureVector, inner, linear_matrix
from musubi.reps import (
    CaseTag,
    affine_rep,
    axis_distance,
    linear_rep,
    relative_gap,
    sample_points,
)
from musubi.utils.errors import (
    NoAffineDeformationError,
    TrivialDeformationError,
    VerificationFailure,
)
from musubi.utils.scalars import (
    DEFAULT_TOLERANCE,
    Matrix,
    Scalar,
    div,
    is_zero,
    matrix,
    sqrt,
    to_json,
)
from musubi.words import LONGITUDE, GroupWord, evaluate, word

log = logging.getLogger(__name__)

_R = sympy.Rational
_S3 = sympy.sqrt(3)


def _vec(x: Scalar, y: Scalar, z: Scalar) -> PureVector:
    return PureVector.from_coords(x, y, z, params=HAMILTON)


def isometry(rows: Sequence[Sequence[Scalar]]) -> AffineIsometry:
    """Exact Euclidean isometry from the top three rows of a 4x4 matrix."""
    m = sympy.Matrix([list(r) for r in rows] + [[0, 0, 0, 1]])
    return AffineIsometry.from_matrix4(m)


def classify_matrix(rows: Sequence[Sequence[Any]]) -> ElementClass:
    m = matrix([list(r) for r in rows][:3] + [[0, 0, 0, 1]])
    return classify_element(AffineIsometry.from_matrix4(m))


class ExpectedElement(BaseModel):
    """What a sample element must classify as.

    Unset geometric fields are not checked. ``axis_point`` may be any point
    of the expected axis.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: str
    angle: Any = None
    axis_direction: Optional[tuple[Any, Any, Any]] = None
    axis_point: Optional[tuple[Any, Any, Any]] = None
    shift: Optional[tuple[Any, Any, Any]] = None
    translation: Optional[tuple[Any, Any, Any]] = None


class FactResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


class CrystalReport(BaseModel):
    name: str
    facts: list[FactResult]

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.facts)

    def to_json(self) -> dict[str, Any]:
        return {"group": self.name, "passed": self.passed, "facts": [f.to_json() for f in self.facts]}


class Similarity(BaseModel):
    """p -> scale * rotation * p + translation."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    scale: Any
    rotation: Any
    translation: Any

    def matrix4(self) -> Matrix:
        top = (self.rotation * self.scale).row_join(self.translation)
        return top.col_join(sympy.Matrix([[0, 0, 0, 1]]))

    def conjugate(self, e: AffineIsometry) -> AffineIsometry:
        s = self.matrix4()
        result = (s * e.matrix4() * s.inv()).applyfunc(sympy.simplify)
        return AffineIsometry.from_matrix4(result)

    def to_json(self) -> dict[str, Any]:
        return {
            "scale": to_json(self.scale),
            "rotation": [[to_json(v) for v in self.rotation.row(r)] for r in range(3)],
            "translation": [to_json(v) for v in self.translation],
        }


Check = Callable[["CrystalGroupData"], bool]


class CrystalGroupData(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    gen_a: AffineIsometry
    gen_b: AffineIsometry
    lattice_words: list[str]
    sample_elements: dict[str, ExpectedElement]
    point_group_order: int
    longitude_trivial: bool
    covolume: Any = None
    similarity: Optional[Similarity] = None
    checks: dict[str, Check] = {}
    notes: list[str] = []

    def element(self, w: str) -> AffineIsometry:
        return evaluate(word(w), self.gen_a, self.gen_b)

    def verify(self, *, strict: bool = False) -> CrystalReport:
        """Check every fact; with ``strict`` the first failure raises."""
        facts: list[FactResult] = []

        def record(name: str, passed: bool, detail: str = "") -> None:
            facts.append(FactResult(name=name, passed=passed, detail=detail))
            if strict and not passed:
                raise VerificationFailure(f"{self.name}: {name} failed {detail}".strip(), fact=name)

        record("braid relation", self.element("aba").same_map(self.element("bab"), 0.0))

        for w, expected in self.sample_elements.items():
            computed = classify_element(self.element(w))
            passed, detail = _matches(computed, expected)
            record(f"{w} is {expected.kind}", passed, detail)

        identity = self.gen_a.identity()
        killed = self.element(str(LONGITUDE)).same_map(identity, 0.0)
        record(
            "longitude a^-4 b a a b is trivial" if self.longitude_trivial else "longitude survives",
            killed == self.longitude_trivial,
        )

        group = point_group([linear_matrix(self.gen_a.linear), linear_matrix(self.gen_b.linear)])
        record(
            f"point group has order {self.point_group_order}",
            len(group) == self.point_group_order,
            f"found {len(group)}",
        )

        translations = []
        for w in self.lattice_words:
            e = self.element(w)
            pure = e.linear.pure.is_zero(0.0) and not e.v.is_zero(0.0)
            record(f"{w} is a lattice translation", pure)
            if pure:
                translations.append(e.v)

        lattice = translation_orbit(translations, group)
        rank = lattice_rank(lattice)
        record("translation lattice has full rank", rank == 3, f"rank {rank}")
        if self.covolume is not None:
            found = lattice_covolume(lattice)
            record(
                f"lattice covolume is {self.covolume}",
                found is not None and is_zero(found - self.covolume),
                f"found {found}",
            )

        for name, check in self.checks.items():
            record(name, bool(check(self)))

        log.info("%s: %d facts checked", self.name, len(facts))
        return CrystalReport(name=self.name, facts=facts)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "A": [[to_json(v) for v in row] for row in self.gen_a.matrix4().tolist()],
            "B": [[to_json(v) for v in row] for row in self.gen_b.matrix4().tolist()],
            "similarity": None if self.similarity is None else self.similarity.to_json(),
            "notes": self.notes,
        }


def _same_vector(left: PureVector, right: tuple[Any, Any, Any]) -> bool:
    return all(is_zero(a - b) for a, b in zip(left.coords, right))


def _parallel(left: Sequence[Any], right: Sequence[Any]) -> bool:
    cross = (
        left[1] * right[2] - left[2] * right[1],
        left[2] * right[0] - left[0] * right[2],
        left[0] * right[1] - left[1] * right[0],
    )
    return all(is_zero(c) for c in cross)


def _matches(computed: ElementClass, expected: ExpectedElement) -> tuple[bool, str]:
    if computed.kind != expected.kind:
        return False, f"classified as {computed.kind}"
    if expected.translation is not None:
        assert computed.translation is not None
        if not _same_vector(computed.translation, expected.translation):
            return False, f"translation {computed.translation.coords}"
    if expected.angle is not None and not is_zero(computed.angle - expected.angle):
        return False, f"angle {computed.angle}"
    if expected.shift is not None:
        assert computed.shift_vector is not None
        if not _same_vector(computed.shift_vector, expected.shift):
            return False, f"shift {computed.shift_vector.coords}"
    if expected.axis_direction is not None:
        assert computed.axis_direction is not None
        direction = computed.axis_direction.coords
        if not _parallel(direction, expected.axis_direction):
            return False, f"axis direction {direction}"
        half_turn = expected.angle is not None and is_zero(expected.angle - sympy.pi)
        same_way = sum(a * b for a, b in zip(direction, expected.axis_direction))
        if not half_turn and not sympy.simplify(same_way) > 0:
            return False, "axis orientation reversed"
        if expected.axis_point is not None:
            assert computed.axis_point is not None
            offset = [a - b for a, b in zip(computed.axis_point.coords, expected.axis_point)]
            if not _parallel(offset, expected.axis_direction):
                return False, f"axis through {computed.axis_point.coords}"
    return True, ""


def point_group(generators: Sequence[Matrix], limit: int = 48) -> list[Matrix]:
    """Closure of a set of exact 3x3 matrices under multiplication."""

    def key(m: Matrix) -> tuple[Any, ...]:
        return tuple(sympy.nsimplify(sympy.simplify(v)) for v in m)

    elements = {key(sympy.eye(3)): sympy.eye(3)}
    frontier = [sympy.eye(3)]
    while frontier:
        current = frontier.pop()
        for g in generators:
            product = (current * g).applyfunc(sympy.simplify)
            k = key(product)
            if k not in elements:
                elements[k] = product
                frontier.append(product)
                if len(elements) > limit:
                    raise VerificationFailure("linear parts generate an infinite group")
    return list(elements.values())


def translation_orbit(vectors: Sequence[PureVector], group: Sequence[Matrix]) -> list[list[Any]]:
    orbit = []
    for v in vectors:
        column = sympy.Matrix(v.coords)
        for g in group:
            orbit.append([sympy.simplify(c) for c in g * column])
    return orbit


def lattice_rank(vectors: Sequence[Sequence[Any]]) -> int:
    return sympy.Matrix(vectors).rank(simplify=True)


def lattice_covolume(vectors: Sequence[Sequence[Any]]) -> Optional[Scalar]:
    """Covolume of the lattice generated by rational vectors, else None.

    The gcd of the maximal minors of an integer generating set is the
    covolume of the lattice it spans.
    """
    values = [sympy.nsimplify(c) for row in vectors for c in row]
    if not all(v.is_Rational for v in values):
        return None
    denominator = reduce(math.lcm, (int(v.q) for v in values), 1)
    scaled = [[int(sympy.nsimplify(c) * denominator) for c in row] for row in vectors]
    g = 0
    for rows in itertools.combinations(scaled, 3):
        g = math.gcd(g, abs(int(sympy.Matrix(rows).det())))
    if g == 0:
        return None
    return _R(g, denominator**3)


def p61_data() -> CrystalGroupData:
    half, root = _R(1, 2), _S3 / 2
    a = isometry([[half, -root, 0, 0], [root, half, 0, 0], [0, 0, 1, _R(1, 6)]])
    b = isometry([[half, -root, 0, _R(3, 2)], [root, half, 0, -root], [0, 0, 1, _R(1, 6)]])
    z = (0, 0, 1)
    elements = {
        "a": ExpectedElement(kind="screw", angle=sympy.pi / 3, axis_direction=z, axis_point=(0, 0, 0), shift=(0, 0, _R(1, 6))),
        "a^6": ExpectedElement(kind="translation", translation=(0, 0, 1)),
        "b^6": ExpectedElement(kind="translation", translation=(0, 0, 1)),
        "aba": ExpectedElement(
            kind="screw", angle=sympy.pi, axis_direction=z, axis_point=(_R(3, 4), _S3 / 4, 0), shift=(0, 0, half)
        ),
        "abaaba": ExpectedElement(kind="translation", translation=(0, 0, 1)),
        "ab": ExpectedElement(
            kind="screw", angle=2 * sympy.pi / 3, axis_direction=z, axis_point=(half, root, 0), shift=(0, 0, _R(1, 3))
        ),
        "bA": ExpectedElement(kind="translation", translation=(_R(3, 2), -root, 0)),
        "a^-4 b a a b": ExpectedElement(kind="identity"),
    }
    checks: dict[str, Check] = {
        "ABA matches the displayed matrix": lambda d: _same_map_rows(
            d.element("aba"), [[-1, 0, 0, _R(3, 2)], [0, -1, 0, root], [0, 0, 1, half]]
        ),
        "AB matches the displayed matrix": lambda d: _same_map_rows(
            d.element("ab"), [[-half, -root, 0, _R(3, 2)], [root, -half, 0, root], [0, 0, 1, _R(1, 3)]]
        ),
        "rho(C) is the translation (0,0,1)": lambda d: d.element("abaaba").same_map(
            AffineIsometry.translation(_vec(0, 0, 1)), 0.0
        ),
    }
    return CrystalGroupData(
        name="P61",
        gen_a=a,
        gen_b=b,
        lattice_words=["a^6", "bA"],
        sample_elements=elements,
        point_group_order=6,
        longitude_trivial=True,
        checks=checks,
        notes=["International Tables number 169", "affine deformation of a reducible pair with sigma = 1/6"],
    )


def _same_map_rows(e: AffineIsometry, rows: Sequence[Sequence[Scalar]]) -> bool:
    return e.same_map(isometry(rows), 0.0)


_I213_A = [[0, 0, 1, _R(1, 6)], [1, 0, 0, _R(1, 6)], [0, 1, 0, _R(1, 6)]]
_I213_B = [[0, 0, -1, 0], [1, 0, 0, -_R(1, 3)], [0, -1, 0, _R(1, 6)]]


def _orthonormal_frame(p: PureVector, q: PureVector) -> Matrix:
    """Columns e1 along p, e2 in the (p, q) plane, e3 = e1 x e2."""
    e1 = p * div(1, sqrt(p.norm()))
    q_perp = q - e1 * inner(q, e1)
    e2 = q_perp * div(1, sqrt(q_perp.norm()))
    u, v = e1.coords, e2.coords
    e3 = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    return sympy.Matrix([list(u), list(v), list(e3)]).T.applyfunc(sympy.radsimp)


def i213_similarity() -> Similarity:
    """The similarity carrying affine_rep(1/2) onto the I2_13 generators."""
    rho_a, rho_b = affine_rep(_R(1, 2))
    target_a, target_b = isometry(_I213_A), isometry(_I213_B)
    source = _orthonormal_frame(rho_a.linear.pure, rho_b.linear.pure)
    target = _orthonormal_frame(target_a.linear.pure, target_b.linear.pure)
    rotation = (target * source.T).applyfunc(sympy.simplify)
    scale = _R(1, 3)

    # (I - M) t = v_target - scale * R v for both generators
    rows, rhs = [], []
    for rho, goal in ((rho_a, target_a), (rho_b, target_b)):
        m = linear_matrix(goal.linear)
        moved = rotation * sympy.Matrix(rho.v.coords) * scale
        rows.append(sympy.eye(3) - m)
        rhs.append(sympy.Matrix(goal.v.coords) - moved)
    system = sympy.Matrix.vstack(*rows)
    target_rhs = sympy.Matrix.vstack(*rhs).applyfunc(sympy.simplify)
    try:
        solution, free = system.gauss_jordan_solve(target_rhs)
    except ValueError as exc:
        raise VerificationFailure("no similarity conjugates the pair", fact="similarity") from exc
    solution = solution.subs({symbol: 0 for symbol in free}).applyfunc(sympy.simplify)
    return Similarity(scale=scale, rotation=rotation, translation=solution)


def i213_data() -> CrystalGroupData:
    similarity = i213_similarity()
    rho_a, rho_b = affine_rep(_R(1, 2))
    a, b = similarity.conjugate(rho_a), similarity.conjugate(rho_b)
    third = 2 * sympy.pi / 3
    elements = {
        "a": ExpectedElement(
            kind="screw", angle=third, axis_direction=(1, 1, 1), axis_point=(0, 0, 0), shift=(_R(1, 6),) * 3
        ),
        "a^3": ExpectedElement(kind="translation", translation=(_R(1, 2),) * 3),
        "ab": ExpectedElement(kind="rotation", angle=third),
        "ba": ExpectedElement(kind="rotation", angle=third),
        "aab": ExpectedElement(kind="rotation", angle=sympy.pi, axis_direction=(1, 0, 0)),
        "aba": ExpectedElement(kind="rotation", angle=sympy.pi, axis_direction=(0, 0, 1), axis_point=(_R(1, 12), 0, 0)),
        "bA": ExpectedElement(kind="screw", angle=sympy.pi, axis_direction=(0, 1, 0)),
    }

    def cos_omega(d: CrystalGroupData) -> bool:
        p, q = d.gen_a.linear.pure, d.gen_b.linear.pure
        return is_zero(div(inner(p, q), sqrt(p.norm() * q.norm())) + _R(1, 3))

    checks: dict[str, Check] = {
        "generators match the displayed matrices": lambda d: _same_map_rows(d.gen_a, _I213_A)
        and _same_map_rows(d.gen_b, _I213_B),
        "cos(omega) = -1/3": cos_omega,
        "sigma = sqrt(3)/6": lambda d: is_zero(classify_element(d.gen_a).sigma - _S3 / 6),
        "axis distance = sqrt(2)/12": lambda d: is_zero(axis_distance(d.gen_a, d.gen_b) - sympy.sqrt(2) / 12),
        "ABA = BAB is a pure half-turn": lambda d: classify_element(d.element("bab")).kind == "rotation",
    }
    return CrystalGroupData(
        name="I213",
        gen_a=a,
        gen_b=b,
        lattice_words=["a^3"],
        sample_elements=elements,
        point_group_order=12,
        longitude_trivial=False,
        covolume=_R(1, 2),
        similarity=similarity,
        checks=checks,
        notes=[
            "International Tables number 199",
            "sigma = sqrt(3)/2 before the similarity of scale 1/3, sqrt(3)/6 after",
        ],
    )


def p4132_data() -> CrystalGroupData:
    q = _R(1, 4)
    a = isometry([[0, -1, 0, q], [1, 0, 0, -q], [0, 0, 1, q]])
    b = isometry([[0, 0, 1, -q], [0, 1, 0, q], [-1, 0, 0, q]])
    quarter = sympy.pi / 2
    elements = {
        "a": ExpectedElement(kind="screw", angle=quarter, axis_direction=(0, 0, 1), axis_point=(q, 0, 0), shift=(0, 0, q)),
        "b": ExpectedElement(kind="screw", angle=quarter, axis_direction=(0, 1, 0), axis_point=(0, 0, q), shift=(0, q, 0)),
        "ba": ExpectedElement(kind="rotation", angle=2 * sympy.pi / 3, axis_direction=(1, 1, 1), axis_point=(0, 0, 0)),
        "aba": ExpectedElement(kind="rotation", angle=sympy.pi, axis_direction=(0, 1, 1), axis_point=(_R(1, 8), 0, q)),
        "a^4": ExpectedElement(kind="translation", translation=(0, 0, 1)),
        "b^4": ExpectedElement(kind="translation", translation=(0, 1, 0)),
    }
    checks: dict[str, Check] = {
        "BA matches the displayed matrix": lambda d: _same_map_rows(
            d.element("ba"), [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0]]
        ),
        "ABA matches the displayed matrix": lambda d: _same_map_rows(
            d.element("aba"), [[-1, 0, 0, q], [0, 0, 1, -q], [0, 1, 0, q]]
        ),
        "ABA fixes (1/8, t, t + 1/4)": lambda d: all(
            d.element("aba").act(_vec(_R(1, 8), t, t + q)).is_close(_vec(_R(1, 8), t, t + q), 0.0)
            for t in (-1, 0, _R(1, 2), 3)
        ),
    }
    return CrystalGroupData(
        name="P4132",
        gen_a=a,
        gen_b=b,
        lattice_words=["a^4", "b^4"],
        sample_elements=elements,
        point_group_order=24,
        longitude_trivial=False,
        covolume=1,
        checks=checks,
        notes=["International Tables number 213", "the enantiomorph P4_332 is the mirror image"],
    )


CRYSTAL_GROUPS: dict[str, Callable[[], CrystalGroupData]] = {
    "P61": p61_data,
    "I213": i213_data,
    "P4132": p4132_data,
}


_ALPHA = sympy.Symbol("alpha", real=True)
_SIGMA = sympy.Symbol("sigma", real=True)
_C, _S = sympy.symbols("c s", real=True)


class ParallelAxisAnalysis(BaseModel):
    """Residual of the braid relation for rotations about parallel axes.

    ``residual`` holds the translation column of rho(aba) - rho(bab) as
    functions of alpha; ``factor`` is its Y entry.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    residual: list[Any]
    factor: Any
    factor_zeros: list[Any]
    residual_zeros: list[Any]
    rejected: dict[str, str]
    admissible: Any = None

    def factor_at(self, angle: Scalar) -> Scalar:
        return sympy.simplify(self.factor.subs(_ALPHA, angle))

    def residual_at(self, angle: Scalar) -> list[Scalar]:
        return [sympy.simplify(c.subs(_ALPHA, angle)) for c in self.residual]

    def to_json(self) -> dict[str, Any]:
        return {
            "residual": [str(c) for c in self.residual],
            "factor": str(self.factor),
            "factor_zeros": [str(z) for z in self.factor_zeros],
            "residual_zeros": [str(z) for z in self.residual_zeros],
            "rejected": self.rejected,
            "admissible": None if self.admissible is None else str(self.admissible),
        }


def _reduce_trig(expr: sympy.Expr) -> sympy.Expr:
    # s^2 = 1 - c^2, so the remainder is at most linear in s
    _, remainder = sympy.reduced(sympy.expand(expr), [_S**2 + _C**2 - 1], _S, _C)
    return sympy.factor(remainder)


def _angles(expr: sympy.Expr) -> set[Any]:
    """Zeros in (0, 2pi) of a product of polynomials in c = cos and s = sin."""
    if expr == 0:
        raise VerificationFailure("identically zero residual has no isolated zeros")
    found: set[Any] = set()
    _, factors = sympy.factor_list(expr, _S, _C)
    for factor, _multiplicity in factors:
        if factor.free_symbols == {_S} and sympy.degree(factor, _S) == 1:
            found.add(sympy.pi)
            continue
        if _S in factor.free_symbols:
            raise VerificationFailure(f"cannot isolate the zeros of {factor}")
        for root in sympy.Poly(factor, _C).real_roots():
            if abs(root) > 1:
                continue
            angle = sympy.acos(root)
            for candidate in (angle, 2 * sympy.pi - angle):
                candidate = sympy.simplify(candidate)
                if 0 < candidate < 2 * sympy.pi:
                    found.add(candidate)
    return found


def parallel_axis_analysis() -> ParallelAxisAnalysis:
    """The braid relation for two screws with parallel axes.

    rho(a) turns by alpha about the Z axis and rho(b) about the parallel line
    through (1, 0, 0), both shifting by sigma. The linear parts always
    braid; the translation column of rho(aba) - rho(bab) must vanish.
    """
    a = sympy.Matrix([[_C, -_S, 0, 0], [_S, _C, 0, 0], [0, 0, 1, _SIGMA], [0, 0, 0, 1]])
    b = sympy.Matrix([[_C, -_S, 0, 1 - _C], [_S, _C, 0, -_S], [0, 0, 1, _SIGMA], [0, 0, 0, 1]])
    difference = a * b * a - b * a * b
    column = [_reduce_trig(difference[r, 3]) for r in range(3)]
    factor = (1 - 2 * _C) ** 2 * _S
    if sympy.expand(_reduce_trig(column[1] - factor)) != 0:
        raise VerificationFailure(f"unexpected Y residual {column[1]}", fact="parallel axis factor")

    factor_zeros = _angles(factor)
    common: Optional[set[Any]] = None
    for component in column:
        if component == 0:
            continue
        zeros = _angles(component)
        common = zeros if common is None else common & zeros
    residual_zeros = common or set()

    rejected = {}
    for angle in sorted(factor_zeros - residual_zeros, key=float):
        rejected[str(angle)] = "X residual does not vanish"
    # 5pi/3 is the inverse rotation of pi/3
    admissible = min(residual_zeros, key=float) if residual_zeros else None

    to_alpha = {_C: sympy.cos(_ALPHA), _S: sympy.sin(_ALPHA)}
    return ParallelAxisAnalysis(
        residual=[sympy.sympify(c).subs(to_alpha) for c in column],
        factor=factor.subs(to_alpha),
        factor_zeros=sorted(factor_zeros, key=float),
        residual_zeros=sorted(residual_zeros, key=float),
        rejected=rejected,
        admissible=admissible,
    )


class Sigma6Check(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    perm_f: Any
    perm_d: Any
    relations_hold: bool
    transitive: bool
    image_order: int
    stabilizer_index: int
    squares_in_kernel: bool
    residuals: dict[str, float] = {}

    @property
    def passed(self) -> bool:
        return (
            self.relations_hold
            and self.transitive
            and self.stabilizer_index == 6
            and self.squares_in_kernel
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "F": self.perm_f.cyclic_form,
            "D": self.perm_d.cyclic_form,
            "relations_hold": self.relations_hold,
            "transitive": self.transitive,
            "image_order": self.image_order,
            "stabilizer_index": self.stabilizer_index,
            "squares_in_kernel": self.squares_in_kernel,
            "residuals": self.residuals,
        }


# (123)(456) and (15)(24)(36) on the points 0..5
F_IMAGE = Permutation([[0, 1, 2], [3, 4, 5]], size=6)
D_IMAGE = Permutation([[0, 4], [1, 3], [2, 5]], size=6)


def sigma6_homomorphism() -> tuple[Permutation, Permutation]:
    return F_IMAGE, D_IMAGE


def word_permutation(w: Union[str, GroupWord]) -> Permutation:
    """Image in Sigma_6 with a = F^-1 D and b = D^-1 F^2.

    SymPy multiplies permutations left to right, matching word order.
    """
    images = {"a": F_IMAGE**-1 * D_IMAGE, "b": D_IMAGE**-1 * F_IMAGE**2}
    result = Permutation(5)
    for generator, exponent in word(w):
        image = images[generator]
        result = result * (image if exponent > 0 else image**-1)
    return result


FDFD = word("ab aba ab aba")
F_INV_D_F_INV_D = word("B A aba B A aba")


def free_subgroup_check(
    *, per_region: int = 3, seed: int = 3, tol: float = DEFAULT_TOLERANCE
) -> Sigma6Check:
    """The subgroup <a^2, b^-2> through Sigma_6 and through every case.

    FDFD = b^-2 C^2 and F^-1 D F^-1 D = a^2 in the group; C^2 acts trivially
    in every representation, so both identities are checked numerically.
    """
    f, d = sigma6_homomorphism()
    identity = Permutation(5)
    group = PermutationGroup([f, d])
    order = int(group.order())

    residuals: dict[str, float] = {}
    for case in CaseTag:
        worst = 0.0
        for x in sample_points(case, per_region, seed=seed):
            for a, b in _rep_images(x, tol):
                for lhs, rhs in ((FDFD, word("b^-2")), (F_INV_D_F_INV_D, word("a^2"))):
                    worst = max(worst, relative_gap(evaluate(lhs, a, b), evaluate(rhs, a, b)))
        residuals[case.value] = worst
        log.debug("sigma6 residual for %s: %g", case.value, worst)

    return Sigma6Check(
        perm_f=f,
        perm_d=d,
        relations_hold=f**3 == identity and d**2 == identity,
        transitive=group.is_transitive(),
        image_order=order,
        stabilizer_index=order // int(group.stabilizer(0).order()),
        squares_in_kernel=word_permutation("a^2") == identity
        and word_permutation("b^-2") == identity,
        residuals=residuals,
    )


def _rep_images(x: float, tol: float) -> list[tuple[Any, Any]]:
    pairs: list[tuple[Any, Any]] = [linear_rep(x, tol)]
    try:
        pairs.append(affine_rep(x, tol))
    except (TrivialDeformationError, NoAffineDeformationError):
        pass
    return pairs
