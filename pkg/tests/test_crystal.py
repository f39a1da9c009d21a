import pytest
import sympy
from sympy.combinatorics import Permutation

from musubi.crystal import (
    CRYSTAL_GROUPS,
    FDFD,
    F_INV_D_F_INV_D,
    classify_matrix,
    free_subgroup_check,
    i213_similarity,
    isometry,
    lattice_covolume,
    lattice_rank,
    parallel_axis_analysis,
    point_group,
    word_permutation,
)
from musubi.utils.errors import VerificationFailure
from musubi.words import free_reduce, word

half = sympy.Rational(1, 2)


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(CRYSTAL_GROUPS))
def test_every_fact_holds(name: str) -> None:
    report = CRYSTAL_GROUPS[name]().verify(strict=True)
    assert report.passed
    assert report.name == name
    assert len(report.facts) > 8


@pytest.mark.slow
def test_tampered_data_fails() -> None:
    data = CRYSTAL_GROUPS["P4132"]()
    tampered = data.model_copy(update={"point_group_order": 12})
    report = tampered.verify()
    assert not report.passed
    failed = [fact.name for fact in report.facts if not fact.passed]
    assert failed == ["point group has order 12"]
    with pytest.raises(VerificationFailure) as info:
        tampered.verify(strict=True)
    assert info.value.fact == "point group has order 12"
    assert info.value.exit_code == 1


@pytest.mark.slow
def test_longitude() -> None:
    assert CRYSTAL_GROUPS["P61"]().element("a^-4 b a a b").same_map(
        isometry([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]), 0.0
    )
    survivor = CRYSTAL_GROUPS["I213"]().element("a^-4 b a a b")
    found = classify_matrix(survivor.matrix4().tolist())
    assert found.kind == "translation"
    assert found.translation is not None
    assert found.translation.coords == (-1, -1, -1)


@pytest.mark.slow
def test_similarity_of_i213() -> None:
    similarity = i213_similarity()
    assert similarity.scale == sympy.Rational(1, 3)
    r = similarity.rotation
    assert (r * r.T).applyfunc(sympy.simplify) == sympy.eye(3)
    assert sympy.simplify(r.det()) == 1


def test_classify_matrix() -> None:
    cyclic = classify_matrix([[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert cyclic.kind == "rotation"
    assert sympy.simplify(cyclic.angle - 2 * sympy.pi / 3) == 0
    screw = classify_matrix([[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, half]])
    assert screw.kind == "screw"
    assert screw.shift_vector is not None
    assert screw.shift_vector.coords == (0, 0, half)
    assert classify_matrix([[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]]).kind == "translation"


def test_point_group_closure() -> None:
    cyclic = sympy.Matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    flip = sympy.diag(-1, -1, 1)
    assert len(point_group([cyclic])) == 3
    assert len(point_group([cyclic, flip])) == 12
    irrational = sympy.Matrix(
        [[sympy.Rational(3, 5), -sympy.Rational(4, 5), 0], [sympy.Rational(4, 5), sympy.Rational(3, 5), 0], [0, 0, 1]]
    )
    with pytest.raises(VerificationFailure):
        point_group([irrational])


def test_lattice_helpers() -> None:
    cubic = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert lattice_rank(cubic) == 3
    assert lattice_covolume(cubic) == 1
    assert lattice_covolume(cubic + [[half, half, half]]) == half
    assert lattice_rank([[1, 0, 0], [2, 0, 0]]) == 1
    assert lattice_covolume([[1, 0, 0], [0, 1, 0]]) is None
    assert lattice_covolume([[sympy.sqrt(2), 0, 0], [0, 1, 0], [0, 0, 1]]) is None


def test_parallel_axis_zeros() -> None:
    analysis = parallel_axis_analysis()
    pi = sympy.pi
    assert analysis.factor_zeros == [pi / 3, pi, 5 * pi / 3]
    assert analysis.residual_zeros == [pi / 3, 5 * pi / 3]
    assert analysis.admissible == pi / 3
    assert list(analysis.rejected) == ["pi"]
    assert all(c == 0 for c in analysis.residual_at(pi / 3))
    assert analysis.residual_at(pi)[0] != 0
    assert analysis.factor_at(pi) == 0


def test_sigma6_images() -> None:
    assert word_permutation("a") == Permutation([[0, 5], [1, 4], [2, 3]], size=6)
    assert word_permutation("b") == Permutation([[0, 3], [1, 5], [2, 4]], size=6)
    assert word_permutation("aba") == word_permutation("bab")
    assert word_permutation("a^2").is_Identity


def test_sigma6_words_are_the_named_products() -> None:
    assert free_reduce(F_INV_D_F_INV_D) == word("a^2")
    assert free_reduce(FDFD) == FDFD
    assert len(FDFD) == 10


def test_free_subgroup_check() -> None:
    check = free_subgroup_check(per_region=2, seed=5)
    assert check.passed
    assert check.image_order == 6
    assert check.stabilizer_index == 6
    assert set(check.residuals) == {
        "Case1_spherical",
        "Case2_boundary",
        "Case3_elliptic_lorentz",
        "Case4_parabolic",
        "Case5_hyperbolic",
    }
    assert max(check.residuals.values()) < 1e-9
