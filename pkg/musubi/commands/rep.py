from typing import Any

import click
import sympy

from musubi.affine import AffineIsometry
from musubi.algebra import Quaternion, linear_matrix, to_matrix2
from musubi.core import Musubi
from musubi.reps import RepPoint, affine_rep, element_images, linear_rep
from musubi.utils.scalars import Matrix, as_array, is_exact_matrix, matrix_to_json


def _latex(m: Matrix) -> str:
    if is_exact_matrix(m):
        return sympy.latex(m)
    return sympy.latex(sympy.Matrix(as_array(m).tolist()))


def _matrices(image: Any) -> dict[str, Matrix]:
    if isinstance(image, AffineIsometry):
        return {"matrix4": image.matrix4()}
    q: Quaternion = image
    matrices = {"conjugation": linear_matrix(q)}
    if q.params.is_split:
        matrices["matrix2"] = to_matrix2(q)
    return matrices


@click.command("rep", short_help="quaternion images of a and b")
@click.option("--x", "x_text", required=True, help="Common scalar part.")
@click.option("--affine", is_flag=True, help="Emit the affine deformation instead of the linear pair.")
@click.option("--latex", is_flag=True, help="Add LaTeX renderings of the matrices.")
@click.pass_obj
def command(app: Musubi, x_text: str, affine: bool, latex: bool) -> None:
    """Representation of the trefoil group at x.

    Prints the quaternions A and B (or the affine pairs (v, A)), their
    matrices and the images of F = ab, D = aba and C = D^2.
    """
    x = app.parse_x(x_text)
    point = RepPoint.from_x(x, affine=affine, tol=app.tolerance)
    pair = affine_rep(x, app.tolerance) if affine else linear_rep(x, app.tolerance)
    images = element_images(x, affine=affine, tol=app.tolerance)

    results: dict[str, Any] = {"point": point.to_json(), "algebra": point.case.algebra.name}
    for name, image in zip(("a", "b"), pair):
        entry: dict[str, Any] = {"quaternion": image.to_json()}
        for label, m in _matrices(image).items():
            entry[label] = matrix_to_json(m)
            if latex:
                entry[f"{label}_latex"] = _latex(m)
        results[name] = entry
    results["elements"] = images.to_json()
    results["c_is_central"] = images.c_is_central(app.tolerance)
    app.emit("rep", {"x": x_text, "affine": affine}, results)
