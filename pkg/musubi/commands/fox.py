from typing import Any, Optional

import click

from musubi.core import Musubi
from musubi.reps import affine_rep
from musubi.words import GENERATORS, evaluate, fox_derivative, free_reduce, translational_residual, word


@click.command("fox", short_help="Fox derivatives of a word")
@click.argument("text", metavar="WORD")
@click.option("--x", "x_text", help="Also evaluate the translational part at this x.")
@click.pass_obj
def command(app: Musubi, text: str, x_text: Optional[str]) -> None:
    """Fox derivatives of WORD with respect to a and b.

    With --x, the derivatives are applied to the translational parts of the
    affine representation and compared with the translational part of the
    composed isometry.
    """
    w = word(text)
    results: dict[str, Any] = {
        "word": str(w),
        "reduced": str(free_reduce(w)),
        "derivatives": {g: str(fox_derivative(w, g)) for g in GENERATORS},
    }
    if x_text is not None:
        x = app.parse_x(x_text)
        rho_a, rho_b = affine_rep(x, app.tolerance)
        fox_part = translational_residual(w, rho_a, rho_b, tol=app.tolerance, check_relator=False)
        direct = evaluate(w, rho_a, rho_b)
        results["translation"] = {
            "fox": fox_part.to_json(),
            "composed": direct.v.to_json(),
            "agree": fox_part.is_close(direct.v, app.tolerance),
        }
    app.emit("fox", {"word": text, "x": x_text}, results)

