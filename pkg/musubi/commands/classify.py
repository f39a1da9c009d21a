import click

from musubi.core import Musubi
from musubi.reps import classify


@click.command("classify", short_help="case of the trefoil variety for a value of x")
@click.option("--x", "x_text", required=True, help="Common scalar part, e.g. 0.5 or sqrt(3)/2.")
@click.pass_obj
def command(app: Musubi, x_text: str) -> None:
    x = app.parse_x(x_text)
    case = classify(x, app.tolerance)
    app.emit(
        "classify",
        {"x": x_text},
        {"case": case.value, "number": case.number, "algebra": case.algebra.name},
    )
