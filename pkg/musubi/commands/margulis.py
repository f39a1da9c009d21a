import click

from musubi.core import Musubi
from musubi.lorentz import margulis_report, probe_spread
from musubi.reps import affine_rep
from musubi.utils.scalars import to_float
from musubi.words import evaluate, word


@click.command("margulis", short_help="Margulis invariant of a word")
@click.option("--x", "x_text", required=True, help="Common scalar part, |x| > 1.")
@click.option("--word", "text", default="a^2", show_default=True, help="Word to evaluate.")
@click.pass_obj
def command(app: Musubi, x_text: str, text: str) -> None:
    """Margulis invariant and eigen-frame of the image of a word.

    The report also carries the variance of the invariant over random base
    points, computed in float64.
    """
    x = app.parse_x(x_text)
    w = word(text)
    report = margulis_report(x, w, app.tolerance)
    phi = evaluate(w, *affine_rep(float(to_float(x)), app.tolerance))
    spread = probe_spread(phi, app.config.probe_points, seed=app.config.seed, tol=app.tolerance)
    app.emit("margulis", {"x": x_text, "word": text}, {**report.to_json(), "probe_variance": spread})
