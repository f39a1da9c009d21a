from typing import Optional

import click

from musubi.core import Musubi
from musubi.lorentz import properness_verdict


@click.command("properness", short_help="look for a non-properness certificate")
@click.option("--x", "x_text", required=True, help="Common scalar part.")
@click.option("--depth", type=int, help="Length of the scanned words in a^2, b^-2.")
@click.pass_obj
def command(app: Musubi, x_text: str, depth: Optional[int]) -> None:
    """Verdict on whether the affine image acts properly.

    Uses a fixed line at |x| = 1, Mess's theorem at x = cos(pi/n) with
    n >= 7, and Margulis invariants of opposite sign for |x| > 1.
    """
    x = app.parse_x(x_text)
    depth = depth if depth is not None else app.config.witness_depth
    verdict = properness_verdict(x, depth=depth, tol=app.tolerance)
    app.emit("properness", {"x": x_text, "depth": depth}, verdict.to_json())
