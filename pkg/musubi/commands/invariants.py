from typing import Any

import click

from musubi.core import Musubi
from musubi.reps import CaseTag, cone_trig_check, geometric_invariants


@click.command("invariants", short_help="cone angles, axis distances and shifts")
@click.option("--x", "x_text", required=True, help="Common scalar part.")
@click.pass_obj
def command(app: Musubi, x_text: str) -> None:
    x = app.parse_x(x_text)
    invariants = geometric_invariants(x, app.tolerance)
    results: dict[str, Any] = {"invariants": invariants.to_json()}
    if invariants.case not in (CaseTag.boundary, CaseTag.parabolic):
        results["cone_trigonometry"] = cone_trig_check(x, app.tolerance).to_json()
    app.emit("invariants", {"x": x_text}, results)
