import click

from musubi.core import Musubi
from musubi.reps import case2_plane_action
from musubi.utils.scalars import is_zero


@click.command("plane", short_help="the boundary case as plane rotations")
@click.pass_obj
def command(app: Musubi) -> None:
    """At x = sqrt(3)/2 the image acts on the plane by two rotations of pi/3."""
    a, b = case2_plane_action()
    aba, bab = a.then(b).then(a), b.then(a).then(b)
    results = {
        "a": {**a.to_json(), "angle": str(a.angle), "fixed_point": str(a.fixed_point)},
        "b": {**b.to_json(), "angle": str(b.angle), "fixed_point": str(b.fixed_point)},
        "braid_relation": is_zero(aba.rotation - bab.rotation)
        and is_zero(aba.translation - bab.translation),
    }
    app.emit("plane", {}, results)
