import click
import orjson

from musubi.core import Musubi
from musubi.crystal import CRYSTAL_GROUPS, classify_matrix, parallel_axis_analysis


@click.group("crystal", short_help="crystallographic quotients")
def command() -> None:
    """The space groups P6_1, I2_13 and P4_132 as quotients of the trefoil group."""


@command.command("verify")
@click.argument("name", type=click.Choice(sorted(CRYSTAL_GROUPS)))
@click.option("--strict", is_flag=True, help="Stop at the first failing fact.")
@click.pass_context
def verify(ctx: click.Context, name: str, strict: bool) -> None:
    """Check every stored fact of NAME with exact arithmetic."""
    app: Musubi = ctx.obj
    data = CRYSTAL_GROUPS[name]()
    report = data.verify(strict=strict)
    app.emit("crystal verify", {"group": name}, {**report.to_json(), "data": data.to_json()})
    if not report.passed:
        ctx.exit(1)


@command.command("classify")
@click.option("--matrix", "text", required=True, help="JSON rows of a 3x4 or 4x4 isometry matrix.")
@click.pass_obj
def classify(app: Musubi, text: str) -> None:
    """Type, axis and shift of a Euclidean isometry."""
    try:
        rows = orjson.loads(text)
    except orjson.JSONDecodeError as exc:
        raise click.BadParameter(str(exc), param_hint="--matrix") from exc
    parsed = [[app.parse_x(str(entry)) for entry in row] for row in rows]
    app.emit("crystal classify", {"matrix": rows}, classify_matrix(parsed).to_json())


@command.command("parallel-axis")
@click.pass_obj
def parallel_axis(app: Musubi) -> None:
    """Braid residual for rotations about parallel axes."""
    app.emit("crystal parallel-axis", {}, parallel_axis_analysis().to_json())
