from pathlib import Path
from typing import Optional

import click

from musubi.commands import discover
from musubi.core import Musubi, __version__, setup_logging
from musubi.utils.router import MusubiGroup


@click.group(
    cls=MusubiGroup,
    short_help="trefoil representations and their geometry",
    options_metavar="[options]",
    context_settings={"help_option_names": ["-h", "--help"]},
)
@click.option("--tolerance", type=float, help="Float comparison tolerance. Defaults to the config value.")
@click.option(
    "--backend",
    type=click.Choice(["float64", "exact"]),
    help="Scalar backend for --x values. Defaults to the config value.",
)
@click.option("--json/--text", "as_json", default=True, help="Report format.")
@click.option("--pretty", is_flag=True, help="Indent JSON output.")
@click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    help="Write the report to a file instead of stdout.",
)
@click.option("-v", "--verbose", count=True, help="-v for info logs, -vv for debug.")
@click.version_option(__version__, prog_name="musubi")
@click.pass_context
def main(
    ctx: click.Context,
    tolerance: Optional[float],
    backend: Optional[str],
    as_json: bool,
    pretty: bool,
    out: Optional[Path],
    verbose: int,
) -> None:
    """Quaternion representations of the trefoil group.

    Words use the letters a, b and their inverses A, B, with optional caret
    exponents: "a^-4 b a a b", "abaBAB", "a^2 b^-2". The empty word is "1".
    """
    config = ctx.command.config  # type: ignore[attr-defined]
    setup_logging(config.log_level, verbose)
    ctx.obj = Musubi(
        config=config,
        tolerance=tolerance,
        backend=backend,  # type: ignore[arg-type]
        as_json=as_json,
        pretty=pretty,
        out=out,
    )


for command in discover():
    main.add_command(command)


if __name__ == "__main__":
    main()
