from typing import Optional

import click

from musubi.core import Musubi
from musubi.crystal import free_subgroup_check

RESIDUAL_BOUND = 1e-9


@click.command("sigma6", short_help="index-6 free subgroup through Sigma_6")
@click.option("--per-region", type=int, default=5, show_default=True, help="Points per case region.")
@click.option("--seed", type=int, help="Sampling seed. Defaults to the config value.")
@click.pass_context
def command(ctx: click.Context, per_region: int, seed: Optional[int]) -> None:
    """F -> (123)(456), D -> (15)(24)(36) and the identities FDFD = b^-2, F^-1DF^-1D = a^2."""
    app: Musubi = ctx.obj
    seed = seed if seed is not None else app.config.seed
    check = free_subgroup_check(per_region=per_region, seed=seed, tol=app.tolerance)
    passed = check.passed and all(r <= RESIDUAL_BOUND for r in check.residuals.values())
    app.emit("sigma6", {"per_region": per_region, "seed": seed}, {**check.to_json(), "passed": passed})
    if not passed:
        ctx.exit(1)
