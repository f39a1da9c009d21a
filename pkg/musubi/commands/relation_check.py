import logging
from typing import Any, Optional

import click
import numpy as np

from musubi.core import Musubi
from musubi.reps import CaseTag, affine_rep, braid_residual, linear_rep, sample_points, trefoil_s, trefoil_y
from musubi.utils.errors import NoAffineDeformationError, TrivialDeformationError
from musubi.words import trefoil_affine_poly, trefoil_char_poly

log = logging.getLogger(__name__)

LINEAR_BOUND = 1e-9
AFFINE_BOUND = 1e-8


def relation_suite(per_region: int, seed: int, tol: float) -> dict[str, Any]:
    """Braid residuals and variety polynomials on sampled points of every case."""
    rng = np.random.default_rng(seed)
    report: dict[str, Any] = {}
    for case in CaseTag:
        linear, affine, variety, points = 0.0, 0.0, 0.0, 0
        for x in sample_points(case, per_region, seed=rng):
            points += 1
            linear = max(linear, braid_residual(*linear_rep(x, tol)))
            variety = max(variety, abs(float(trefoil_char_poly(x, trefoil_y(x)))))
            try:
                affine = max(affine, braid_residual(*affine_rep(x, tol)))
                variety = max(variety, abs(float(trefoil_affine_poly(x, trefoil_s(x, tol)))))
            except (TrivialDeformationError, NoAffineDeformationError):
                log.debug("no affine deformation at x=%s", x)
        report[case.value] = {
            "points": points,
            "linear_residual": linear,
            "affine_residual": affine,
            "variety_residual": variety,
            "passed": linear <= LINEAR_BOUND and affine <= AFFINE_BOUND,
        }
    return report


@click.command("relation-check", short_help="braid relation on sampled points")
@click.option("--per-region", type=int, help="Points per case region. Defaults to the config value.")
@click.option("--seed", type=int, help="Sampling seed. Defaults to the config value.")
@click.pass_context
def command(ctx: click.Context, per_region: Optional[int], seed: Optional[int]) -> None:
    """Check aba = bab for the linear and affine pairs across all five cases.

    Exits with 1 when a residual is above its bound.
    """
    app: Musubi = ctx.obj
    per_region = per_region if per_region is not None else app.config.per_region
    seed = seed if seed is not None else app.config.seed
    report = relation_suite(per_region, seed, app.tolerance)
    passed = all(entry["passed"] for entry in report.values())
    app.emit("relation-check", {"per_region": per_region, "seed": seed}, {"cases": report, "passed": passed})
    if not passed:
        ctx.exit(1)
