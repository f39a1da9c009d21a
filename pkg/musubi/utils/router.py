from pathlib import Path
from typing import Any, Literal

import click
import orjson
from pydantic import BaseModel

from .config import CONFIG_PATH, MusubiConfig
from .errors import ErrorMessage, MusubiError


class PartialConfig(BaseModel, frozen=True):
    tolerance: float = 1e-9
    backend: Literal["float64", "exact"] = "float64"
    log_level: str = "WARNING"
    per_region: int = 200
    seed: int = 3
    probe_points: int = 10
    witness_depth: int = 3


class MusubiGroup(click.Group):
    """Click group that loads the config once and turns MusubiError into exit codes."""

    def __init__(self, *args: Any, config_path: Path = CONFIG_PATH, **kwargs: Any):
        super().__init__(*args, **kwargs)
        self.config_path = config_path
        self.config = self._load_config()

    def _load_config(self) -> PartialConfig:
        config = MusubiConfig(self.config_path)
        return PartialConfig(
            tolerance=config["tolerance"],
            backend=config["backend"],
            log_level=config["log_level"],
            per_region=config["samples"]["per_region"],
            seed=config["samples"]["seed"],
            probe_points=config["margulis"]["probe_points"],
            witness_depth=config["margulis"]["witness_depth"],
        )

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except MusubiError as exc:
            message = ErrorMessage.from_exception(exc)
            click.echo(orjson.dumps(message.model_dump()), err=True)
            ctx.exit(exc.exit_code)
