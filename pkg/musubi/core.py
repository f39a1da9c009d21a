from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Optional

import click

from musubi.utils.responses import Backend, ReportEnvelope
from musubi.utils.router import PartialConfig
from musubi.utils.scalars import Scalar, parse_scalar

__title__ = "Musubi"
__description__ = """
Musubi computes quaternion representations of the trefoil knot group,
their affine deformations, and the crystallographic and Lorentzian
geometry that comes out of them.
"""
__version__ = "0.1.0a"

LOG_FORMAT = "%(asctime)s %(levelname)-8s %(name)s: %(message)s"


def setup_logging(level: str, verbose: int = 0) -> None:
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)


class Musubi:
    """Per-invocation state shared by every subcommand."""

    def __init__(
        self,
        *,
        config: PartialConfig,
        tolerance: Optional[float] = None,
        backend: Optional[Backend] = None,
        as_json: bool = True,
        pretty: bool = False,
        out: Optional[Path] = None,
    ):
        self.config = config
        self.tolerance: float = tolerance if tolerance is not None else config.tolerance
        self.backend: Backend = backend or config.backend
        self.as_json = as_json
        self.pretty = pretty
        self.out = out

    @property
    def exact(self) -> bool:
        return self.backend == "exact"

    def parse_x(self, text: str) -> Scalar:
        try:
            return parse_scalar(text, exact=self.exact)
        except (ValueError, TypeError, SyntaxError) as exc:
            raise click.BadParameter(str(exc), param_hint="--x") from exc

    def emit(self, command: str, inputs: dict[str, Any], results: Any) -> None:
        envelope = ReportEnvelope(
            command=command,
            inputs=inputs,
            results=results,
            tolerance=self.tolerance,
            backend=self.backend,
        )
        if self.as_json:
            text = envelope.dumps(pretty=self.pretty).decode("utf-8")
        else:
            text = "\n".join(_render_text(envelope.results))

        if self.out is not None:
            self.out.write_text(text + "\n", encoding="utf-8")
            click.echo(f"wrote {command} report to {self.out}", err=True)
        else:
            click.echo(text)


_SCALAR_KEYS = {"rat", "surd", "expr", "approx", "re", "im"}


def _is_scalar_payload(value: Any) -> bool:
    return isinstance(value, dict) and bool(value) and set(value) <= _SCALAR_KEYS


def _is_flat(value: Any) -> bool:
    if isinstance(value, list):
        return all(_is_flat(item) for item in value)
    return not isinstance(value, dict) or _is_scalar_payload(value)


def _inline(value: Any) -> str:
    if _is_scalar_payload(value):
        return _scalar_text(value)
    if isinstance(value, list):
        return "[" + ", ".join(_inline(item) for item in value) + "]"
    return str(value)


def _render_text(value: Any, indent: int = 0) -> list[str]:
    """Indented key: value lines for ``--text`` output."""
    pad = "  " * indent
    if _is_flat(value):
        return [pad + _inline(value)]
    lines: list[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if _is_flat(item):
                lines.append(f"{pad}{key}: {_inline(item)}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(item, indent + 1))
        return lines
    for item in value:
        nested = _render_text(item, indent + 1)
        lines.append(pad + "- " + nested[0].lstrip())
        lines.extend(nested[1:])
    return lines


def _scalar_text(payload: dict[str, Any]) -> str:
    if "expr" in payload:
        return str(payload["expr"])
    if "re" in payload:
        return f"{payload['re']}{payload['im']:+}j"
    p, q = payload["rat"]
    text = str(p) if q == 1 else f"{p}/{q}"
    if "surd" in payload:
        (c, d), radicand = payload["surd"]["c"], payload["surd"]["d"]
        surd = f"{c if d == 1 else f'{c}/{d}'}*sqrt({radicand})"
        text = f"{text} + {surd}" if p else surd
    return text
