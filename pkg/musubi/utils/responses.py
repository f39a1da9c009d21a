from typing import Any, Literal

import numpy as np
import orjson
import sympy
from pydantic import BaseModel

from .scalars import to_json

Backend = Literal["float64", "exact"]


def _default(value: Any) -> Any:
    if isinstance(value, (sympy.Basic, np.generic, complex)):
        return to_json(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(payload: Any, *, pretty: bool = False) -> bytes:
    """orjson with sorted keys, so exact reports are byte-stable."""
    option = orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY
    if pretty:
        option |= orjson.OPT_INDENT_2
    return orjson.dumps(payload, default=_default, option=option)


class ReportEnvelope(BaseModel, frozen=True):
    command: str
    inputs: dict[str, Any]
    results: Any
    tolerance: float
    backend: Backend

    def dumps(self, *, pretty: bool = False) -> bytes:
        return dumps(self.model_dump(), pretty=pretty)
