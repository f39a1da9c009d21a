from pathlib import Path
from typing import Any, Generic, Optional, TypeVar, Union, overload

import yaml

_T = TypeVar("_T")

CONFIG_PATH = Path(__file__).parents[1] / "config.yml"

DEFAULTS: dict[str, Any] = {
    "tolerance": 1e-9,
    "backend": "float64",
    "log_level": "WARNING",
    "samples": {"per_region": 200, "seed": 3},
    "margulis": {"probe_points": 10, "witness_depth": 3},
}


class MusubiConfig(Generic[_T]):
    def __init__(self, path: Path = CONFIG_PATH):
        self.path = path
        self._config: dict[str, Union[_T, Any]] = {}
        self.load_from_file()

    def load_from_file(self) -> None:
        try:
            with open(self.path, "r") as f:
                loaded = yaml.safe_load(f.read()) or {}
        except FileNotFoundError:
            loaded = {}

        # Everything lives under the top-level ``musubi`` key
        section = loaded.get("musubi", {}) if isinstance(loaded, dict) else {}
        merged: dict[str, Union[_T, Any]] = dict(DEFAULTS)
        for key, value in (section or {}).items():
            base = DEFAULTS.get(key)
            if isinstance(base, dict) and isinstance(value, dict):
                merged[key] = {**base, **value}
            else:
                merged[key] = value
        self._config = merged

    @overload
    def get(self, key: Any) -> Optional[Union[_T, Any]]: ...

    @overload
    def get(self, key: Any, default: Any) -> Union[_T, Any]: ...

    def get(self, key: Any, default: Any = None) -> Optional[Union[_T, Any]]:
        """Retrieves a config entry."""
        return self._config.get(str(key), default)

    def __contains__(self, item: Any) -> bool:
        return str(item) in self._config

    def __getitem__(self, item: Any) -> Union[_T, Any]:
        return self._config[str(item)]

    def __len__(self) -> int:
        return len(self._config)

    def all(self) -> dict[str, Union[_T, Any]]:
        return self._config
