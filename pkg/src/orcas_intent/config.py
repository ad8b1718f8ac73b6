"""Run configuration: built-in defaults, then a ``key = value`` file, then flags."""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Mapping, Optional, Union

from .aggregation import Method
from .url_tools import DEFAULT_NAV_THRESHOLD

LEXICON_ENV_VAR = "INTENT_LEXICONS"

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _parse_bool(text: str, key: str) -> bool:
    t = text.strip().lower()
    if t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise ValueError(f"{key}: expected true/false, got {text!r}")


@dataclass(frozen=True)
class RunConfig:
    lexicon_dir: Optional[str] = None
    nav_threshold: float = DEFAULT_NAV_THRESHOLD
    aggregator: Method = Method.MAJORITY
    mute_url_lfs: bool = False
    lf_overrides: Mapping[str, bool] = field(default_factory=dict)
    include_votes: bool = False
    workers: int = 1
    weights_file: Optional[str] = None

    def __post_init__(self):
        if not 0.0 < self.nav_threshold <= 1.0:
            raise ValueError(f"nav_threshold must be in (0, 1], got {self.nav_threshold}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        object.__setattr__(self, "lf_overrides", dict(self.lf_overrides))

    def resolved_lexicon_dir(self) -> Optional[str]:
        """Explicit setting, else ``$INTENT_LEXICONS``, else None (bundled)."""
        return self.lexicon_dir or os.environ.get(LEXICON_ENV_VAR) or None

    def updated(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        if "lf_overrides" in changes:
            merged = dict(self.lf_overrides)
            merged.update(changes["lf_overrides"])
            changes["lf_overrides"] = merged
        return replace(self, **changes)


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, object]:
    """Parse ``key = value`` lines into keyword arguments for :class:`RunConfig`.

    Recognised keys: ``lexicons``, ``nav_threshold``, ``aggregator``,
    ``mute_url_lfs``, ``include_votes``, ``workers``, ``weights`` and
    ``lf.<id>.enabled``.
    """
    out: Dict[str, object] = {}
    overrides: Dict[str, bool] = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{source}:{line_no}: expected 'key = value'")
        key, value = key.strip(), value.strip()
        where = f"{source}:{line_no}"
        if key.startswith("lf.") and key.endswith(".enabled"):
            overrides[key[3:-8]] = _parse_bool(value, where)
        elif key in ("lexicons", "lexicon_dir"):
            out["lexicon_dir"] = value
        elif key == "nav_threshold":
            out["nav_threshold"] = float(value)
        elif key == "aggregator":
            out["aggregator"] = Method(value.lower())
        elif key in ("mute_url_lfs", "include_votes"):
            out[key] = _parse_bool(value, where)
        elif key == "workers":
            out["workers"] = int(value)
        elif key in ("weights", "weights_file"):
            out["weights_file"] = value
        else:
            raise ValueError(f"{where}: unknown key {key!r}")
    if overrides:
        out["lf_overrides"] = overrides
    return out


def load_config(path: Union[str, os.PathLike], base: Optional[RunConfig] = None) -> RunConfig:
    base = base or RunConfig()
    text = Path(path).read_text(encoding="utf-8")
    return base.updated(**parse_config_text(text, str(path)))
