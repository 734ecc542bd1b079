"""Enumeration budgets.

Defaults can be overridden by a TOML file (``[budget]`` table), by the
``SYMSEP_BUDGET`` environment variable (collection cap), and finally by
explicit CLI flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

ENV_VAR = "SYMSEP_BUDGET"


@dataclass(frozen=True)
class Budget:
    max_members: int = 12870  # C(16, 8)
    max_collections: int = 250_000
    allow_long: bool = False  # gates the n = 4 verification runs


DEFAULT = Budget()


def load_budget(config_path: str | None = None, **overrides) -> Budget:
    budget = DEFAULT
    if config_path:
        with open(config_path, "rb") as fh:
            table = tomllib.load(fh).get("budget", {})
        budget = replace(budget, **{k: v for k, v in table.items() if k in Budget.__dataclass_fields__})
    env = os.environ.get(ENV_VAR)
    if env:
        budget = replace(budget, max_collections=int(env))
    return replace(budget, **{k: v for k, v in overrides.items() if v is not None})
