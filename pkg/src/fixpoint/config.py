"""Resource budgets and their key-value config file.

The config file is INI-style; budgets live in a ``[budgets]`` section::

    [budgets]
    brute_force_cap = 25
    width = 20
    degree = 12
    table = 2000000

The path is taken from the ``FIXPOINT_CONFIG`` environment variable unless
given explicitly.  Explicit overrides (command-line flags) win over the file.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, fields, replace

from fixpoint.errors import FormatError

ENV_VAR = "FIXPOINT_CONFIG"


@dataclass(frozen=True)
class Budgets:
    brute_force_cap: int = 25  # vertices enumerated exhaustively
    width: int = 20  # tree-decomposition width
    degree: int = 12  # max degree for formula/circuit -> table expansion
    table: int = 2_000_000  # rows/pairs materialised by the CSP route


def load_budgets(path: str | None = None, **overrides: int | None) -> Budgets:
    budgets = Budgets()
    path = path or os.environ.get(ENV_VAR)
    if path:
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_file(fh)
        except configparser.Error as exc:
            raise FormatError(f"cannot parse config file: {exc}", path) from None
        if parser.has_section("budgets"):
            known = {f.name for f in fields(Budgets)}
            values = {}
            for key, raw in parser.items("budgets"):
                if key not in known:
                    raise FormatError(f"unknown budget {key!r}", f"{path}:[budgets]")
                try:
                    values[key] = int(raw)
                except ValueError:
                    raise FormatError(f"budget {key} must be an integer, got {raw!r}", path) from None
            budgets = replace(budgets, **values)
    given = {k: v for k, v in overrides.items() if v is not None}
    return replace(budgets, **given)
