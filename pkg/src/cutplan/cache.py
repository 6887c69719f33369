"""Persistent library of solved fraction plans, keyed by structure digest.

The fractions depend only on the minimal cutset matrix, so one solve serves
every future budget for the same structure.  Entries store exact fraction
strings plus solver provenance; anything that fails validation is treated as
corrupt, warned about, and recomputed.
"""

from __future__ import annotations

import json
import logging
import os
from fractions import Fraction
from pathlib import Path

from .errors import CutplanError
from .planner import FractionPlan

log = logging.getLogger("cutplan.cache")

ENTRY_VERSION = 1
ENV_CACHE_DIR = "CUTPLAN_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cutplan"


class PlanCache:
    """Directory of one JSON entry per solved structure."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def entry_path(self, digest: str) -> Path:
        return self.directory / ("%s.json" % digest)

    def lookup(self, digest: str) -> FractionPlan | None:
        """Return the stored plan, or None on miss or corrupt entry."""
        path = self.entry_path(digest)
        if not path.exists():
            return None
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
            if raw["entry_version"] != ENTRY_VERSION:
                raise ValueError("unsupported entry_version %r" % raw["entry_version"])
            if raw["digest"] != digest:
                raise ValueError("entry digest does not match its file name")
            return FractionPlan(
                fractions=tuple(Fraction(f) for f in raw["fractions"]),
                cutset_fraction=Fraction(raw["cutset_fraction"]),
                n_zero=int(raw["n_zero"]),
                multiple_optima=bool(raw["multiple_optima"]),
            )
        except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError, CutplanError) as exc:
            log.warning("ignoring corrupt cache entry %s: %s", path, exc)
            return None

    def store(self, digest: str, plan: FractionPlan) -> Path:
        from . import __version__

        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.entry_path(digest)
        payload = {
            "entry_version": ENTRY_VERSION,
            "digest": digest,
            "fractions": [str(f) for f in plan.fractions],
            "cutset_fraction": str(plan.cutset_fraction),
            "n_zero": plan.n_zero,
            "multiple_optima": plan.multiple_optima,
            "solver": {
                "name": "cutplan exact simplex (Bland pivoting)",
                "package_version": __version__,
            },
        }
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        tmp.replace(path)
        return path
