"""Checked-in expected values, regenerated by ``scripts/regenerate_expected.py``."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=1)
def _load() -> dict:
    text = resources.files("postselect").joinpath("data/expected.json").read_text("utf-8")
    return json.loads(text)


def expected_for(scenario: str) -> dict[str, tuple[complex, str, float | None]]:
    """``{entry name: (value, provenance, tolerance or None)}`` for one scenario."""
    out = {}
    for name, rec in _load().get(scenario, {}).items():
        v = rec["value"]
        out[name] = (complex(v["re"], v["im"]), rec["provenance"], rec.get("tolerance"))
    return out


def source_of(scenario: str, name: str) -> str:
    return _load()[scenario][name]["source"]
