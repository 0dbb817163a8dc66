"""Scenario reports and their JSON / CSV serializations."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable

from . import __version__

Number = complex | float | int

CSV_HEADER = "scenario,name,value_re,value_im,expected_re,expected_im,pass,provenance"


@dataclass
class Entry:
    name: str
    value: Number
    expected: Number | None = None
    provenance: str = ""
    tolerance: float | None = None
    passed: bool | None = None

    def check(self, default_tol: float) -> None:
        if self.expected is None:
            self.passed = None
            return
        tol = default_tol if self.tolerance is None else self.tolerance
        self.passed = bool(abs(complex(self.value) - complex(self.expected)) <= tol)


@dataclass
class ScenarioReport:
    scenario: str
    entries: list[Entry] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, name, value, expected=None, provenance="", tolerance=None) -> Entry:
        e = Entry(name, value, expected, provenance, tolerance)
        self.entries.append(e)
        return e

    def finalize(self, tolerance: float) -> "ScenarioReport":
        for e in self.entries:
            e.check(tolerance)
        return self

    @property
    def ok(self) -> bool:
        return all(e.passed is not False for e in self.entries)

    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.passed is False]

    def __getitem__(self, name: str) -> Entry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def _num(x: float):
    x = float(x) + 0.0  # drops the sign of negative zero
    # JSON has no NaN / inf
    return x if math.isfinite(x) else None


def _cplx(v: Number | None):
    if v is None:
        return None
    c = complex(v)
    return {"re": _num(c.real), "im": _num(c.imag)}


def _plain(obj):
    if isinstance(obj, complex):
        return _cplx(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def report_to_dict(r: ScenarioReport) -> dict:
    return {
        "scenario": r.scenario,
        "metadata": _plain({"version": __version__, **r.metadata}),
        "entries": [
            {
                "name": e.name,
                "value": _cplx(e.value),
                "expected": _cplx(e.expected),
                "provenance": e.provenance,
                "pass": e.passed,
            }
            for e in r.entries
        ],
    }


def to_json(reports: Iterable[ScenarioReport]) -> str:
    # float repr is the shortest string that round-trips a double (<= 17 digits)
    return json.dumps([report_to_dict(r) for r in reports], separators=(",", ":")) + "\n"


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x) + 0.0)


def _quote(s: str) -> str:
    return '"' + s.replace('"', '""') + '"'


def to_csv(reports: Iterable[ScenarioReport]) -> str:
    lines = [CSV_HEADER]
    for r in reports:
        for e in r.entries:
            v = complex(e.value)
            x = None if e.expected is None else complex(e.expected)
            lines.append(
                ",".join(
                    [
                        r.scenario,
                        e.name,
                        _fmt(v.real),
                        _fmt(v.imag),
                        _fmt(None if x is None else x.real),
                        _fmt(None if x is None else x.imag),
                        "" if e.passed is None else str(e.passed).lower(),
                        _quote(e.provenance),
                    ]
                )
            )
    return "\n".join(lines) + "\n"


def emit(reports: list[ScenarioReport], fmt: str = "json", sink: IO[str] | str | None = None) -> str:
    """Serialize ``reports`` and write them to ``sink`` (a path, a text stream, or nothing)."""
    if fmt == "json":
        text = to_json(reports)
    elif fmt == "csv":
        text = to_csv(reports)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if sink is None:
        return text
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sink.write(text)
    return text


def read_json(text: str | io.TextIOBase) -> list[dict]:
    if not isinstance(text, str):
        text = text.read()
    return json.loads(text)
