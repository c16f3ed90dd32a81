"""Certification reports: named exact checks, JSON/markdown output, and a verifier.

A report is self-contained.  Every check stores both sides as exact strings,
so :func:`verify_report` can re-decide every relation from the JSON alone.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .vectors import Extended, format_rational, parse_rational

RELATIONS: dict[str, Callable[[Any, Any], bool]] = {
    "=": lambda a, b: a == b,
    "<": lambda a, b: a < b,
    "≤": lambda a, b: a <= b,
    "≥": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}
_ALIASES = {"==": "=", "<=": "≤", ">=": "≥"}


def canonical_rel(rel: str) -> str:
    rel = _ALIASES.get(rel, rel)
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}")
    return rel


def _exact(value: Extended) -> Extended:
    if isinstance(value, float) and math.isinf(value):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"check values must be exact, got {value!r}")


@dataclass(frozen=True)
class Check:
    name: str
    lhs: Extended
    rel: str
    rhs: Extended
    anchor: str

    def __post_init__(self):
        object.__setattr__(self, "rel", canonical_rel(self.rel))
        object.__setattr__(self, "lhs", _exact(self.lhs))
        object.__setattr__(self, "rhs", _exact(self.rhs))

    @property
    def passed(self) -> bool:
        return RELATIONS[self.rel](self.lhs, self.rhs)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": format_rational(self.lhs),
            "rel": self.rel,
            "rhs": format_rational(self.rhs),
            "pass": self.passed,
            "paper_anchor": self.anchor,
        }


@dataclass
class Fragment:
    """Partial report produced by a single certification routine."""

    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def check(self, name: str, lhs, rel: str, rhs, anchor: str) -> Check:
        c = Check(name, lhs, rel, rhs, anchor)
        self.checks.append(c)
        return c

    def extend(self, other: "Fragment") -> "Fragment":
        self.checks += other.checks
        self.notes += other.notes
        self.data.update(other.data)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass
class CertReport:
    scenario: str
    config: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    errors: list[dict[str, str]] = field(default_factory=list)

    def add(self, fragment: Fragment) -> None:
        self.checks += fragment.checks
        self.notes += fragment.notes

    @property
    def n_passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def n_failed(self) -> int:
        return len(self.checks) - self.n_passed

    @property
    def ok(self) -> bool:
        return not self.errors and self.n_failed == 0 and bool(self.checks)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "config": self.config,
            "checks": [c.to_json() for c in self.checks],
            "summary": {"passed": self.n_passed, "failed": self.n_failed},
            "notes": list(self.notes),
            "errors": list(self.errors),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_markdown(self) -> str:
        lines = [f"# Report: {self.scenario}", "", "## Configuration", ""]
        lines += [f"- {k}: `{v}`" for k, v in self.config.items()]
        lines += ["", "## Checks", "", "| # | check | lhs | rel | rhs | pass | statement |",
                  "|---|---|---|---|---|---|---|"]
        for i, c in enumerate(self.checks, 1):
            j = c.to_json()
            mark = "yes" if j["pass"] else "NO"
            lines.append(f"| {i} | {j['name']} | {j['lhs']} | {j['rel']} | {j['rhs']} | {mark} "
                         f"| {j['paper_anchor']} |")
        lines += ["", f"**Summary:** {self.n_passed} passed, {self.n_failed} failed", ""]
        if self.notes:
            lines += ["## Notes", ""] + [f"- {n}" for n in self.notes] + [""]
        if self.errors:
            lines += ["## Errors", ""] + [f"- {e['type']}: {e['message']}" for e in self.errors] + [""]
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "markdown":
            return self.to_markdown()
        raise ValueError(f"unknown format {fmt!r}")


def verify_report(data: dict | str) -> list[str]:
    """Re-decide every check from serialized values; return disagreements.

    An empty list means every ``pass`` flag and the summary are consistent
    with the exact values, and every check carries a non-empty anchor.
    """
    if isinstance(data, str):
        data = json.loads(data)
    problems = []
    passed = 0
    for i, c in enumerate(data["checks"]):
        try:
            holds = RELATIONS[canonical_rel(c["rel"])](parse_rational(c["lhs"]), parse_rational(c["rhs"]))
        except (ValueError, KeyError, ZeroDivisionError) as exc:
            problems.append(f"check {i} ({c.get('name')}): unreadable ({exc})")
            continue
        if holds != c["pass"]:
            problems.append(f"check {i} ({c['name']}): flag {c['pass']} but relation is {holds}")
        if not c.get("paper_anchor"):
            problems.append(f"check {i} ({c['name']}): missing anchor")
        passed += holds
    summary = data.get("summary", {})
    if summary.get("passed") != passed or summary.get("failed") != len(data["checks"]) - passed:
        problems.append("summary counts disagree with the checks")
    return problems
