from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest

from monopath.report import Check, CertReport, Fragment, canonical_rel, verify_report


def _report():
    frag = Fragment()
    frag.check("one third below a half", Fraction(1, 3), "<", Fraction(1, 2), "ordering")
    frag.check("infinite value", math.inf, ">=", 7, "ordering")
    frag.check("deliberately false", 2, "==", 3, "equality")
    frag.notes.append("hand-made")
    return CertReport("demo", {"N": 3}, frag.checks, frag.notes)


def test_check_values_and_aliases():
    c = Check("x", 1, "<=", Fraction(3, 2), "a")
    assert c.rel == "≤" and c.passed
    assert c.to_json() == {"name": "x", "lhs": "1", "rel": "≤", "rhs": "3/2", "pass": True,
                           "paper_anchor": "a"}
    assert canonical_rel(">=") == "≥"
    with pytest.raises(ValueError):
        canonical_rel("~")


@pytest.mark.parametrize("bad", [0.5, True, "1"])
def test_check_rejects_inexact(bad):
    with pytest.raises(TypeError):
        Check("x", bad, "=", 0, "a")


def test_report_counts_and_json_roundtrip():
    rep = _report()
    assert (rep.n_passed, rep.n_failed, rep.ok) == (2, 1, False)
    data = json.loads(rep.to_json())
    assert data["summary"] == {"passed": 2, "failed": 1}
    assert data["checks"][1]["lhs"] == "inf"
    assert verify_report(rep.to_json()) == []
    assert rep.to_json().endswith("\n")


def test_verify_report_catches_tampering():
    data = _report().to_dict()
    data["checks"][0]["pass"] = False
    assert any("flag" in p for p in verify_report(data))
    data = _report().to_dict()
    data["checks"][2]["paper_anchor"] = ""
    assert any("anchor" in p for p in verify_report(data))
    data = _report().to_dict()
    data["summary"]["passed"] = 3
    assert any("summary" in p for p in verify_report(data))
    data = _report().to_dict()
    data["checks"][0]["lhs"] = "one"
    assert any("unreadable" in p for p in verify_report(data))


def test_markdown_rendering():
    rep = _report()
    rep.errors.append({"type": "PreconditionError", "message": "boom"})
    md = rep.render("markdown")
    assert md.startswith("# Report: demo")
    assert "| 3 | deliberately false | 2 | = | 3 | NO | equality |" in md
    assert "**Summary:** 2 passed, 1 failed" in md
    assert "- PreconditionError: boom" in md
    with pytest.raises(ValueError):
        rep.render("yaml")


def test_empty_report_is_not_ok():
    assert not CertReport("empty", {}).ok


def test_fragment_extend():
    a, b = Fragment(), Fragment()
    a.check("a", 0, "=", 0, "x")
    b.check("b", 1, ">", 0, "y")
    b.data["k"] = 1
    a.extend(b)
    assert [c.name for c in a.checks] == ["a", "b"] and a.data == {"k": 1} and a.passed
