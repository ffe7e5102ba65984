"""Tests for report envelopes, JSON/CSV artifacts, and verdict folding."""

import json
from fractions import Fraction

import numpy as np
import pytest

from hglue import reports
from hglue.errors import IoError


def test_result_entry_shape_and_verdicts():
    e = reports.result_entry("slope", 0.4, tolerance=0.05)
    assert e == {"name": "slope", "value": 0.4, "tolerance": 0.05, "verdict": "pass"}
    e = reports.result_entry("gap", 1.0, verdict="fail", detail="too big")
    assert e["detail"] == "too big" and e["verdict"] == "fail"
    reports.result_entry("x", None, verdict="skipped")
    with pytest.raises(ValueError):
        reports.result_entry("x", 1.0, verdict="ok")


def test_envelope_roundtrip_and_determinism():
    results = [reports.result_entry("a", 1)]
    env1 = reports.make_envelope("verify-algebra", {"seed": 0}, results)
    env2 = reports.make_envelope("verify-algebra", {"seed": 0}, results)
    assert env1["schema"] == reports.SCHEMA_VERSION
    s1 = reports.envelope_to_json(env1)
    s2 = reports.envelope_to_json(env2)
    d1, d2 = json.loads(s1), json.loads(s2)
    d1.pop("timestamp"), d2.pop("timestamp")
    assert d1 == d2  # runs differ only in the timestamp
    assert s1.endswith("\n")
    # sorted keys at every level
    top = list(json.loads(s1))
    assert top == sorted(top)


def test_json_encoders_for_numeric_types():
    env = reports.make_envelope(
        "x",
        {},
        [
            reports.result_entry("i", np.int64(3)),
            reports.result_entry("f", np.float64(0.5)),
            reports.result_entry("arr", np.arange(3)),
            reports.result_entry("frac", Fraction(7, 3)),
            reports.result_entry("z", 1 + 2j),
        ],
    )
    decoded = json.loads(reports.envelope_to_json(env))
    values = {r["name"]: r["value"] for r in decoded["results"]}
    assert values == {"i": 3, "f": 0.5, "arr": [0, 1, 2], "frac": "7/3", "z": [1.0, 2.0]}
    with pytest.raises(TypeError):
        reports.envelope_to_json({"bad": object()})


def test_write_json_and_csv(tmp_path):
    env = reports.make_envelope("x", {}, [reports.result_entry("a", 1)])
    jpath = tmp_path / "out.json"
    reports.write_json(jpath, env)
    assert json.loads(jpath.read_text())["command"] == "x"
    cpath = tmp_path / "out.csv"
    reports.write_csv(cpath, ["R", "sup"], [[0.1, 1e-3], [0.05, 5e-4]])
    lines = cpath.read_text().strip().splitlines()
    assert lines[0] == "R,sup"
    assert len(lines) == 3
    with pytest.raises(IoError):
        reports.write_json(tmp_path / "missing" / "out.json", env)
    with pytest.raises(IoError):
        reports.write_csv(tmp_path / "missing" / "out.csv", ["a"], [])


def test_overall_verdict():
    mk = reports.result_entry
    assert reports.overall_verdict([mk("a", 1), mk("b", 2)]) == "pass"
    assert reports.overall_verdict([mk("a", 1, verdict="skipped")]) == "pass"
    assert reports.overall_verdict([mk("a", 1), mk("b", 2, verdict="fail")]) == "fail"
    assert reports.overall_verdict([]) == "pass"
