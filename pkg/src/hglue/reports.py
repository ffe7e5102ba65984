"""Report envelopes and CSV artifacts for the command-line tools.

Envelopes are JSON documents with a fixed schema tag, the echoed command
and parameters, and a list of named results each carrying a tolerance and
a pass/fail/skipped verdict.  Serialization is deterministic (sorted keys,
fixed separators) so two runs with equal inputs differ only in the
timestamp field.
"""

from __future__ import annotations

import datetime
import json

from .errors import IoError

__all__ = [
    "result_entry",
    "make_envelope",
    "envelope_to_json",
    "write_json",
    "write_csv",
    "overall_verdict",
]

SCHEMA_VERSION = "1"


def result_entry(name, value, tolerance=None, verdict="pass", detail=None):
    """One named result with its tolerance and verdict."""
    if verdict not in ("pass", "fail", "skipped"):
        raise ValueError(f"unknown verdict {verdict!r}")
    entry = {"name": name, "value": value, "tolerance": tolerance, "verdict": verdict}
    if detail is not None:
        entry["detail"] = detail
    return entry


def make_envelope(command, params, results):
    """Assemble the report envelope for one command invocation."""
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "params": params,
        "results": results,
    }


def _default(obj):
    try:
        import numpy as np

        if isinstance(obj, (np.integer,)):
            return int(obj)
        if isinstance(obj, (np.floating,)):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
    except ImportError:
        pass
    from fractions import Fraction

    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def envelope_to_json(envelope):
    return json.dumps(envelope, sort_keys=True, indent=2, default=_default) + "\n"


def write_json(path, envelope):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(envelope_to_json(envelope))
    except OSError as exc:
        raise IoError(f"cannot write report to {path}: {exc}") from exc


def write_csv(path, header, rows):
    """Write a simple CSV artifact with a fixed header row."""
    import csv

    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow(row)
    except OSError as exc:
        raise IoError(f"cannot write CSV to {path}: {exc}") from exc


def overall_verdict(results):
    """"pass" unless some result failed; skipped entries do not fail."""
    if any(r["verdict"] == "fail" for r in results):
        return "fail"
    return "pass"
