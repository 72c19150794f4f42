"""Acceptance criteria, one test per check, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` for just the lines.
"""
import json
import sys

import pytest

from relinv.suite import CHECKS, EXPRESSIONS, Context, run_check

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # standalone run outside pytest's rootdir
    ACCEPTANCE_LINES = []

_CTX = Context(EXPRESSIONS, seed=0)


def _line(entry):
    tier = " [heavy]" if entry["heavy"] else ""
    return (f"criterion {entry['criterion']}: {entry['status'].upper()} {entry['name']}{tier} "
            f"({entry['seconds']:.2f}s, target {entry['target_seconds']}s)")


def _id(check):
    return f"c{check.criterion}-{'heavy' if check.heavy else 'fast'}-{check.name.split(':')[0].replace(' ', '_')}"


@pytest.mark.parametrize("check", CHECKS, ids=[_id(c) for c in CHECKS])
def test_criterion(check):
    entry = run_check(check, _CTX)
    line = _line(entry)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert entry["status"] == "pass", json.dumps(entry.get("failures"), indent=2)
    assert entry["seconds"] <= entry["target_seconds"], line


if __name__ == "__main__":
    ok = True
    for c in CHECKS:
        e = run_check(c, _CTX)
        print(_line(e))
        ok &= e["status"] == "pass" and e["seconds"] <= e["target_seconds"]
    sys.exit(0 if ok else 1)
