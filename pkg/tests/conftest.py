"""Shared fixtures plus the acceptance-criteria summary table.

Acceptance tests record one (id, description, passed, detail) tuple each;
the terminal-summary hook prints one PASS/FAIL line per criterion after the
run so the gate status is visible even with captured stdout.
"""

import numpy as np
import pytest

_acceptance_results = []


def record_criterion(cid, description, passed, detail=""):
    _acceptance_results.append((cid, description, bool(passed), detail))


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for cid, desc, ok, detail in sorted(_acceptance_results):
        status = "PASS" if ok else "FAIL"
        suffix = f"  [{detail}]" if detail else ""
        terminalreporter.write_line(f"criterion {cid:2d}: {status} - {desc}{suffix}")
