from __future__ import annotations

import pytest

# criterion label -> (outcome, detail), filled in by test_acceptance.py
ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    label = getattr(item.function, "criterion", None)
    if label is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        status = "PASS" if rep.passed else "SKIP" if rep.skipped else "FAIL"
        detail = ACCEPTANCE.get(label, ("", ""))[1]
        if rep.skipped and isinstance(rep.longrepr, tuple):
            detail = rep.longrepr[2]
        ACCEPTANCE[label] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: (int(s.split()[0].rstrip("ab")), s)):
        status, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{status}  criterion {label}  {detail}")
