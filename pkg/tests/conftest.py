import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_([a-z0-9_]+)")


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion (parametrized cases are merged)."""
    verdicts = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not m or (getattr(rep, "when", "call") != "call" and key == "passed"):
                continue
            num = int(m.group(1))
            desc = m.group(2).replace("_", " ")
            first, ok = verdicts.get(num, (desc, True))
            verdicts[num] = (min(first, desc, key=len), ok and key == "passed")
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for num in sorted(verdicts):
            desc, ok = verdicts[num]
            terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
