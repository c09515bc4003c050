import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# Criterion id -> (passed, detail); filled by test_acceptance.py.
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[cid]
        terminalreporter.write_line(f"criterion {cid:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
