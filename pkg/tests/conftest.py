from __future__ import annotations

import pytest

_LINES: dict[str, list[tuple[bool, str]]] = {}


class AcceptanceLog:
    """Collects sub-check verdicts; one summary line per criterion is printed at the end."""

    def record(self, criterion: str, ok: bool, detail: str) -> bool:
        _LINES.setdefault(criterion, []).append((bool(ok), detail))
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok


@pytest.fixture
def acceptance() -> AcceptanceLog:
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_LINES):
        checks = _LINES[criterion]
        ok = all(c for c, _ in checks)
        failed = [d for c, d in checks if not c]
        note = f" ({'; '.join(failed)})" if failed else f" ({len(checks)} checks)"
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}{note}")
