import sys
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kfusion.labels import canonicalize, parse_label  # noqa: E402

ACCEPTANCE = {}


def parse_sum(text, k):
    """'U:0:v1 + T1:2:+*2' -> {label: multiplicity} with canonical labels."""
    out = Counter()
    for term in text.split(" + "):
        lab, _, mult = term.strip().partition("*")
        out[canonicalize(parse_label(lab), k)] += int(mult or 1)
    return dict(out)


@pytest.fixture
def record():
    def _record(number, title, ok, detail=""):
        ACCEPTANCE[number] = (title, ok, detail)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
