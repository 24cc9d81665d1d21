import pytest

from alcovekit.affine import AffineWeylGroup
from alcovekit.rootdatum import preset


_groups = {}


def group(key):
    if key not in _groups:
        _groups[key] = AffineWeylGroup(preset(key))
    return _groups[key]


def elements_up_to(G, max_len, start=None):
    """All ``u * start`` with ``u`` in ``W_aff`` of length at most ``max_len``,
    by breadth-first search over left multiplication."""
    start = G.identity if start is None else start
    levels = [{start}]
    seen = {start}
    for _ in range(max_len):
        nxt = set()
        for x in levels[-1]:
            for lab in G.labels:
                y = G.lmul(lab, x)
                if y not in seen and G.length(y) == G.length(x) + 1:
                    nxt.add(y)
        seen |= nxt
        levels.append(nxt)
    return sorted(seen, key=lambda x: (G.length(x), x.sort_key()))


@pytest.fixture
def A1():
    return group("A1-sc")


@pytest.fixture
def A2():
    return group("A2-sc")


@pytest.fixture
def C2():
    return group("C2-sc")


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
