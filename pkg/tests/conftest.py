from itertools import combinations, product

import pytest
from hypothesis import strategies as st

from boxball.state import BoxBallState
from boxball.verify import random_corpus


def naive_greene(points, k, antichains=False):
    """Label every point with one of k families or none; keep the best valid labeling."""
    points = sorted(points)

    def comparable(a, b):
        return (a[0] <= b[0] and a[1] <= b[1]) or (b[0] <= a[0] and b[1] <= a[1])

    best = 0
    for labels in product(range(k + 1), repeat=len(points)):
        used = sum(1 for x in labels if x)
        if used <= best:
            continue
        ok = True
        for fam in range(1, k + 1):
            members = [p for p, x in zip(points, labels) if x == fam]
            for a, b in combinations(members, 2):
                if comparable(a, b) == antichains:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            best = used
    return best


def naive_tts(cells):
    """Move balls on a plain list, padding on the right as needed."""
    cells = list(cells) + [0] * (sum(cells) + 1)
    balls = [i for i, c in enumerate(cells) if c]
    for x in balls:
        y = x + 1
        while cells[y]:
            y += 1
        cells[x], cells[y] = 0, 1
    return cells


@st.composite
def states(draw, max_window=30, max_balls=10):
    width = draw(st.integers(0, max_window))
    cells = draw(st.lists(st.integers(0, 1), min_size=width, max_size=width))
    ones = [i for i, c in enumerate(cells) if c]
    for i in ones[max_balls:]:
        cells[i] = 0
    offset = draw(st.integers(-20, 20))
    return BoxBallState.from_cells(cells, offset)


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(seed=42, count=500, max_window=40, max_balls=12)


_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
