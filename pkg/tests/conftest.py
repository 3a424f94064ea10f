import pytest

from nlroute import Graph, GridSpec, generate_grid


@pytest.fixture
def single_edge():
    return Graph.from_edges(2, [(0, 1, 3.0, 4.0)])


@pytest.fixture
def loop_graph():
    # s=0 -> t=1 plus a self-loop at s
    return Graph.from_edges(2, [(0, 1, 1.0, 2.0), (0, 0, 0.5, 1.5)])


@pytest.fixture
def grid5():
    return generate_grid(GridSpec(5, 5, seed=7))


_criteria_lines = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for an acceptance criterion."""

    def record(label, ok, detail=""):
        _criteria_lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criteria_lines:
            terminalreporter.write_line(line)
