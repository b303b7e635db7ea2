import pytest
from hypothesis import strategies as st

from acceptance_log import RESULTS
from netinspect.game import GameInstance, MixedStrategy
from netinspect.io import parse_instance


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture
def figure1():
    return parse_instance("figure1.json")


@pytest.fixture
def example2():
    return parse_instance("example2.json")


@pytest.fixture
def worked_strategies(figure1):
    s = figure1.positioning("v4", "v3")
    s_prime = figure1.positioning("v1", "v2")
    sigma1 = MixedStrategy.from_pairs([(s, 0.4), (s_prime, 0.6)])
    sigma2 = MixedStrategy.from_pairs([(figure1.plan("e1", "e3"), 0.2), (figure1.plan("e6"), 0.8)])
    return sigma1, sigma2


def layered(sizes, accuracies, b2):
    """Disjoint instance with |E_vi| = sizes[i]; component e{i}_{j} sits in layer j of node v{i}."""
    mon = {f"v{i}": [f"e{i}_{j}" for j in range(1, size + 1)] for i, size in enumerate(sizes, 1)}
    return GameInstance.from_sets(mon, accuracies, b2)


@st.composite
def instances(draw, max_nodes=4, max_components=6, max_sensors=3, max_budget=3, disjoint=False,
              perfect_ok=True):
    n = draw(st.integers(1, max_nodes))
    if disjoint:
        m = draw(st.integers(n, max(n, max_components)))
        owner = [draw(st.integers(0, n - 1)) for _ in range(m)]
        for v in range(n):
            owner[v] = v
        mon = [frozenset(e for e in range(m) if owner[e] == v) for v in range(n)]
    else:
        m = draw(st.integers(1, max_components))
        rows = [draw(st.sets(st.integers(0, m - 1), min_size=1, max_size=m)) for _ in range(n)]
        covered = set().union(*rows)
        for e in range(m):
            if e not in covered:
                rows[e % n].add(e)
        mon = [frozenset(r) for r in rows]
    b1 = draw(st.integers(0, min(n, max_sensors)))
    hi = 1.0 if perfect_ok else 0.99
    acc = [draw(st.floats(0.01, hi)) for _ in range(b1)]
    b2 = draw(st.integers(1, min(m, max_budget)))
    return GameInstance(tuple(f"v{i + 1}" for i in range(n)), tuple(f"e{j + 1}" for j in range(m)),
                        tuple(mon), tuple(acc), b2)
