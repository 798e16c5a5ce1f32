import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from mbkit import graphs as gr

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return gr.Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def connected_graphs(draw, min_n=1, max_n=10):
    """Random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    edges = {(p, v) for v, p in zip(range(1, n), parents)}
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=2 * n)) if pairs else []
    return gr.Graph.from_edges(n, edges | set(extra))


@pytest.fixture
def c4():
    return gr.cycle_graph(4)


def random_gram_factor(rng, n, k, c=1.0):
    Q, _ = np.linalg.qr(rng.standard_normal((n, k)))
    return Q * np.sqrt(c)


# ---------------------------------------------------------------- acceptance lines
ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """``record(number, ok, detail)``; parts of one criterion are combined in the summary."""

    def record(number, ok, detail=""):
        ACCEPTANCE.setdefault(number, []).append((bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[number]
        verdict = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        detail = "; ".join(d for _, d in parts if d)
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {detail}")
