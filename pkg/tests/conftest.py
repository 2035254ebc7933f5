import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gcmanifolds import graphs, homcomplex, producttri
from gcmanifolds.graphs import Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def small_graphs(draw, min_vertices=0, max_vertices=8):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


@pytest.fixture(scope="session")
def c5k4():
    return homcomplex.build_hom(graphs.cycle(5), graphs.complete(4))


@pytest.fixture(scope="session")
def c5k4_tri(c5k4):
    return producttri.product_triangulation(c5k4)


def pytest_configure(config):
    config.addinivalue_line("markers", "stretch: large optional instances (deselect with -m 'not stretch')")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, verdict, elapsed, why in sorted(mod.RESULTS):
        line = f"{verdict} criterion {number:2d} ({elapsed:7.1f}s): {title}"
        terminalreporter.write_line(line + (f"  [{why}]" if why else ""))
