import os

import pytest
from hypothesis import settings

from degree2.graphs import complete, complete_bipartite, cycle, edgeless, path

settings.register_profile("default", max_examples=150, deadline=None)
settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


SMALL_GRAPHS = {
    "K2": complete(2),
    "K3": complete(3),
    "P3": path(3),
    "C4": cycle(4),
    "K22": complete_bipartite(2, 2),
    "N3": edgeless(3),
}


@pytest.fixture(params=sorted(SMALL_GRAPHS))
def small_graph(request):
    return SMALL_GRAPHS[request.param]


# -- acceptance summary ---------------------------------------------------------

def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n = marker.args[0]
    ok = call.excinfo is None
    prev = item.config._criteria.get(n, (True, item.name))
    item.config._criteria[n] = (prev[0] and ok, item.name)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, name = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({name})")
