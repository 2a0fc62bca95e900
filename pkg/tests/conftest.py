import numpy as np
import pytest
from hypothesis import settings

from curveflow import kernels

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")

BACKENDS = sorted(kernels.backends())


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            n = mark.args[0]
            title = getattr(item.module, "CRITERIA", {}).get(n, "")
            item.user_properties.append(("criterion", (n, title)))


_outcomes = {}


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome == "failed":
        ok = report.outcome in ("passed", "skipped")
        _outcomes.setdefault(crit, []).append(ok)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), oks in sorted(_outcomes.items()):
        status = "PASS" if all(oks) else "FAIL"
        terminalreporter.write_line(
            f"criterion {n}: {status}  ({sum(oks)}/{len(oks)} checks)  {title}")
