import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import sacdecide  # noqa: E402
from sacdecide import engine  # noqa: E402

# Every in-process decide() call is logged as (degree_sum - 2, observed depth,
# trace length) so the depth bound can be checked across the whole session.
DEPTH_LOG = []

_decide = engine.decide


def _recording_decide(u, v, mode=engine.Mode.CLOSURE, max_depth=None):
    d = _decide(u, v, mode, max_depth)
    if max_depth is None:
        DEPTH_LOG.append((d.bound, d.stats.max_depth, len(d.trace)))
    return d


engine.decide = _recording_decide
sacdecide.decide = _recording_decide

CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        CRITERIA[n] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            title, status = CRITERIA[n]
            terminalreporter.write_line(f"criterion {n}: {status}  {title}")
    if DEPTH_LOG:
        worst = max(depth - bound for bound, depth, _ in DEPTH_LOG)
        ok = worst <= 0 and all(n <= b for b, _, n in DEPTH_LOG)
        terminalreporter.write_line(
            f"depth bound over {len(DEPTH_LOG)} decide runs this session: "
            f"{'held' if ok else 'VIOLATED'} (max depth - bound = {worst})"
        )
