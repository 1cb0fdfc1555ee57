from __future__ import annotations

import pytest


@pytest.fixture(autouse=True, scope="session")
def _cache_dir(tmp_path_factory):
    # keep the Bernoulli cache out of the working tree
    mp = pytest.MonkeyPatch()
    mp.setenv("LOCMZV_CACHE_DIR", str(tmp_path_factory.mktemp("cache")))
    yield
    mp.undo()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in list(sys.modules.items()) if name.split(".")[-1] == "test_acceptance"), None)
    rows = getattr(mod, "RESULTS", None)
    if rows:
        terminalreporter.section("acceptance criteria")
        for row in rows:
            terminalreporter.write_line(row)
