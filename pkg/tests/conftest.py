import contextlib
import os

import pytest
from hypothesis import HealthCheck, settings

# derandomized so that a run is reproducible; override with HYPOTHESIS_PROFILE=explore
settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("explore", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


# --------------------------------------------------------------------------
# one PASS/FAIL line per acceptance criterion, repeated in the terminal summary

ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    @contextlib.contextmanager
    def record(number, title):
        info = {"detail": ""}
        try:
            yield info
        except BaseException as exc:
            msg = f"{type(exc).__name__}: {exc}".splitlines()[0][:200]
            line = f"FAIL criterion {number} ({title}): {msg}"
            lines.append((number, line))
            print(line)
            raise
        line = f"PASS criterion {number} ({title}): {info['detail']}"
        lines.append((number, line))
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
