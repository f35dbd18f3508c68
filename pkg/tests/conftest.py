import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import reference_data  # noqa: E402
from sharedpda import normalize_profile, validate_gpda, validate_pda  # noqa: E402


@pytest.fixture
def P():
    return validate_pda(reference_data.P_CELLS)


@pytest.fixture
def P_prime():
    return validate_pda(reference_data.P_PRIME_CELLS)


@pytest.fixture
def profile_a():
    return normalize_profile(reference_data.PROFILE_A)


@pytest.fixture
def profile_ex2():
    return normalize_profile(reference_data.PROFILE_EX2)


@pytest.fixture
def G():
    return validate_gpda(reference_data.G_CELLS, reference_data.USER_TO_CACHE_A)


_criteria: dict[int, list] = {}
_markers: dict[str, tuple[int, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number n")


def pytest_runtest_logreport(report):
    marker = _markers.get(report.nodeid)
    if marker is None or (report.when != "call" and report.passed):
        return
    n, text = marker
    entry = _criteria.setdefault(n, [text, True])
    entry[1] = entry[1] and report.passed


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _markers[item.nodeid] = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}")
