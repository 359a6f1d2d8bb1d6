from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from pcgroups.corpus import DATA_DIR, builtin, load_catalog, load_corpus

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def J():
    return builtin("J").group


@pytest.fixture(scope="session")
def fixtures_corpus():
    return load_catalog(DATA_DIR / "fixtures", "fixture")


@pytest.fixture(scope="session")
def three_groups():
    return load_catalog(DATA_DIR / "catalog" / "3-groups")


@pytest.fixture(scope="session")
def two_groups():
    return load_catalog(DATA_DIR / "catalog" / "2-groups")


@pytest.fixture(scope="session")
def full_corpus():
    dirs = [DATA_DIR / "fixtures"] + sorted(p for p in (DATA_DIR / "catalog").iterdir() if p.is_dir())
    return load_corpus(dirs)


@pytest.fixture(scope="session")
def small_groups(three_groups, two_groups):
    """Every catalog group of order at most 81, plus the other small primes."""
    others = load_catalog(DATA_DIR / "catalog" / "5-groups") + load_catalog(DATA_DIR / "catalog" / "7-groups")
    return [e for e in three_groups + two_groups + others if e.order <= 81]
