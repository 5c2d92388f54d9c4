from __future__ import annotations

import random
import warnings

import pytest
from hypothesis import HealthCheck, settings

from tkrpoly.errors import NonApcWarning

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DEFAULT_SEED = 20240517

_acceptance: dict[str, tuple[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help="seed for the randomized complexes used by property and acceptance tests")


def pytest_configure(config):
    # same mechanism as --hypothesis-seed, which still wins when given
    if config.getoption("--hypothesis-seed", None) is None:
        from hypothesis import core

        core.global_force_seed = config.getoption("--seed")


@pytest.fixture
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


@pytest.fixture(autouse=True)
def _quiet_non_apc():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonApcWarning)
        yield


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::", 1)[1]
        number = name[len("test_criterion_"):].split("_", 1)[0]
        _acceptance[name] = (number, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, (number, verdict) in sorted(_acceptance.items(), key=lambda kv: int(kv[1][0])):
        terminalreporter.write_line(f"criterion {number}: {verdict}  ({name})")
    seed = terminalreporter.config.getoption("--seed")
    terminalreporter.write_line(f"seed: {seed}")
