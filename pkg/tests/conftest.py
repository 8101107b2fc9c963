import pytest

from cstar.corpus import random_diagram_walks, random_multidivisors


@pytest.fixture(scope="session")
def md_corpus():
    return random_multidivisors(count=300, seed=1)


@pytest.fixture(scope="session")
def diagram_walks():
    return list(random_diagram_walks(count=200, seed=2))


def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def acceptance(request):
    return request.config._acceptance


def pytest_terminal_summary(terminalreporter, config):
    lines = config._acceptance
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
