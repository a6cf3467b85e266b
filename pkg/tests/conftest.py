import pytest
from hypothesis import settings

from lconvex import instances
from lconvex.quantale import build_chain_quantale, diamond_frame

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def all_quantales():
    return [
        build_chain_quantale(2, "godel"),
        build_chain_quantale(3, "godel"),
        build_chain_quantale(3, "lukasiewicz"),
        build_chain_quantale(4, "godel"),
        build_chain_quantale(5, "lukasiewicz"),
        diamond_frame(),
    ]


@pytest.fixture
def g3():
    return instances.godel3()


@pytest.fixture
def l3():
    return instances.lukasiewicz3()


@pytest.fixture
def boolean():
    return instances.boolean()


@pytest.fixture
def worked():
    return instances.godel_worked_space()


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[number])
