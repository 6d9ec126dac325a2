import pytest

from tatecx.corpus import fixture_example_31, fixture_square_zero, fixture_z4

# criterion number -> (passed, title); filled by test_acceptance
ACCEPTANCE_LINES: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def ex31():
    return fixture_example_31()


@pytest.fixture(scope="session")
def ex31_p3():
    return fixture_example_31(3)


@pytest.fixture(scope="session")
def z4():
    return fixture_z4()


@pytest.fixture(scope="session")
def sq():
    return fixture_square_zero()


@pytest.fixture(scope="session")
def sq_p3():
    return fixture_square_zero(3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        ok, title = ACCEPTANCE_LINES[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
