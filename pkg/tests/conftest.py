import pytest

from mealysg import catalog


@pytest.fixture(scope="session")
def n0():
    return catalog.automaton("n0")


@pytest.fixture(scope="session")
def fp_trivial():
    return catalog.EXAMPLES["free-product-trivial"].build()


@pytest.fixture(scope="session")
def fp_c2():
    return catalog.EXAMPLES["free-product-c2"].build()


@pytest.fixture(scope="session")
def fp_n0():
    return catalog.EXAMPLES["free-product-n0"].build()


@pytest.fixture(scope="session")
def wreath():
    return catalog.automaton("n0_wreath_c2")


@pytest.fixture(scope="session")
def rees():
    return catalog.automaton("rees_f0_2x2")


@pytest.fixture(scope="session")
def semilattice():
    return catalog.automaton("semilattice_f2_n0")


@pytest.fixture(scope="session")
def sx():
    return catalog.automaton("f2_act_ext")


# -- acceptance report ------------------------------------------------------------

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash[ACCEPTANCE]

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        lines.append((number, line))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
