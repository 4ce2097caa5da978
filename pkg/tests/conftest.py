import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from matroid_adjoint import fixtures as fx  # noqa: E402
from matroid_adjoint.gf import MatrixF  # noqa: E402
from matroid_adjoint.matroid import LinearMatroid  # noqa: E402


@pytest.fixture(scope="session")
def fano():
    return fx.fano()


@pytest.fixture(scope="session")
def u24():
    return fx.fixture("u:2,4:p=5")


@pytest.fixture(scope="session")
def pg23():
    return fx.pg(2, 3)


def random_linear(rng: random.Random, p=None, max_m=9, max_r=4):
    p = p or rng.choice([2, 3, 5])
    r = rng.randint(1, max_r)
    m = rng.randint(1, max_m)
    cols = [tuple(rng.randrange(p) for _ in range(r)) for _ in range(m)]
    return LinearMatroid(MatrixF.from_columns(cols, p, r))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
