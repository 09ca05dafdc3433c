from pathlib import Path

import pytest
from hypothesis import settings

from optangent.opalg import PresentedAlgebra

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def com(gens, rels=(), name=""):
    """Commutative presentation from relations given as {monomial-string: coeff}."""
    return PresentedAlgebra("Com", gens, rels, name=name)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
