import pytest

from projtab.arrow import ArrowDiagram, parse
from projtab.catalog import build_catalog
from projtab.enumerator import EnumerationConfig, enumerate_prime

TREFOIL = "+1 -2 +3 -1 +2 -3"
FIGURE_EIGHT = "+1 +2 -3 -1 +4 +3 -2 -4"
CHIRAL_6 = "+1 +2 -3 +4 -2 -5 +6 -1 +5 +3 -4 -6"
PATH_8 = "+1 +2 -3 -1 +4 +5 -6 -7 +8 +6 -5 +3 -2 -8 +7 -4"


@pytest.fixture(scope="session")
def catalog():
    return build_catalog(8)


@pytest.fixture(scope="session")
def prime_keys():
    return enumerate_prime(EnumerationConfig(8))


@pytest.fixture(scope="session")
def prime_keys_chiral():
    return enumerate_prime(EnumerationConfig(8, identify_mirrors=False))


@pytest.fixture
def trefoil() -> ArrowDiagram:
    return parse(TREFOIL)
