import pytest

from vknots import parse_gauss

# Canonical small codes.  The left-handed (all-negative) trefoil variants
# carry the frozen reference polynomials A^4+A^12-A^16 and A^4+A^6-A^10;
# the all-positive codes give the A -> 1/A mirrors of those.
TREFOIL = "O1-U2-O3-U1-O2-U3-"
TREFOIL_MIRROR = "O1+U2+O3+U1+O2+U3+"
VIRTUAL_TREFOIL = "O1-O2-U1-U2-"
VIRTUAL_TREFOIL_MIRROR = "O1+O2+U1+U2+"
KINK_PLUS = "O1+U1+"
FIGURE_EIGHT = "O1+U2+O3-U4-O2+U1+O4-U3-"
UNKNOT = "()"
HOPF = "O1+U2+\nO2+U1+"


@pytest.fixture
def trefoil():
    return parse_gauss(TREFOIL)


@pytest.fixture
def trefoil_mirror():
    return parse_gauss(TREFOIL_MIRROR)


@pytest.fixture
def virtual_trefoil():
    return parse_gauss(VIRTUAL_TREFOIL)


@pytest.fixture
def virtual_trefoil_mirror():
    return parse_gauss(VIRTUAL_TREFOIL_MIRROR)


@pytest.fixture
def figure_eight():
    return parse_gauss(FIGURE_EIGHT)


@pytest.fixture
def unknot():
    return parse_gauss(UNKNOT)


@pytest.fixture
def hopf():
    return parse_gauss(HOPF)
