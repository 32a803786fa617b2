import pytest

from textile.core.codes import TextileCode, parse_code

# Two-component diagonal textile; realizable with 7 faces.
DIAGONAL = "h1+ 1 v2- 2+ ; h2+ v1+ 1- 2"
# Single-component knot of complexity 5 used for the incidence matrix.
KNOT_3 = "h1+ 1 2+ 3 1- v1+ 3+ 2"
UNREALIZABLE = "h1+ 1 2+ ; v1+ 1- 2"


@pytest.fixture
def diagonal() -> TextileCode:
    return parse_code(DIAGONAL)


@pytest.fixture
def knot3() -> TextileCode:
    return parse_code(KNOT_3)


@pytest.fixture
def single_crossing() -> TextileCode:
    return parse_code("h1+ 1 1- v1+")


@pytest.fixture
def plain_curve() -> TextileCode:
    return parse_code("h1+ v1+")
