"""Shared instances for the solver tests."""

import pytest

from domain import Instance, Matching
from infrastructure import SmtiCodec

I2_TEXT = """\
p smti 2 2
m 1 : 1 2
m 2 : 2 1
w 1 : 2 1
w 2 : 1 2
"""

I3_TEXT = """\
p smti 3 3
m 1 : 1 2 3
m 2 : 2 3 1
m 3 : 3 1 2
w 1 : 2 3 1
w 2 : 3 1 2
w 3 : 1 2 3
"""

TIED_TEXT = """\
p smti 2 2
m 1 : 1
m 2 : 1 2
w 1 : (1 2)
w 2 : 2
"""


@pytest.fixture
def codec() -> SmtiCodec:
    return SmtiCodec()


@pytest.fixture
def i2() -> Instance:
    """Two stable matchings, both with |delta| = 2."""
    return Instance.from_rankings([[0, 1], [1, 0]], [[1, 0], [0, 1]])


@pytest.fixture
def i3() -> Instance:
    """Cyclic 3x3 instance whose three stable matchings form a chain."""
    return Instance.from_rankings(
        [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
        [[1, 2, 0], [2, 0, 1], [0, 1, 2]],
    )


@pytest.fixture
def i3_middle() -> Matching:
    return Matching.from_pairs([(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def tied() -> Instance:
    """Woman 1 ties both men; weakly stable matchings have sizes 1 and 2."""
    return Instance.from_rankings([[0], [0, 1]], [[(0, 1)], [1]])


@pytest.fixture
def single() -> Instance:
    return Instance.from_rankings([[0]], [[0]])


@pytest.fixture
def empty_lists() -> Instance:
    return Instance.from_rankings([[], []], [[], []])
