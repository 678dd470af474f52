import pytest

from colorder.core import ColorTerm, FinStruct, pair_of

B = ColorTerm.base


@pytest.fixture
def two_point():
    """a < b colored b:0:0 — the running two-point example."""
    return FinStruct.build("ab", {pair_of("a", "b"): B(0, 0)})


@pytest.fixture
def one_point():
    return FinStruct.build("a", {})
