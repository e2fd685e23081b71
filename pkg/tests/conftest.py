import pytest

from qkit.order import chain_poset, lattice
from qkit.resolution import validate_resolution

CHAIN4 = ["0", "l1", "l2", "l3"]


@pytest.fixture
def chain4():
    return chain_poset(CHAIN4)


@pytest.fixture
def res4(chain4):
    """Two states into the 4-chain, p below q, top unused."""
    return validate_resolution(["p", "q"], chain4, ["0", "l1", "l2", "l2"], strict=True)


@pytest.fixture
def m2():
    return lattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
