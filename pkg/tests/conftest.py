import pytest

from tatepair.curvedata import derive_desk_curves


@pytest.fixture(scope="session")
def desk():
    """The four derived desk-scale curves, one per fused-formula family."""
    return derive_desk_curves(0)
