import pytest

from boostlab.verify import AcceptanceContext


@pytest.fixture(scope="session")
def ctx():
    """Shared orbit cache so acceptance and scenario tests reuse sweeps."""
    return AcceptanceContext()
