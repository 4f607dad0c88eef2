import pytest

from aloffwallach.verification import VerifyConfig


@pytest.fixture(scope="session")
def verify_config():
    """Shared config so oracle runs are cached across tests."""
    return VerifyConfig()
