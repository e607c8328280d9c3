import pytest

from dessin.eo import EOEngine
from dessin.virasoro import VirasoroEngine


@pytest.fixture(scope="session")
def vir():
    """One shared memo table for the whole run (single writer per suite)."""
    return VirasoroEngine()


@pytest.fixture(scope="session")
def eo():
    return EOEngine()
