import numpy as np
import pytest

from xqcorr.states import CVector, block_rng, rejection_sample


@pytest.fixture(scope="session")
def random_states() -> list[CVector]:
    """200 physical states shared across tests; fixed stream, independent
    of the sweep seeds so a test failure here never aliases a sweep bug."""
    rows = rejection_sample(np.random.default_rng(987654321), 200)
    return [CVector(*map(float, r)) for r in rows]


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


@pytest.fixture()
def block0():
    return block_rng(11, 0)
