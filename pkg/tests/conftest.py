import numpy as np
import pytest

from orthoplex import TolerancePolicy


@pytest.fixture
def policy():
    return TolerancePolicy()


def random_rotation(d: int, rng) -> np.ndarray:
    """Haar-ish random orthogonal matrix with det +1."""
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
