import os
import sys

import numpy as np
import pytest

# Add the repository root to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.constitutive import MaterialParams


@pytest.fixture
def material():
    """mu = 1, mu_tilde = 3, kappa = 1: admissible for a = 1 with s up to about 0.48."""
    return MaterialParams(1.0, 3.0, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_gradient(rng, spread=0.3):
    """I + small perturbation, det > 0."""
    while True:
        F = np.eye(3) + spread * rng.standard_normal((3, 3))
        if np.linalg.det(F) > 0.2:
            return F


def random_rotation(rng):
    """Proper rotation from the QR factors of a Gaussian matrix."""
    Q, R = np.linalg.qr(rng.standard_normal((3, 3)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q
