"""
Exact-shape 3x3 tensor algebra.

Mat3 / SymMat3 are (3, 3) float arrays, Vec3 is a (3,) float array. Every
function is pure and returns fresh arrays.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.config import Config
from core.errors import DomainError

logger = logging.getLogger(__name__)

Mat3 = np.ndarray
SymMat3 = np.ndarray
Vec3 = np.ndarray

IDENTITY = np.eye(3)


@dataclass(frozen=True)
class Invariants:
    I1: float
    I2: float
    I3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.I1, self.I2, self.I3)


@dataclass(frozen=True)
class RankOneDecomposition:
    """D = a (x) n with |n| = 1. `degenerate` marks the zero difference (a = n = 0)."""
    a: Vec3
    n: Vec3
    degenerate: bool = False

    def outer(self) -> Mat3:
        return np.outer(self.a, self.n)


def as_mat3(M) -> Mat3:
    A = np.asarray(M, dtype=float)
    if A.shape != (3, 3):
        raise DomainError(f"expected a 3x3 tensor, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError("tensor has non-finite entries")
    return A


def as_vec3(v) -> Vec3:
    x = np.asarray(v, dtype=float)
    if x.shape != (3,):
        raise DomainError(f"expected a 3-vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError("vector has non-finite entries")
    return x


def sym(M) -> SymMat3:
    A = as_mat3(M)
    return 0.5 * (A + A.T)


def skew(M) -> Mat3:
    A = as_mat3(M)
    return 0.5 * (A - A.T)


def dev(M) -> Mat3:
    A = as_mat3(M)
    return A - (np.trace(A) / 3.0) * IDENTITY


def det(M) -> float:
    A = as_mat3(M)
    return float(A[0, 0]*A[1, 1]*A[2, 2] + A[0, 1]*A[1, 2]*A[2, 0] + A[0, 2]*A[1, 0]*A[2, 1]
                 - A[0, 0]*A[1, 2]*A[2, 1] - A[0, 1]*A[1, 0]*A[2, 2] - A[0, 2]*A[1, 1]*A[2, 0])


def cofactor(M) -> Mat3:
    """Cof M, equal to det(M) M^-T whenever M is invertible."""
    A = as_mat3(M)
    C = np.empty((3, 3))
    C[0, 0] = A[1, 1]*A[2, 2] - A[1, 2]*A[2, 1]
    C[0, 1] = A[1, 2]*A[2, 0] - A[1, 0]*A[2, 2]
    C[0, 2] = A[1, 0]*A[2, 1] - A[1, 1]*A[2, 0]
    C[1, 0] = A[0, 2]*A[2, 1] - A[0, 1]*A[2, 2]
    C[1, 1] = A[0, 0]*A[2, 2] - A[0, 2]*A[2, 0]
    C[1, 2] = A[0, 1]*A[2, 0] - A[0, 0]*A[2, 1]
    C[2, 0] = A[0, 1]*A[1, 2] - A[0, 2]*A[1, 1]
    C[2, 1] = A[0, 2]*A[1, 0] - A[0, 0]*A[1, 2]
    C[2, 2] = A[0, 0]*A[1, 1] - A[0, 1]*A[1, 0]
    return C


def inv_transpose(M) -> Mat3:
    d = det(M)
    if d == 0.0:
        raise DomainError("singular tensor has no inverse")
    return cofactor(M) / d


def _symmetric_eig(B) -> tuple[np.ndarray, np.ndarray]:
    A = as_mat3(B)
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * max(1.0, float(np.abs(A).max()))):
        raise DomainError("tensor is not symmetric")
    return np.linalg.eigh(0.5 * (A + A.T))


def is_spd(B) -> bool:
    try:
        w, _ = _symmetric_eig(B)
    except DomainError:
        return False
    return bool(w.min() > Config.SPD_TOL)


def _require_spd(B) -> tuple[np.ndarray, np.ndarray]:
    w, Q = _symmetric_eig(B)
    if w.min() <= Config.SPD_TOL:
        raise DomainError(f"tensor is not positive-definite (smallest eigenvalue {w.min():.3e})")
    return w, Q


def invariants(B) -> Invariants:
    """Principal invariants (tr B, tr Cof B, det B) of a symmetric positive-definite tensor."""
    _require_spd(B)
    A = as_mat3(B)
    return Invariants(float(np.trace(A)), float(np.trace(cofactor(A))), det(A))


def eigen_invariants(B) -> Invariants:
    w, _ = _require_spd(B)
    return Invariants(float(w.sum()), float(w[0]*w[1] + w[1]*w[2] + w[2]*w[0]), float(w.prod()))


def spd_sqrt(B) -> SymMat3:
    """Unique SPD V with V V = B, through the symmetric eigendecomposition."""
    w, Q = _require_spd(B)
    V = (Q * np.sqrt(w)) @ Q.T
    return 0.5 * (V + V.T)


def spd_inverse(B) -> SymMat3:
    w, Q = _require_spd(B)
    Binv = (Q / w) @ Q.T
    return 0.5 * (Binv + Binv.T)


def is_rotation(R, tol: float = None) -> bool:
    tol = Config.ROTATION_TOL if tol is None else tol
    A = as_mat3(R)
    return bool(np.abs(A.T @ A - IDENTITY).max() <= tol and abs(det(A) - 1.0) <= tol)


def canonical_sign(n: Vec3) -> float:
    for c in n:
        if abs(c) > 0.0:
            return 1.0 if c > 0 else -1.0
    return 1.0


def rank_one_decompose(D, tol: float = None) -> Optional[RankOneDecomposition]:
    """
    Split D into a (x) n when D has numerical rank one (sigma2 <= tol * sigma1).

    n is a unit vector whose first nonzero component is positive; a carries the
    magnitude and sign. D = 0 yields the degenerate zero decomposition; rank >= 2
    yields None.
    """
    tol = Config.RANK_TOL if tol is None else tol
    A = as_mat3(D)
    U, S, Vt = np.linalg.svd(A)
    if S[0] == 0.0:
        return RankOneDecomposition(np.zeros(3), np.zeros(3), degenerate=True)
    if S[1] > tol * S[0]:
        return None
    n = Vt[0]
    # snap numerical dust so structural zeros stay exact
    n = np.where(np.abs(n) <= 8 * np.finfo(float).eps, 0.0, n)
    n = n / np.linalg.norm(n)
    n = canonical_sign(n) * n
    # a = D n is exact for D = a (x) n and unit n
    a = A @ n
    return RankOneDecomposition(a, n)
