"""
Checks on piecewise-affine fields: vertex continuity, face traces, traction
continuity, determinant constraints and the planar-interface dichotomy.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from core.config import Config
from core.constitutive import MaterialParams, cauchy_stress, spatial_normal
from core.errors import DomainError
from core.mesh.field import PiecewiseAffineField
from core.mesh.partition import interior_faces, interior_tets
from core.tensor import as_mat3, canonical_sign, det
from core.utils import scale_of

logger = logging.getLogger(__name__)


class Compatibility(Enum):
    COMPATIBLE = "compatible"
    INCOMPATIBLE = "incompatible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PlanarityVerdict:
    verdict: Compatibility
    normal: Optional[np.ndarray]
    system_rank: int        # rank of the 3n x 12 agreement system
    coplanar: bool


@dataclass(frozen=True)
class TractionCheck:
    max_traction_jump: float
    max_interface_jump: float
    max_stress_norm: float
    equilibrium_ok: bool


def _incident(field: PiecewiseAffineField) -> dict[int, list[np.ndarray]]:
    seen: dict[int, list[np.ndarray]] = {}
    for t, tet in enumerate(field.partition.tets):
        for v, u in zip(tet, field.vertex_displacements(t)):
            seen.setdefault(int(v), []).append(u)
    return seen


def check_continuity(field: PiecewiseAffineField) -> float:
    """Largest displacement mismatch at any vertex between two of its incident tetrahedra."""
    worst = 0.0
    for values in _incident(field).values():
        U = np.asarray(values)
        gaps = np.linalg.norm(U[:, None, :] - U[None, :, :], axis=2)
        worst = max(worst, float(gaps.max()))
    return worst


# edge midpoints and centroid in barycentric form
_FACE_QUADRATURE = np.array([
    [0.5, 0.5, 0.0],
    [0.0, 0.5, 0.5],
    [0.5, 0.0, 0.5],
    [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
])


def face_trace_gap(field: PiecewiseAffineField, interface_only: bool = False) -> float:
    """Largest mismatch of the two one-sided traces on interior faces, sampled at face quadrature points."""
    part = field.partition
    worst = 0.0
    for face, t1, t2 in interior_faces(part):
        if interface_only and (field.phases is None or field.phases[t1] == field.phases[t2]):
            continue
        points = _FACE_QUADRATURE @ part.vertices[list(face)]
        gap = np.abs(field.maps[t1].displacement(points) - field.maps[t2].displacement(points)).max()
        worst = max(worst, float(gap))
    return worst


def _face_normal(points: np.ndarray) -> np.ndarray:
    m = np.cross(points[1] - points[0], points[2] - points[0])
    return m / np.linalg.norm(m)


def traction_and_equilibrium_check(field: PiecewiseAffineField, p: MaterialParams) -> TractionCheck:
    """
    Stress is constant on each tetrahedron, so with zero body force equilibrium
    reduces to continuity of sigma n across interior faces (n the deformed face normal).
    """
    part = field.partition
    gradients = field.gradients()
    stresses = np.stack([cauchy_stress(F @ F.T, p) for F in gradients])
    max_sigma = float(np.linalg.norm(stresses, axis=(1, 2)).max())

    worst = 0.0
    worst_interface = 0.0
    for face, t1, t2 in interior_faces(part):
        N = _face_normal(part.vertices[list(face)])
        n = spatial_normal(gradients[t1], N)
        jump = float(np.linalg.norm((stresses[t1] - stresses[t2]) @ n))
        worst = max(worst, jump)
        if field.phases is not None and field.phases[t1] != field.phases[t2]:
            worst_interface = max(worst_interface, jump)

    ok = worst <= Config.TRACTION_TOL * (1.0 + max_sigma)
    logger.debug(f"traction check: max jump {worst:.3e}, max |sigma| {max_sigma:.3e}, ok={ok}")
    return TractionCheck(max_traction_jump=worst, max_interface_jump=worst_interface,
                         max_stress_norm=max_sigma, equilibrium_ok=ok)


def det_constraint_residuals(field: PiecewiseAffineField, d: float, include_all: bool = False) -> list[float]:
    """det(I + a) - d on tetrahedra without boundary vertices (on every tetrahedron with include_all)."""
    if not d > 0:
        raise DomainError(f"prescribed determinant must be positive, got {d}")
    gradients = field.gradients()
    selected = range(len(gradients)) if include_all else interior_tets(field.partition)
    return [det(gradients[t]) - d for t in selected]


def _canonical(n: np.ndarray) -> np.ndarray:
    n = np.where(np.abs(n) <= Config.COPLANAR_TOL, 0.0, n)
    n = n / np.linalg.norm(n)
    return canonical_sign(n) * n


def planarity_theorem_check(shared, F, F_hat) -> PlanarityVerdict:
    """
    Can the maps F X + b and F_hat X + b_hat agree on every shared vertex?

    The agreement conditions form a 3n x 12 linear system in the coefficient
    differences. Four non-coplanar vertices give it full rank 12, which forces
    F = F_hat. On coplanar vertices agreement is possible exactly when
    (F - F_hat) annihilates the in-plane directions.
    """
    X = np.asarray(shared, dtype=float).reshape(-1, 3)
    D = as_mat3(F) - as_mat3(F_hat)
    if len(X) < 4:
        return PlanarityVerdict(Compatibility.INCONCLUSIVE, None, 0, False)

    scale = scale_of(X)
    H = np.hstack([X, np.ones((len(X), 1))])
    H_sv = np.linalg.svd(H, compute_uv=False)
    h_rank = int(np.sum(H_sv > Config.COPLANAR_TOL * max(1.0, scale) * H_sv[0]))
    system_rank = 3 * h_rank

    centred = X - X.mean(axis=0)
    _, sv, Vt = np.linalg.svd(centred)
    coplanar = bool(sv[2] <= Config.COPLANAR_TOL * scale)
    normal = _canonical(Vt[2]) if coplanar and sv[1] > Config.COPLANAR_TOL * scale else None

    if np.abs(D).max() <= Config.RANK_TOL * max(1.0, float(np.abs(as_mat3(F)).max())):
        return PlanarityVerdict(Compatibility.COMPATIBLE, normal, system_rank, coplanar)
    if not coplanar:
        return PlanarityVerdict(Compatibility.INCOMPATIBLE, None, system_rank, False)

    mismatch = float(np.abs(centred @ D.T).max())
    compatible = mismatch <= Config.COPLANAR_TOL * max(1.0, float(np.abs(D).max())) * scale
    verdict = Compatibility.COMPATIBLE if compatible else Compatibility.INCOMPATIBLE
    return PlanarityVerdict(verdict, normal, system_rank, True)
