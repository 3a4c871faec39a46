"""
Piecewise-affine displacement fields on a cuboid partition.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from core.affine import AffineMap, deformation_gradient
from core.config import Config
from core.errors import ArgumentError, ConstructionError, SingularConfigurationError
from core.mesh.partition import CuboidPartition
from core.phase import rank_one_condition
from core.tensor import as_mat3
from core.utils import scale_of

logger = logging.getLogger(__name__)

E2 = np.array([0.0, 1.0, 0.0])


@dataclass(frozen=True)
class PiecewiseAffineField:
    partition: CuboidPartition
    maps: tuple[AffineMap, ...]
    phases: Optional[np.ndarray] = field(default=None)  # 0 on the F side, 1 on the F_hat side

    def __post_init__(self):
        if len(self.maps) != len(self.partition.tets):
            raise ArgumentError(f"{len(self.maps)} maps for {len(self.partition.tets)} tetrahedra")

    def gradients(self) -> np.ndarray:
        return np.stack([deformation_gradient(m) for m in self.maps])

    def vertex_displacements(self, t: int) -> np.ndarray:
        """Displacements of the four vertices of tetrahedron t, as seen by its own map."""
        return self.maps[t].displacement(self.partition.tet_points(t))

    def replace_map(self, t: int, new_map: AffineMap) -> "PiecewiseAffineField":
        maps = list(self.maps)
        maps[t] = new_map
        return PiecewiseAffineField(self.partition, tuple(maps), self.phases)


def uniform_field(part: CuboidPartition, affine_map: AffineMap) -> PiecewiseAffineField:
    return PiecewiseAffineField(part, tuple(affine_map for _ in range(len(part.tets))),
                                np.zeros(len(part.tets), dtype=np.int64))


def affine_from_vertex_data(X, u) -> AffineMap:
    """
    Coefficients a_ij, b_i of u(X) = a X + b from the displacements at 4 vertices.

    Each coefficient is a ratio of 4x4 determinants (Cramer's rule on the
    system [X | 1] c_i = u_i); the denominator vanishes for coplanar vertices.
    """
    P = np.asarray(X, dtype=float)
    U = np.asarray(u, dtype=float)
    if P.shape != (4, 3) or U.shape != (4, 3):
        raise ArgumentError(f"need 4 vertices and 4 displacements, got {P.shape} and {U.shape}")
    M = np.hstack([P, np.ones((4, 1))])
    denominator = np.linalg.det(M)
    if abs(denominator) <= Config.COPLANAR_TOL * scale_of(P) ** 3:
        raise SingularConfigurationError("tetrahedron vertices are coplanar")

    coeffs = np.empty((3, 4))
    for i in range(3):
        for j in range(4):
            Mj = M.copy()
            Mj[:, j] = U[:, i]
            coeffs[i, j] = np.linalg.det(Mj) / denominator
    return AffineMap(coeffs[:, :3], coeffs[:, 3])


def _on_lattice_plane(part: CuboidPartition, c: float) -> bool:
    h = part.spacing[1]
    steps = c / h
    return 0.0 <= c <= part.dims[1] and abs(steps - round(steps)) <= 1e-12 * max(1.0, abs(steps))


def build_two_phase_field(part: CuboidPartition, F, F_hat, plane_offset: float) -> PiecewiseAffineField:
    """
    Laminate y(X) = F X below the plane X2 = c and y(X) = F_hat X - c a above it,
    where F_hat - F = a (x) e2. The translation -c a keeps the interface trace
    identical from both sides.
    """
    F, F_hat = as_mat3(F), as_mat3(F_hat)
    check = rank_one_condition(F, F_hat)
    if check.degenerate:
        logger.info("F = F_hat: building a single-phase field")
        return uniform_field(part, AffineMap.from_deformation(F))
    if not check.holds:
        raise ConstructionError(f"F and F_hat are not rank-one connected (residual {check.residual:.3e})")
    a, n = check.decomposition.a, check.decomposition.n
    if np.abs(n - E2).max() > Config.RANK_TOL:
        raise ConstructionError(f"interface normal must be e2 for a plane X2 = c, got {n}")
    if not _on_lattice_plane(part, plane_offset):
        raise ArgumentError(f"plane X2 = {plane_offset} is not a lattice plane (spacing {part.spacing[1]})")

    lower = AffineMap.from_deformation(F)
    upper = AffineMap.from_deformation(F_hat, -plane_offset * a)
    phases = (part.centroids()[:, 1] > plane_offset).astype(np.int64)
    maps = tuple(upper if ph else lower for ph in phases)
    logger.debug(f"two-phase field: {int(phases.sum())} of {len(phases)} tetrahedra carry F_hat")
    return PiecewiseAffineField(part, maps, phases)
