"""
Cuboid partition into right-angled tetrahedra.

Each of the m^3 lattice cells is split into six tetrahedra that all contain the
cell's main diagonal (corner 0 -> corner 7). Because every cell uses the same
diagonal direction, the split of each square face is identical from both sides,
so neighbouring cells conform.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from core.errors import ArgumentError

logger = logging.getLogger(__name__)

# Cell corners are numbered by bits (x, y, z): corner = x + 2 y + 4 z.
#
#   path of axes   corners        label used in reports
#   x, y, z        0, 1, 3, 7     T0
#   x, z, y        0, 1, 7, 5     T1
#   y, x, z        0, 2, 7, 3     T2
#   y, z, x        0, 2, 6, 7     T3
#   z, x, y        0, 4, 5, 7     T4
#   z, y, x        0, 4, 7, 6     T5
#
# Odd axis paths list their last two corners swapped so that every tetrahedron
# is positively oriented. Each one is an orthoscheme: three mutually orthogonal
# edges along the path, right angles at its two middle corners.
KUHN_CELL_TETS = (
    (0, 1, 3, 7),
    (0, 1, 7, 5),
    (0, 2, 7, 3),
    (0, 2, 6, 7),
    (0, 4, 5, 7),
    (0, 4, 7, 6),
)
CELL_DIAGONAL = (0, 7)
TETS_PER_CELL = len(KUHN_CELL_TETS)
COEFFICIENTS_PER_TET = 12


@dataclass(frozen=True)
class CuboidPartition:
    m: int
    dims: tuple[float, float, float]
    vertices: np.ndarray   # (m+1)^3 x 3
    tets: np.ndarray       # 6 m^3 x 4 vertex indices

    @property
    def spacing(self) -> np.ndarray:
        return np.asarray(self.dims, dtype=float) / self.m

    @property
    def volume(self) -> float:
        return float(np.prod(self.dims))

    def vertex_index(self, i: int, j: int, k: int) -> int:
        n = self.m + 1
        return i + n * j + n * n * k

    def lattice_coords(self) -> np.ndarray:
        """Integer lattice position (i, j, k) of every vertex."""
        n = self.m + 1
        idx = np.arange(n ** 3)
        return np.stack([idx % n, (idx // n) % n, idx // (n * n)], axis=1)

    def tet_points(self, t: int) -> np.ndarray:
        return self.vertices[self.tets[t]]

    def centroids(self) -> np.ndarray:
        return self.vertices[self.tets].mean(axis=1)


def kuhn_partition(m: int, dims: Sequence[float]) -> CuboidPartition:
    if m < 1:
        raise ArgumentError(f"m must be at least 1, got {m}")
    dims = tuple(float(d) for d in dims)
    if len(dims) != 3 or not all(d > 0 for d in dims):
        raise ArgumentError(f"dims must be three positive lengths, got {dims}")

    n = m + 1
    h = np.asarray(dims) / m
    ii, jj, kk = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    lattice = np.stack([ii.ravel(order="F"), jj.ravel(order="F"), kk.ravel(order="F")], axis=1)
    vertices = lattice * h

    corner_offsets = [(c & 1, (c >> 1) & 1, (c >> 2) & 1) for c in range(8)]
    tets = []
    for k in range(m):
        for j in range(m):
            for i in range(m):
                corners = [(i + dx) + n * (j + dy) + n * n * (k + dz) for dx, dy, dz in corner_offsets]
                tets.extend([corners[c] for c in local] for local in KUHN_CELL_TETS)
    part = CuboidPartition(m=m, dims=dims, vertices=vertices, tets=np.asarray(tets, dtype=np.int64))
    logger.debug(f"kuhn partition m={m}: {len(vertices)} vertices, {len(tets)} tetrahedra")
    return part


def tet_volumes(part: CuboidPartition) -> np.ndarray:
    """Signed volumes; positive for every tetrahedron of a Kuhn partition."""
    P = part.vertices[part.tets]
    edges = P[:, 1:, :] - P[:, :1, :]
    return np.linalg.det(edges) / 6.0


def face_adjacency(part: CuboidPartition) -> dict[tuple[int, int, int], list[int]]:
    """Triangular face (sorted vertex triple) -> incident tetrahedra, in tetrahedron order."""
    faces: dict[tuple[int, int, int], list[int]] = {}
    for t, tet in enumerate(part.tets):
        for skip in range(4):
            face = tuple(sorted(int(v) for idx, v in enumerate(tet) if idx != skip))
            faces.setdefault(face, []).append(t)
    return faces


def interior_faces(part: CuboidPartition) -> list[tuple[tuple[int, int, int], int, int]]:
    return [(face, ts[0], ts[1]) for face, ts in face_adjacency(part).items() if len(ts) == 2]


def boundary_vertices(part: CuboidPartition) -> np.ndarray:
    L = part.lattice_coords()
    on_boundary = np.any((L == 0) | (L == part.m), axis=1)
    return np.flatnonzero(on_boundary)


def interior_tets(part: CuboidPartition) -> np.ndarray:
    """Tetrahedra with no vertex on the boundary (the determinant-constraint set)."""
    boundary = np.zeros(len(part.vertices), dtype=bool)
    boundary[boundary_vertices(part)] = True
    return np.flatnonzero(~boundary[part.tets].any(axis=1))


@dataclass(frozen=True)
class DofAccount:
    m: int
    total: int
    boundary_eqs: int
    interior: int
    det_constraints_needed: int
    det_constraints_available: int
    coefficients: int

    @property
    def identity_holds(self) -> bool:
        return self.total - self.boundary_eqs == self.interior


def coefficient_count(m: int) -> int:
    """12 affine coefficients on each of the 6 m^3 tetrahedra."""
    return COEFFICIENTS_PER_TET * TETS_PER_CELL * m ** 3


def dof_accounting(m: int) -> DofAccount:
    if m < 1:
        raise ArgumentError(f"m must be at least 1, got {m}")
    total = 3 * (m + 1) ** 3
    boundary_eqs = 18 * (m - 1) ** 2 + 36 * (m - 1) + 24
    interior = 3 * (m - 1) ** 3
    return DofAccount(
        m=m,
        total=total,
        boundary_eqs=boundary_eqs,
        interior=interior,
        det_constraints_needed=interior,
        det_constraints_available=TETS_PER_CELL * max(m - 2, 0) ** 3,
        coefficients=coefficient_count(m),
    )
