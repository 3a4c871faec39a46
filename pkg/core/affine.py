# Affine maps
# - AffineMap
# - deformation_gradient

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from core.tensor import IDENTITY, Mat3, Vec3, as_mat3, as_vec3


@dataclass(frozen=True)
class AffineMap:
    """Displacement u(X) = a X + b on one tetrahedron (or on the whole body)."""
    a: Mat3 = field(default_factory=lambda: np.zeros((3, 3)))
    b: Vec3 = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "a", as_mat3(self.a).copy())
        object.__setattr__(self, "b", as_vec3(self.b).copy())

    def displacement(self, X) -> np.ndarray:
        """u at one point (3,) or at many points (n, 3)."""
        P = np.asarray(X, dtype=float)
        return P @ self.a.T + self.b

    def deformation(self, X) -> np.ndarray:
        P = np.asarray(X, dtype=float)
        return P + self.displacement(P)

    def with_translation(self, b) -> "AffineMap":
        return AffineMap(self.a, b)

    @classmethod
    def from_deformation(cls, F, y0=None) -> "AffineMap":
        """Map whose deformation is y(X) = F X + y0."""
        y0 = np.zeros(3) if y0 is None else y0
        return cls(as_mat3(F) - IDENTITY, y0)


def deformation_gradient(affine_map: AffineMap) -> Mat3:
    """F = I + a."""
    return IDENTITY + affine_map.a
