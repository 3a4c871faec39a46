# Mesh export
# - format_mesh / write_mesh
# - format_field / write_field
#
# tetmesh v1 layout:
#   tetmesh v1
#   v x y z            one line per vertex
#   t i j k l          0-based vertex indices, one line per tetrahedron
#   g F11 ... F33      optional, row-major gradient per tetrahedron
# Field files repeat the header and vertex/tetra blocks, then list
#   u ux uy uz         four lines per tetrahedron, in its vertex order

import logging
from typing import Optional

import numpy as np

from core.mesh.field import PiecewiseAffineField
from core.mesh.partition import CuboidPartition

logger = logging.getLogger(__name__)

HEADER = "tetmesh v1"


def _num(x: float) -> str:
    return "%.17g" % (float(x) + 0.0)


def _row(tag: str, values) -> str:
    return " ".join([tag] + [_num(v) for v in values])


def format_mesh(part: CuboidPartition, gradients: Optional[np.ndarray] = None) -> str:
    lines = [HEADER]
    lines.extend(_row("v", X) for X in part.vertices)
    lines.extend("t " + " ".join(str(int(i)) for i in tet) for tet in part.tets)
    if gradients is not None:
        G = np.asarray(gradients, dtype=float)
        if G.shape != (len(part.tets), 3, 3):
            raise ValueError(f"expected {len(part.tets)} gradients, got shape {G.shape}")
        lines.extend(_row("g", F.ravel()) for F in G)
    return "\n".join(lines) + "\n"


def format_field(field: PiecewiseAffineField) -> str:
    lines = [format_mesh(field.partition).rstrip("\n")]
    for t in range(len(field.partition.tets)):
        lines.extend(_row("u", u) for u in field.vertex_displacements(t))
    return "\n".join(lines) + "\n"


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.debug(f"wrote {path}")


def write_mesh(path: str, part: CuboidPartition, gradients: Optional[np.ndarray] = None) -> None:
    _write(path, format_mesh(part, gradients))


def write_field(path: str, field: PiecewiseAffineField) -> None:
    _write(path, format_field(field))
