from core.affine import AffineMap, deformation_gradient
from core.mesh.checks import (Compatibility, PlanarityVerdict, TractionCheck, check_continuity,
                              det_constraint_residuals, face_trace_gap, planarity_theorem_check,
                              traction_and_equilibrium_check)
from core.mesh.export import format_field, format_mesh, write_field, write_mesh
from core.mesh.field import (PiecewiseAffineField, affine_from_vertex_data, build_two_phase_field,
                             uniform_field)
from core.mesh.partition import (KUHN_CELL_TETS, CuboidPartition, DofAccount, boundary_vertices,
                                 coefficient_count, dof_accounting, face_adjacency, interior_faces,
                                 interior_tets, kuhn_partition, tet_volumes)
