# mesh_op.py

import logging
import os

import numpy as np

from core.config import Config
from core.mesh import (build_two_phase_field, check_continuity, coefficient_count, det_constraint_residuals,
                       dof_accounting, face_trace_gap, kuhn_partition, tet_volumes,
                       traction_and_equilibrium_check, write_field, write_mesh)
from core.operations.two_phase_op import select_state
from core.render.render_report import Report
from core.settings import AnalysisConfig
from core.tensor import det

logger = logging.getLogger(__name__)


def default_plane_offset(config: AnalysisConfig) -> float:
    """Lattice plane nearest mid-height (from below)."""
    return config.dims[1] / config.m * (config.m // 2)


def cmd_mesh(config: AnalysisConfig) -> Report:
    report = Report(command="mesh", inputs=config.inputs(), include_timings=config.report_timings)
    p = config.material
    state = select_state(config, report)
    c = default_plane_offset(config) if config.plane_offset is None else config.plane_offset

    with report.timed("partition"):
        part = kuhn_partition(config.m, config.dims)
    with report.timed("field"):
        field = build_two_phase_field(part, state.F, state.F_hat, c)
    volumes = tet_volumes(part)

    with report.timed("checks"):
        continuity = check_continuity(field)
        interface_gap = face_trace_gap(field, interface_only=True)
        traction = traction_and_equilibrium_check(field, p)
        d = det(state.F)
        residuals = np.abs(det_constraint_residuals(field, d, include_all=True))
    dofs = dof_accounting(config.m)

    report.results.update({
        "k": state.params.k,
        "beta0": state.beta0,
        "beta1": state.beta1,
        "plane_offset": c,
        "vertices": len(part.vertices),
        "tetrahedra": len(part.tets),
        "tets_with_F_hat": int(field.phases.sum()),
        "volume_sum": float(volumes.sum()),
        "volume_error": abs(float(volumes.sum()) - part.volume) / part.volume,
        "continuity_max_jump": continuity,
        "interface_trace_gap": interface_gap,
        "traction": traction,
        "dof": {
            "total": dofs.total,
            "boundary_eqs": dofs.boundary_eqs,
            "interior": dofs.interior,
            "identity_holds": dofs.identity_holds,
            "det_constraints_needed": dofs.det_constraints_needed,
            "det_constraints_available": dofs.det_constraints_available,
            "coefficients": coefficient_count(config.m),
        },
        "det_constraint": {"d": d, "max_abs_residual": float(residuals.max())},
    })

    if continuity > Config.CONTINUITY_TOL:
        report.fail(f"displacement jumps by {continuity:.3e} at a shared vertex")
    if not dofs.identity_holds:
        report.fail(f"DOF identity fails for m = {config.m}")
    if report.results["at_root"]:
        if not traction.equilibrium_ok:
            report.fail(f"traction jump {traction.max_traction_jump:.3e} at a stress-equality root")
    else:
        expected = 2.0 * abs(state.beta1) * state.params.s * state.params.a ** 2
        report.results["expected_interface_jump"] = expected
        logger.info(f"k = {state.params.k} is not a root: interface traction jump {traction.max_interface_jump:.6g}")

    if config.out:
        os.makedirs(config.out, exist_ok=True)
        mesh_path = os.path.join(config.out, "mesh.tetmesh")
        field_path = os.path.join(config.out, "field.tetmesh")
        write_mesh(mesh_path, part, field.gradients())
        write_field(field_path, field)
        report.results["files"] = ["mesh.tetmesh", "field.tetmesh"]
    else:
        logger.info("no output directory configured; skipping tetmesh export")
    return report
