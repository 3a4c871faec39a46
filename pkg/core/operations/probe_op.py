# probe_op.py

import logging

import numpy as np

from core.operations.two_phase_op import select_state
from core.phase import laminate_direction, rank_one_convexity_probe
from core.render.render_report import Report
from core.settings import AnalysisConfig

logger = logging.getLogger(__name__)


def cmd_probe(config: AnalysisConfig) -> Report:
    """
    Look for a negative second difference of the energy on the segment joining
    the two phases. Both phases sit at the same energy level with the same stress,
    so the energy along the segment is expected to bulge; a missing witness fails.
    """
    report = Report(command="probe-convexity", inputs=config.inputs(), include_timings=config.report_timings)
    report.inputs["probe_points"] = config.probe_points
    state = select_state(config, report)
    F0, a, n = laminate_direction(state)
    t = np.linspace(0.0, 1.0, config.probe_points)

    with report.timed("probe"):
        witness = rank_one_convexity_probe(config.material, F0, a, n, t)

    report.results.update({"k": state.params.k, "a": a, "n": n})
    if witness is None:
        report.results["witness"] = None
        report.fail("no negative second difference along the laminate segment")
    else:
        report.results["witness"] = {"t": witness.t, "second_derivative": witness.second_derivative}
        logger.info(f"rank-one convexity fails at t = {witness.t:.6g} (g'' = {witness.second_derivative:.6g})")
    return report
