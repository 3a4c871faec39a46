# scan_op.py

import logging

import numpy as np

from core.config import Config
from core.operations.two_phase_op import select_state
from core.phase import admissible_smax, beta0_of_k, beta1_of_k, energy_along_segment, laminate_direction
from core.render.render_report import Report
from core.settings import AnalysisConfig

logger = logging.getLogger(__name__)

# a^2 + 1/a^2 < 3 exactly for a between these golden-ratio bounds
A_MIN = (np.sqrt(5.0) - 1.0) / 2.0
A_MAX = (np.sqrt(5.0) + 1.0) / 2.0


def _open_grid(lo: float, hi: float, points: int) -> np.ndarray:
    """points values strictly inside (lo, hi)."""
    return np.linspace(lo, hi, points + 2)[1:-1]


def scan_beta1(config: AnalysisConfig, report: Report) -> None:
    s = config.require("s")
    k = np.linspace(Config.ROOT_GRID_MIN, Config.ROOT_GRID_MAX, config.scan_points)
    report.columns = ["k", "beta1", "beta0"]
    report.column_docs = ["axial stretch", "coefficient of B", "hydrostatic coefficient"]
    report.rows = [list(row) for row in zip(k, beta1_of_k(k, s, config.a, config.material),
                                            beta0_of_k(k, s, config.a, config.material))]


def scan_boundary(config: AnalysisConfig, report: Report) -> None:
    report.columns = ["a", "s_max"]
    report.column_docs = ["transverse stretch", "upper end of the admissible shear interval (empty when none)"]
    rows = []
    for a in _open_grid(A_MIN, A_MAX, config.scan_points):
        region = admissible_smax(float(a), config.material)
        rows.append([a, None if region is None else region.s_max])
    report.rows = rows


def scan_segment(config: AnalysisConfig, report: Report) -> None:
    state = select_state(config, report)
    F0, a, n = laminate_direction(state)
    t = np.linspace(0.0, 1.0, config.scan_points)
    report.columns = ["t", "energy"]
    report.column_docs = ["position on F + t a (x) n, F_hat at t = 1", "stored energy"]
    report.rows = [list(row) for row in zip(t, energy_along_segment(config.material, F0, a, n, t))]


SCANS = {
    "beta1": scan_beta1,
    "boundary": scan_boundary,
    "segment": scan_segment,
}


def cmd_scan(config: AnalysisConfig) -> Report:
    report = Report(command="scan", inputs=config.inputs(), include_timings=config.report_timings)
    report.inputs["scan"] = config.scan
    report.inputs["scan_points"] = config.scan_points
    with report.timed(config.scan):
        SCANS[config.scan](config, report)
    logger.debug(f"scan {config.scan}: {len(report.rows)} rows")
    return report
