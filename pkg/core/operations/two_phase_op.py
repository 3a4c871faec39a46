# two_phase_op.py

import logging
from typing import Any, Dict

import numpy as np

from core.errors import ArgumentError
from core.phase import (PhaseParams, TwoPhaseState, build_two_phase_state, rank_one_condition, require_admissible,
                        scan_k_roots, stress_equality_residuals, two_phase_state_at)
from core.render.render_report import Report
from core.settings import AnalysisConfig

logger = logging.getLogger(__name__)


def describe_state(state: TwoPhaseState, p) -> Dict[str, Any]:
    check = rank_one_condition(state.F, state.F_hat)
    entry = {
        "k": state.params.k,
        "beta0": state.beta0,
        "beta1": state.beta1,
        "sigma": state.sigma,
        "F": state.F,
        "F_hat": state.F_hat,
        "residuals": stress_equality_residuals(state.B, state.B_hat, p),
        "rank_one": {"holds": check.holds, "residual": check.residual},
    }
    if check.decomposition is not None:
        entry["rank_one"]["a"] = check.decomposition.a
        entry["rank_one"]["n"] = check.decomposition.n
    return entry


def select_state(config: AnalysisConfig, report: Report) -> TwoPhaseState:
    """Phase pair at the configured k, or at the root_index-th beta1 root when k is absent."""
    s = config.require("s")
    p = config.material
    if config.k is not None:
        report.results["at_root"] = False
        return two_phase_state_at(PhaseParams(config.k, s, config.a), p)

    with report.timed("roots"):
        scan = scan_k_roots(s, config.a, p)
    report.diagnostics.extend(scan.diagnostics)
    report.results["roots"] = scan.roots
    if not 0 <= config.root_index < len(scan.roots):
        raise ArgumentError(f"root_index {config.root_index} out of range for {len(scan.roots)} root(s)")
    report.results["at_root"] = True
    with report.timed("state"):
        return build_two_phase_state(s, config.a, config.root_index, p)


def cmd_two_phase(config: AnalysisConfig) -> Report:
    report = Report(command="two-phase", inputs=config.inputs(), include_timings=config.report_timings)
    p = config.material
    s = config.require("s")
    region = require_admissible(s, config.a, p)
    report.results["s_max"] = region.s_max

    with report.timed("roots"):
        scan = scan_k_roots(s, config.a, p)
    report.diagnostics.extend(scan.diagnostics)
    report.results["roots"] = scan.roots

    states = []
    with report.timed("states"):
        for index in range(len(scan.roots)):
            states.append(describe_state(build_two_phase_state(s, config.a, index, p), p))
    report.results["states"] = states
    if len(scan.roots) >= 2:
        report.results["root_separation"] = float(np.diff(scan.roots).min())
    return report
