# admissible_op.py

import logging

from core.phase import admissible_smax, tangency_point
from core.render.render_report import Report
from core.settings import AnalysisConfig

logger = logging.getLogger(__name__)


def cmd_admissible(config: AnalysisConfig) -> Report:
    """Admissible shear interval (0, s_max) for the configured a and material."""
    report = Report(command="admissible", inputs=config.inputs(), include_timings=config.report_timings)
    p = config.material
    with report.timed("admissible_smax"):
        region = admissible_smax(config.a, p)

    results = {
        "mu_ratio": p.mu / (3.0 * p.mu_tilde),
        "tangency_k": tangency_point(p),
    }
    if region is None:
        results["verdict"] = "inadmissible"
        report.warn(f"no shear s satisfies the admissibility bound for a = {config.a}")
    else:
        results.update({
            "verdict": "admissible",
            "s_max": region.s_max,
            "mu_ratio_bound": region.mu_ratio_bound,
        })
        if config.s is not None:
            results["s_in_region"] = region.contains(config.s)
    report.results = results
    return report
