# Analysis settings
# - schema_text
# - AnalysisConfig
# - load_analysis_config

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import jsonschema
import yaml

from core.config import Config
from core.constitutive import MaterialParams
from core.errors import ConfigError, DomainError
from core.utils import load_settings

logger = logging.getLogger(__name__)

# YAML schema of the flat analysis config
schema_text = r'''
type: object
additionalProperties: false
required: ["mu", "mu_tilde", "kappa", "a"]
properties:
  mu:
    type: number
    exclusiveMinimum: 0
    description: "Shear modulus of the isochoric term"
  mu_tilde:
    type: number
    exclusiveMinimum: 0
    description: "Coefficient of the (I1 - 3)^2 term"
  kappa:
    type: number
    exclusiveMinimum: 0
    description: "Bulk modulus of the volumetric term"
  a:
    type: number
    exclusiveMinimum: 0
    description: "Transverse stretch shared by both phases"
  s:
    type: number
    minimum: 0
    description: "Shear amount; admissible values are 0 < s < s_max(a)"
  k:
    type: number
    exclusiveMinimum: 0
    description: "Axial stretch; when absent the beta1 roots are used"
  root_index:
    type: integer
    minimum: 0
    default: 0
  m:
    type: integer
    minimum: 1
    default: 2
    description: "Cells per cuboid edge"
  dim_x: {type: number, exclusiveMinimum: 0, default: 1.0}
  dim_y: {type: number, exclusiveMinimum: 0, default: 1.0}
  dim_z: {type: number, exclusiveMinimum: 0, default: 1.0}
  plane_offset:
    type: number
    minimum: 0
    description: "Interface plane X2 = plane_offset; defaults to the lattice plane nearest mid-height"
  scan:
    type: string
    enum: ["beta1", "boundary", "segment"]
    default: "beta1"
  scan_points:
    type: integer
    minimum: 0
  probe_points:
    type: integer
    minimum: 3
  report_timings:
    type: boolean
    default: false
  out:
    type: string
  format:
    type: string
    enum: ["json", "csv"]
    default: "json"
patternProperties:
  "^tol_(beta1|residual|continuity|traction|rank|coplanar|incompressible|rotation|skew)$":
    type: number
    exclusiveMinimum: 0
'''

SCHEMA = yaml.safe_load(schema_text)
_TOL_KEY = re.compile(next(iter(SCHEMA["patternProperties"])))


@dataclass
class AnalysisConfig:
    material: MaterialParams
    a: float
    s: Optional[float] = None
    k: Optional[float] = None
    root_index: int = 0
    m: int = 2
    dims: tuple[float, float, float] = (1.0, 1.0, 1.0)
    plane_offset: Optional[float] = None
    scan: str = "beta1"
    scan_points: int = field(default_factory=lambda: Config.SCAN_POINTS)
    probe_points: int = field(default_factory=lambda: Config.PROBE_POINTS)
    tolerances: Dict[str, float] = field(default_factory=dict)
    report_timings: bool = False
    out: Optional[str] = None
    format: str = "json"

    def require(self, name: str) -> Any:
        value = getattr(self, name)
        if value is None:
            raise ConfigError(f"Missing required key '{name}' for this command", key=name)
        return value

    def inputs(self) -> Dict[str, Any]:
        """Resolved parameters echoed into reports."""
        values = {
            "mu": self.material.mu,
            "mu_tilde": self.material.mu_tilde,
            "kappa": self.material.kappa,
            "a": self.a,
            "s": self.s,
            "k": self.k,
            "root_index": self.root_index,
            "m": self.m,
            "dims": list(self.dims),
            "plane_offset": self.plane_offset,
        }
        values.update({f"tol_{name}": value for name, value in sorted(self.tolerances.items())})
        return {key: value for key, value in values.items() if value is not None}


def _describe(error: jsonschema.ValidationError) -> ConfigError:
    if error.validator == "required":
        missing = [key for key in error.validator_value if key not in error.instance]
        key = missing[0] if missing else None
        return ConfigError(f"Missing required key '{key}'", key=key)
    if error.validator == "additionalProperties":
        unknown = sorted(key for key in error.instance
                         if key not in SCHEMA["properties"] and not _TOL_KEY.match(key))
        key = unknown[0] if unknown else None
        return ConfigError(f"Unknown key '{key}'", key=key)
    key = error.path[0] if error.path else None
    return ConfigError(f"Invalid value for '{key}': {error.message}", key=key)


def parse_analysis_config(values: Dict[str, Any]) -> AnalysisConfig:
    validator = jsonschema.Draft7Validator(SCHEMA)
    errors = sorted(validator.iter_errors(values), key=lambda e: (list(e.path), e.validator))
    if errors:
        raise _describe(errors[0])

    try:
        material = MaterialParams(values["mu"], values["mu_tilde"], values["kappa"])
    except DomainError as e:
        raise ConfigError(str(e))

    tolerances = {key[len("tol_"):]: float(value) for key, value in values.items() if key.startswith("tol_")}
    config = AnalysisConfig(
        material=material,
        a=float(values["a"]),
        s=None if "s" not in values else float(values["s"]),
        k=None if "k" not in values else float(values["k"]),
        root_index=values.get("root_index", 0),
        m=values.get("m", 2),
        dims=(float(values.get("dim_x", 1.0)), float(values.get("dim_y", 1.0)), float(values.get("dim_z", 1.0))),
        plane_offset=None if "plane_offset" not in values else float(values["plane_offset"]),
        scan=values.get("scan", "beta1"),
        scan_points=values.get("scan_points", Config.SCAN_POINTS),
        probe_points=values.get("probe_points", Config.PROBE_POINTS),
        tolerances=tolerances,
        report_timings=values.get("report_timings", False),
        out=values.get("out"),
        format=values.get("format", "json"),
    )
    logger.debug(f"analysis config: {config.inputs()}")
    return config


def load_analysis_config(path: str) -> AnalysisConfig:
    return parse_analysis_config(load_settings(path))
