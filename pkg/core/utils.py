# Utilities
# - read_file
# - load_settings
# - scale_of

import logging

import numpy as np
import toml

from core.errors import ConfigError

logger = logging.getLogger(__name__)


def read_file(file_path: str) -> str:
    try:
        with open(file_path, 'r', encoding='utf-8') as file:
            return file.read()
    except OSError as e:
        raise ConfigError(f"Error reading file '{file_path}': {e}")


def load_settings(settings_file: str = 'settings.toml') -> dict:
    """Load a flat `key = value` settings file. Parse errors keep the TOML line number."""
    logger.debug(f"Loading settings from {settings_file}")
    content = read_file(settings_file)
    try:
        return toml.loads(content)
    except toml.TomlDecodeError as e:
        raise ConfigError(f"Error parsing {settings_file} at line {e.lineno}: {e.msg}", line=e.lineno)


def scale_of(points) -> float:
    """Bounding-box diagonal of a point cloud, floored at 1 for degenerate clouds."""
    pts = np.asarray(points, dtype=float)
    extent = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    return extent if extent > 0 else 1.0
