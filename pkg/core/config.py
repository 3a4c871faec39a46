import os

from dotenv import load_dotenv


class Config:
    # root scan of beta1(k) on (0, 1); endpoints stay clear of the k^(-5/3) singularity
    ROOT_GRID_POINTS = 10_000
    ROOT_GRID_MIN = 1e-4
    ROOT_GRID_MAX = 1.0 - 1e-4

    BETA1_TOL = 1e-12        # |beta1| accepted at a root
    RESIDUAL_TOL = 1e-10     # stress-equality residual, relative to max(1, |beta0|)
    CONTINUITY_TOL = 1e-12
    TRACTION_TOL = 1e-10     # relative to 1 + max ||sigma||
    RANK_TOL = 1e-9          # sigma2 / sigma1 for rank-one acceptance
    COPLANAR_TOL = 1e-10     # relative to bounding-box scale
    SPD_TOL = 0.0            # smallest admissible eigenvalue is > SPD_TOL
    INCOMPRESSIBLE_TOL = 1e-8
    ROTATION_TOL = 1e-10
    SKEW_TOL = 1e-12

    FD_STEP = 1e-5
    PROBE_POINTS = 201
    SCAN_POINTS = 200

    TOLERANCE_ENV = "LAMINATE_TOLERANCE_SCALE"
    TOLERANCE_SCALE = 1.0

    _TOL_NAMES = ("BETA1_TOL", "RESIDUAL_TOL", "CONTINUITY_TOL", "TRACTION_TOL",
                  "RANK_TOL", "COPLANAR_TOL", "INCOMPRESSIBLE_TOL", "ROTATION_TOL", "SKEW_TOL")

    @classmethod
    def apply_environment(cls) -> float:
        """Scale every *_TOL default by LAMINATE_TOLERANCE_SCALE (a .env file is honoured)."""
        load_dotenv()
        raw = os.environ.get(cls.TOLERANCE_ENV)
        if raw is None:
            return cls.TOLERANCE_SCALE
        scale = float(raw)
        if scale <= 0:
            raise ValueError(f"{cls.TOLERANCE_ENV} must be positive, got {raw!r}")
        factor = scale / cls.TOLERANCE_SCALE
        for name in cls._TOL_NAMES:
            setattr(cls, name, getattr(cls, name) * factor)
        cls.TOLERANCE_SCALE = scale
        return scale

    @classmethod
    def tolerances(cls) -> dict:
        return {name.lower(): getattr(cls, name) for name in cls._TOL_NAMES}

    @classmethod
    def snapshot(cls) -> dict:
        state = {name: getattr(cls, name) for name in cls._TOL_NAMES}
        state["TOLERANCE_SCALE"] = cls.TOLERANCE_SCALE
        return state

    @classmethod
    def restore(cls, state: dict) -> None:
        for name, value in state.items():
            setattr(cls, name, value)

    @classmethod
    def override(cls, tolerances: dict) -> None:
        """Set tolerances from config keys such as {'residual': 1e-9} (tol_residual)."""
        for key, value in tolerances.items():
            name = f"{key.upper()}_TOL"
            if name not in cls._TOL_NAMES:
                raise KeyError(f"unknown tolerance '{key}'")
            setattr(cls, name, float(value))
