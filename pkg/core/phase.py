"""
Two-phase construction for the model energy.

The rank-one connected pair

    F     = [[k,  s a, 0], [0, a, 0], [0, 0, 1/a]]
    F_hat = [[k, -s a, 0], [0, a, 0], [0, 0, 1/a]]

shares the invariants I1 = k^2 + C, I3 = k^2 with C = s^2 a^2 + a^2 + 1/a^2, so
sigma(B) = sigma(B_hat) exactly when beta1(k) = 0. Roots of beta1 on (0, 1) are
located by a sign-change scan followed by bisection.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import optimize

from core.config import Config
from core.constitutive import MaterialParams, betas_model, cauchy_stress, energy
from core.errors import ArgumentError, DomainError, InadmissibleError, NumericalCheckError
from core.tensor import IDENTITY, Invariants, Mat3, RankOneDecomposition, SymMat3, as_mat3, as_vec3, det, invariants, rank_one_decompose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseParams:
    k: float
    s: float
    a: float

    def __post_init__(self):
        # s = 0 is kept representable (it is the single-phase limit); admissibility demands s > 0
        if not (self.k > 0 and self.a > 0 and self.s >= 0):
            raise DomainError(f"phase parameters need k > 0, a > 0, s >= 0, got {self}")

    @property
    def stretch_sum(self) -> float:
        """C = s^2 a^2 + a^2 + 1/a^2."""
        return stretch_sum(self.s, self.a)


@dataclass(frozen=True)
class AdmissibleRegion:
    a: float
    mu_ratio: float          # mu / (3 mu_tilde)
    mu_ratio_bound: float    # ((3 - a^2 - 1/a^2) / 4)^(4/3)
    s_max: float

    def contains(self, s: float) -> bool:
        return 0.0 < s < self.s_max


@dataclass(frozen=True)
class TwoPhaseState:
    params: PhaseParams
    F: Mat3
    F_hat: Mat3
    B: SymMat3
    B_hat: SymMat3
    sigma: SymMat3
    beta0: float
    beta1: float


@dataclass(frozen=True)
class RankOneCheck:
    holds: bool
    residual: float
    decomposition: Optional[RankOneDecomposition]

    @property
    def degenerate(self) -> bool:
        return self.decomposition is not None and self.decomposition.degenerate


@dataclass
class RootScan:
    s: float
    a: float
    roots: list[float] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class ConvexityWitness:
    t: float
    second_derivative: float


def stretch_sum(s: float, a: float) -> float:
    return s * s * a * a + a * a + 1.0 / (a * a)


def phase_gradients(pp: PhaseParams) -> tuple[Mat3, Mat3]:
    k, s, a = pp.k, pp.s, pp.a
    F = np.array([[k, s * a, 0.0],
                  [0.0, a, 0.0],
                  [0.0, 0.0, 1.0 / a]])
    F_hat = F.copy()
    F_hat[0, 1] = -s * a
    return F, F_hat


def phase_invariants(pp: PhaseParams) -> Invariants:
    k, s, a = pp.k, pp.s, pp.a
    return Invariants(
        I1=k * k + pp.stretch_sum,
        I2=k * k * a * a + k * k / (a * a) + s * s + 1.0,
        I3=k * k,
    )


def beta1_of_k(k, s: float, a: float, p: MaterialParams):
    """beta1 = mu k^(-5/3) + mu_tilde k^(-1) (k^2 + C - 3); accepts scalar or array k."""
    k = np.asarray(k, dtype=float)
    value = p.mu * k ** (-5.0 / 3.0) + p.mu_tilde / k * (k * k + stretch_sum(s, a) - 3.0)
    return float(value) if value.ndim == 0 else value


def beta0_of_k(k, s: float, a: float, p: MaterialParams):
    k = np.asarray(k, dtype=float)
    value = -(p.mu / 3.0) * k ** (-5.0 / 3.0) * (k * k + stretch_sum(s, a)) + p.kappa * (k - 1.0)
    return float(value) if value.ndim == 0 else value


def tangency_point(p: MaterialParams) -> float:
    """Minimiser k* = (mu / (3 mu_tilde))^(3/8) of k beta1(k); two roots straddle it when they exist."""
    return (p.mu / (3.0 * p.mu_tilde)) ** 0.375


def rank_one_condition(F, F_hat) -> RankOneCheck:
    """
    Rank-one connectivity of F and F_hat.

    residual is the mismatch of (F11 - G11)(F22 - G22) = (F12 - G12)(F21 - G21);
    the full test goes through rank_one_decompose(F_hat - F).
    """
    A, G = as_mat3(F), as_mat3(F_hat)
    residual = abs((A[0, 0] - G[0, 0]) * (A[1, 1] - G[1, 1]) - (A[0, 1] - G[0, 1]) * (A[1, 0] - G[1, 0]))
    decomposition = rank_one_decompose(G - A)
    holds = False
    if decomposition is not None and not decomposition.degenerate:
        holds = residual <= Config.RANK_TOL * max(1.0, float(np.abs(G - A).max()) ** 2)
    return RankOneCheck(holds=holds, residual=float(residual), decomposition=decomposition)


def admissible_smax(a: float, p: MaterialParams) -> Optional[AdmissibleRegion]:
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    gap = 3.0 - a * a - 1.0 / (a * a)
    if gap <= 0.0:
        return None
    ratio = p.mu / (3.0 * p.mu_tilde)
    bound = (gap / 4.0) ** (4.0 / 3.0)
    if not ratio < bound:
        return None
    s_max = np.sqrt(3.0 - 4.0 * ratio ** 0.75 - a * a - 1.0 / (a * a)) / a
    return AdmissibleRegion(a=a, mu_ratio=ratio, mu_ratio_bound=bound, s_max=float(s_max))


def require_admissible(s: float, a: float, p: MaterialParams) -> AdmissibleRegion:
    region = admissible_smax(a, p)
    if region is None:
        raise InadmissibleError(f"no admissible s for a = {a} with mu/(3 mu_tilde) = {p.mu / (3.0 * p.mu_tilde):.6g}")
    if not region.contains(s):
        raise InadmissibleError(f"s = {s} is outside the admissible interval (0, {region.s_max:.17g}) for a = {a}")
    return region


def scan_k_roots(s: float, a: float, p: MaterialParams, grid_points: int = None) -> RootScan:
    """Sign-change scan of beta1 on [ROOT_GRID_MIN, ROOT_GRID_MAX] with bisection on each bracket."""
    require_admissible(s, a, p)
    grid_points = Config.ROOT_GRID_POINTS if grid_points is None else grid_points
    scan = RootScan(s=s, a=a)

    grid = np.linspace(Config.ROOT_GRID_MIN, Config.ROOT_GRID_MAX, grid_points)
    values = beta1_of_k(grid, s, a, p)
    if not (values[0] > 0 and values[-1] > 0):
        raise NumericalCheckError(f"beta1 must be positive at both ends of the scan, got {values[0]:.3e}, {values[-1]:.3e}")

    def beta1(k):
        return beta1_of_k(k, s, a, p)

    for i in np.flatnonzero(np.sign(values[:-1]) != np.sign(values[1:])):
        lo, hi = grid[i], grid[i + 1]
        if values[i] == 0.0:
            root = lo
        elif values[i + 1] == 0.0:
            continue  # picked up as the left end of the next bracket
        else:
            root = optimize.bisect(beta1, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200)
        residual = abs(beta1(root))
        if residual > Config.BETA1_TOL:
            message = f"bisection stopped at k = {root:.17g} with |beta1| = {residual:.3e}"
            logger.warning(message)
            scan.diagnostics.append(message)
        b0 = beta0_of_k(root, s, a, p)
        if not b0 < 0:
            raise NumericalCheckError(f"beta0 = {b0} is not negative at root k = {root}")
        scan.roots.append(float(root))

    if not scan.roots:
        message = (f"no sign change of beta1 on the {grid_points}-point grid for s = {s}, a = {a}; "
                   f"roots may have merged near k* = {tangency_point(p):.6g}")
        logger.warning(message)
        scan.diagnostics.append(message)
    logger.debug(f"beta1 roots for s={s}, a={a}: {scan.roots}")
    return scan


def find_k_roots(s: float, a: float, p: MaterialParams, grid_points: int = None) -> list[float]:
    return scan_k_roots(s, a, p, grid_points).roots


def stress_equality_residuals(B, B_hat, p: MaterialParams) -> np.ndarray:
    """|sigma(B) - sigma(B_hat)| in the order 11, 22, 33, 12, 13, 23."""
    diff = cauchy_stress(B, p) - cauchy_stress(B_hat, p)
    return np.abs(np.array([diff[0, 0], diff[1, 1], diff[2, 2], diff[0, 1], diff[0, 2], diff[1, 2]]))


def two_phase_state_at(pp: PhaseParams, p: MaterialParams) -> TwoPhaseState:
    """Phase pair at an arbitrary k; sigma is the stress of the F phase."""
    F, F_hat = phase_gradients(pp)
    B, B_hat = F @ F.T, F_hat @ F_hat.T
    betas = betas_model(invariants(B), p)
    return TwoPhaseState(params=pp, F=F, F_hat=F_hat, B=B, B_hat=B_hat,
                         sigma=cauchy_stress(B, p), beta0=betas.beta0, beta1=betas.beta1)


def build_two_phase_state(s: float, a: float, root_index: int, p: MaterialParams) -> TwoPhaseState:
    roots = find_k_roots(s, a, p)
    if not 0 <= root_index < len(roots):
        raise ArgumentError(f"root_index {root_index} out of range for {len(roots)} root(s)")
    state = two_phase_state_at(PhaseParams(roots[root_index], s, a), p)

    scale = max(1.0, abs(state.beta0))
    hydrostatic_gap = float(np.abs(state.sigma - state.beta0 * IDENTITY).max())
    if hydrostatic_gap > Config.RESIDUAL_TOL * scale:
        raise NumericalCheckError(f"common stress is not hydrostatic at k = {roots[root_index]}: gap {hydrostatic_gap:.3e}")
    residual = float(stress_equality_residuals(state.B, state.B_hat, p).max())
    if residual > Config.RESIDUAL_TOL * scale:
        raise NumericalCheckError(f"stress equality fails at k = {roots[root_index]}: residual {residual:.3e}")
    return state


def linear_limit_path(ns: Sequence[int]) -> list[PhaseParams]:
    """k = 1 - 1/n, a = 1, s = 1/n: approaches the identity pair."""
    return [PhaseParams(1.0 - 1.0 / n, 1.0 / n, 1.0) for n in ns]


def linear_limit_scan(path: Sequence[PhaseParams], p: MaterialParams) -> list[float]:
    """beta1 along a path of phase parameters; tends to mu near the identity."""
    return [betas_model(phase_invariants(pp), p).beta1 for pp in path]


def laminate_direction(state: TwoPhaseState) -> tuple[Mat3, np.ndarray, np.ndarray]:
    """(F0, a, n) with F0 + t a (x) n running from F (t = 0) to F_hat (t = 1)."""
    check = rank_one_condition(state.F, state.F_hat)
    if not check.holds:
        raise ArgumentError("phase pair is not rank-one connected")
    return state.F, check.decomposition.a, check.decomposition.n


def rank_one_convexity_probe(p: MaterialParams, F0, a, n, t_grid,
                             energy_fn: Callable[[Mat3], float] = None) -> Optional[ConvexityWitness]:
    """
    g(t) = W(F0 + t a (x) n) on t_grid; returns the first t whose central second
    difference is negative, or None. energy_fn replaces the model energy when given.
    """
    F0, a, n = as_mat3(F0), as_vec3(a), as_vec3(n)
    t = np.asarray(t_grid, dtype=float)
    W = energy_fn if energy_fn is not None else (lambda F: energy(F, p))
    direction = np.outer(a, n)

    g = np.empty(t.size)
    for i, ti in enumerate(t):
        Ft = F0 + ti * direction
        if det(Ft) <= 0.0:
            raise DomainError(f"det(F0 + t a (x) n) <= 0 at t = {ti}")
        g[i] = W(Ft)

    for i in range(1, t.size - 1):
        h1, h2 = t[i] - t[i - 1], t[i + 1] - t[i]
        second = 2.0 * ((g[i + 1] - g[i]) / h2 - (g[i] - g[i - 1]) / h1) / (h1 + h2)
        noise = 64.0 * np.finfo(float).eps * max(1.0, abs(g[i])) / (h1 * h2)
        if second < -noise:
            return ConvexityWitness(t=float(t[i]), second_derivative=float(second))
    return None


def energy_along_segment(p: MaterialParams, F0, a, n, t_grid) -> np.ndarray:
    direction = np.outer(as_vec3(a), as_vec3(n))
    return np.array([energy(as_mat3(F0) + ti * direction, p) for ti in np.asarray(t_grid, dtype=float)])


def plane_strain_case(k: float, s: float, p: MaterialParams) -> TwoPhaseState:
    """a = 1: both phases are plane deformations of the (X1, X2) plane with e3 untouched."""
    return two_phase_state_at(PhaseParams(k, s, 1.0), p)
