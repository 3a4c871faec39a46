"""
Energies and stress measures.

Linear isotropic elasticity (with its inverse), the general isotropic Cauchy
representation sigma = beta0 I + beta1 B + beta_m1 B^-1, and the compressible
energy

    W = mu/2 (I3^(-1/3) I1 - 3) + mu_tilde/4 (I1 - 3)^2 + kappa/2 (I3^(1/2) - 1)^2

which is not rank-one convex. All functions are pure.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from core.affine import AffineMap
from core.config import Config
from core.errors import ArgumentError, ConstraintError, DomainError, InvertibilityError, OrientationError
from core.tensor import (IDENTITY, Invariants, Mat3, SymMat3, Vec3, as_mat3, as_vec3, cofactor, det, dev,
                         invariants, inv_transpose, is_rotation, spd_inverse, spd_sqrt, sym)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MaterialParams:
    mu: float
    mu_tilde: float
    kappa: float

    def __post_init__(self):
        for name in ("mu", "mu_tilde", "kappa"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise DomainError(f"material parameter {name} must be positive, got {value}")


@dataclass(frozen=True)
class BetaCoeffs:
    beta0: float
    beta1: float
    beta_m1: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.beta0, self.beta1, self.beta_m1)


@dataclass(frozen=True)
class EnergyDerivs:
    dW_dI1: float
    dW_dI2: float
    dW_dI3: float


# ---------------------------------------------------------------- linear theory

def linear_energy(grad_u, mu: float, kappa: float) -> float:
    eps = sym(grad_u)
    d = dev(eps)
    return float(mu * np.sum(d * d) + 0.5 * kappa * np.trace(eps) ** 2)


def linear_stress(eps, mu: float, kappa: float) -> SymMat3:
    """sigma = 2 mu dev(eps) + kappa tr(eps) I."""
    e = sym(eps)
    return 2.0 * mu * dev(e) + kappa * np.trace(e) * IDENTITY


def linear_inverse(sigma, mu: float, kappa: float) -> SymMat3:
    """eps = dev(sigma) / (2 mu) + tr(sigma) I / (9 kappa); defined only for mu > 0, kappa > 0."""
    if not mu > 0:
        raise InvertibilityError(f"linear stress-strain law is not invertible for mu = {mu}")
    if not kappa > 0:
        raise InvertibilityError(f"linear stress-strain law is not invertible for kappa = {kappa}")
    s = sym(sigma)
    return dev(s) / (2.0 * mu) + (np.trace(s) / (9.0 * kappa)) * IDENTITY


def linear_displacement(sigma_bar, A_bar, b_bar, mu: float, kappa: float) -> AffineMap:
    """u(X) = [eps_bar + A_bar] X + b_bar for the constant stress sigma_bar; A_bar must be skew."""
    A = as_mat3(A_bar)
    if np.abs(A + A.T).max() > Config.SKEW_TOL:
        raise ArgumentError("A_bar must be skew-symmetric (infinitesimal rotation)")
    eps_bar = linear_inverse(sigma_bar, mu, kappa)
    return AffineMap(eps_bar + A, as_vec3(b_bar))


def linearized_moduli(p: MaterialParams) -> tuple[float, float]:
    """Small-strain (shear, bulk) moduli of the model energy; the mu_tilde term stiffens the bulk response."""
    return p.mu, p.kappa + 2.0 * p.mu_tilde


# ---------------------------------------------------------------- model energy

def _require_orientation(F) -> tuple[Mat3, float]:
    A = as_mat3(F)
    J = det(A)
    if J <= 0.0:
        raise OrientationError(f"deformation gradient must have det F > 0, got {J}")
    return A, J


def energy_from_invariants(inv: Invariants, p: MaterialParams) -> float:
    I1, _, I3 = inv.as_tuple()
    return (0.5 * p.mu * (I3 ** (-1.0 / 3.0) * I1 - 3.0)
            + 0.25 * p.mu_tilde * (I1 - 3.0) ** 2
            + 0.5 * p.kappa * (np.sqrt(I3) - 1.0) ** 2)


def energy_frobenius(F, p: MaterialParams) -> float:
    """Same energy written with ||F|| and det F."""
    A, J = _require_orientation(F)
    iso = A / J ** (1.0 / 3.0)
    nrm2 = float(np.sum(A * A))
    return (0.5 * p.mu * (float(np.sum(iso * iso)) - 3.0)
            + 0.25 * p.mu_tilde * (nrm2 - 3.0) ** 2
            + 0.5 * p.kappa * (J - 1.0) ** 2)


def energy(F, p: MaterialParams) -> float:
    A, _ = _require_orientation(F)
    return energy_from_invariants(invariants(A @ A.T), p)


def energy_derivs(inv: Invariants, p: MaterialParams) -> EnergyDerivs:
    I1, _, I3 = inv.as_tuple()
    return EnergyDerivs(
        dW_dI1=0.5 * p.mu * I3 ** (-1.0 / 3.0) + 0.5 * p.mu_tilde * (I1 - 3.0),
        dW_dI2=0.0,
        dW_dI3=-(p.mu / 6.0) * I1 * I3 ** (-4.0 / 3.0) + 0.5 * p.kappa * I3 ** -0.5 * (np.sqrt(I3) - 1.0),
    )


def betas_general(inv: Invariants, d: EnergyDerivs) -> BetaCoeffs:
    """Response coefficients of sigma = beta0 I + beta1 B + beta_m1 B^-1 for any isotropic W(I1, I2, I3)."""
    I1, I2, I3 = inv.as_tuple()
    if I3 <= 0:
        raise DomainError(f"I3 must be positive, got {I3}")
    root = np.sqrt(I3)
    return BetaCoeffs(
        beta0=2.0 / root * (I2 * d.dW_dI2 + I3 * d.dW_dI3),
        beta1=2.0 / root * d.dW_dI1,
        beta_m1=-2.0 * root * d.dW_dI2,
    )


def betas_model(inv: Invariants, p: MaterialParams) -> BetaCoeffs:
    I1, _, I3 = inv.as_tuple()
    return BetaCoeffs(
        beta0=-(p.mu / 3.0) * I1 * I3 ** (-5.0 / 6.0) + p.kappa * (np.sqrt(I3) - 1.0),
        beta1=p.mu * I3 ** (-5.0 / 6.0) + p.mu_tilde * I3 ** -0.5 * (I1 - 3.0),
        beta_m1=0.0,
    )


def stress_from_betas(B, betas: BetaCoeffs) -> SymMat3:
    Bm = as_mat3(B)
    sigma = betas.beta0 * IDENTITY + betas.beta1 * Bm
    if betas.beta_m1 != 0.0:
        sigma = sigma + betas.beta_m1 * spd_inverse(Bm)
    return 0.5 * (sigma + sigma.T)


def cauchy_stress(B, p: MaterialParams) -> SymMat3:
    return stress_from_betas(B, betas_model(invariants(B), p))


def cauchy_stress_incompressible(B, pressure: float, beta1: float, beta_m1: float) -> SymMat3:
    """sigma = -p I + beta1 B + beta_m1 B^-1 for an isochoric B and a supplied hydrostatic pressure."""
    inv = invariants(B)
    if abs(inv.I3 - 1.0) > Config.INCOMPRESSIBLE_TOL:
        raise ConstraintError(f"incompressible response needs det B = 1, got {inv.I3}")
    return stress_from_betas(B, BetaCoeffs(-pressure, beta1, beta_m1))


def piola_kirchhoff(F, p: MaterialParams) -> Mat3:
    """
    S1 = dW/dF
       = mu J^(-2/3) (F - I1/3 F^-T) + mu_tilde (I1 - 3) F + kappa (J - 1) J F^-T
    with J = det F and I1 = ||F||^2.
    """
    A, J = _require_orientation(F)
    I1 = float(np.sum(A * A))
    FinvT = inv_transpose(A)
    return (p.mu * J ** (-2.0 / 3.0) * (A - (I1 / 3.0) * FinvT)
            + p.mu_tilde * (I1 - 3.0) * A
            + p.kappa * (J - 1.0) * J * FinvT)


def cauchy_from_piola(S1, F) -> SymMat3:
    A, J = _require_orientation(F)
    sigma = as_mat3(S1) @ A.T / J
    return 0.5 * (sigma + sigma.T)


def nominal_traction(F, N, p: MaterialParams) -> Vec3:
    """Reference-configuration traction S1 N (the Neumann datum)."""
    return piola_kirchhoff(F, p) @ as_vec3(N)


def cauchy_traction(sigma, n) -> Vec3:
    return as_mat3(sigma) @ as_vec3(n)


def spatial_normal(F, N) -> Vec3:
    """Unit normal of the deformed image of a plane with reference normal N (Nanson: Cof F N)."""
    m = cofactor(F) @ as_vec3(N)
    return m / np.linalg.norm(m)


# ---------------------------------------------------------------- homogeneous reconstruction

def homogeneous_deformation_from_stress(B_bar, R_bar, b_bar) -> AffineMap:
    """
    Homogeneous deformation phi(X) = (V_bar R_bar) X + b_bar with V_bar = sqrt(B_bar).

    Returned as a displacement map, so deformation_gradient() of the result is V_bar R_bar.
    """
    if not is_rotation(R_bar):
        raise ArgumentError("R_bar must be a proper rotation (R^T R = I, det R = 1)")
    V = spd_sqrt(B_bar)
    return AffineMap.from_deformation(V @ as_mat3(R_bar), as_vec3(b_bar))
