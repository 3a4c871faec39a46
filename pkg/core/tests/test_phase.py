"""
Phase pair: admissibility, beta1 roots, common stress, convexity witness
"""

import numpy as np
import pytest

from core.constitutive import MaterialParams, cauchy_stress
from core.errors import ArgumentError, DomainError, InadmissibleError
from core.phase import (PhaseParams, admissible_smax, beta0_of_k, beta1_of_k, build_two_phase_state, find_k_roots,
                        laminate_direction, linear_limit_path, linear_limit_scan, phase_gradients, phase_invariants,
                        plane_strain_case, rank_one_condition, rank_one_convexity_probe, require_admissible,
                        scan_k_roots, stress_equality_residuals, tangency_point, two_phase_state_at)
from core.tensor import IDENTITY, invariants


def test_admissible_interval(material):
    region = admissible_smax(1.0, material)
    assert region.s_max == pytest.approx(0.4798, abs=1e-4)
    assert region.contains(0.3)
    assert not region.contains(0.0)
    assert not region.contains(0.5)


def test_inadmissible_parameters(material):
    assert admissible_smax(2.0, material) is None
    assert admissible_smax(1.0, MaterialParams(3.0, 0.1, 1.0)) is None
    with pytest.raises(InadmissibleError):
        require_admissible(0.3, 2.0, material)
    with pytest.raises(InadmissibleError):
        require_admissible(0.0, 1.0, material)
    with pytest.raises(InadmissibleError):
        require_admissible(0.49, 1.0, material)
    with pytest.raises(DomainError):
        admissible_smax(0.0, material)


def test_two_roots(material):
    roots = find_k_roots(0.3, 1.0, material)
    assert len(roots) == 2
    assert 0.2 < roots[0] < 0.25
    assert 0.65 < roots[1] < 0.7
    assert roots[1] - roots[0] > 1e-3
    assert roots[0] < tangency_point(material) < roots[1]
    for k in roots:
        assert abs(beta1_of_k(k, 0.3, 1.0, material)) <= 1e-12
        assert beta0_of_k(k, 0.3, 1.0, material) < 0


def test_common_stress_at_roots(material):
    for index in (0, 1):
        state = build_two_phase_state(0.3, 1.0, index, material)
        scale = max(1.0, abs(state.beta0))
        assert stress_equality_residuals(state.B, state.B_hat, material).max() <= 1e-10 * scale
        assert np.abs(state.sigma - state.beta0 * IDENTITY).max() <= 1e-10 * scale
        assert np.abs(cauchy_stress(state.B_hat, material) - state.sigma).max() <= 1e-10 * scale
        assert state.beta0 < 0


def test_root_index_out_of_range(material):
    with pytest.raises(ArgumentError):
        build_two_phase_state(0.3, 1.0, 2, material)


def test_phase_invariants_closed_form(rng):
    for _ in range(50):
        pp = PhaseParams(rng.uniform(0.1, 1.0), rng.uniform(0.0, 0.5), rng.uniform(0.7, 1.5))
        F, F_hat = phase_gradients(pp)
        closed = phase_invariants(pp).as_tuple()
        assert np.allclose(invariants(F @ F.T).as_tuple(), closed, rtol=1e-12)
        assert np.allclose(invariants(F_hat @ F_hat.T).as_tuple(), closed, rtol=1e-12)


def test_phase_pair_is_rank_one_connected(rng):
    for _ in range(100):
        pp = PhaseParams(rng.uniform(0.1, 1.0), rng.uniform(0.01, 0.5), rng.uniform(0.7, 1.5))
        F, F_hat = phase_gradients(pp)
        check = rank_one_condition(F, F_hat)
        assert check.holds
        assert check.residual == 0.0
        assert np.array_equal(check.decomposition.n, [0.0, 1.0, 0.0])
        assert np.abs(check.decomposition.outer() - (F_hat - F)).max() <= 1e-12


def test_rank_one_condition_edge_cases():
    check = rank_one_condition(IDENTITY, IDENTITY)
    assert check.degenerate and not check.holds
    assert not rank_one_condition(IDENTITY, 2.0 * IDENTITY).holds


def test_state_away_from_root_has_stress_jump(material):
    state = two_phase_state_at(PhaseParams(0.5, 0.3, 1.0), material)
    assert state.beta1 != 0.0
    residuals = stress_equality_residuals(state.B, state.B_hat, material)
    # only the shear component differs: beta1 (B12 - B_hat12) = 2 beta1 s a^2
    assert residuals[3] == pytest.approx(2.0 * abs(state.beta1) * 0.3, rel=1e-12)
    assert residuals[[0, 1, 2, 4, 5]].max() <= 1e-12


def test_linear_limit_is_not_infinitesimal(material):
    path = linear_limit_path([10, 100, 1000])
    values = linear_limit_scan(path, material)
    assert abs(values[-1] - material.mu) <= 1e-2
    assert abs(values[-1] - material.mu) < abs(values[0] - material.mu)


def test_plane_strain_case(material):
    state = plane_strain_case(0.5, 0.2, material)
    assert state.F[2, 2] == 1.0
    assert state.params.a == 1.0


def test_convexity_witness_at_root(material):
    state = build_two_phase_state(0.3, 1.0, 0, material)
    F0, a, n = laminate_direction(state)
    assert np.allclose(F0 + np.outer(a, n), state.F_hat)
    witness = rank_one_convexity_probe(material, F0, a, n, np.linspace(0.0, 1.0, 201))
    assert witness is not None
    assert 0.0 < witness.t < 1.0
    assert witness.second_derivative < 0


def test_probe_finds_nothing_for_convex_energy(material):
    t = np.linspace(0.0, 1.0, 51)
    a, n = np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    assert rank_one_convexity_probe(material, IDENTITY, a, n, t, energy_fn=lambda F: float(np.sum(F * F))) is None


def test_probe_rejects_inverted_segment(material):
    a, n = np.array([-2.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        rank_one_convexity_probe(material, IDENTITY, a, n, [0.0, 0.25, 0.75])


def test_small_shear_still_has_two_roots(material):
    with pytest.raises(InadmissibleError):
        scan_k_roots(0.3, 1.5, material)
    scan = scan_k_roots(0.05, 1.0, material)
    assert len(scan.roots) == 2
    assert scan.diagnostics == []


def test_roots_merge_at_the_shear_bound(material):
    s_max = admissible_smax(1.0, material).s_max
    k_star = tangency_point(material)

    near = scan_k_roots(s_max - 1e-6, 1.0, material)
    assert len(near.roots) == 2
    assert near.roots[0] < k_star < near.roots[1]
    assert near.roots[1] - near.roots[0] < 5e-3

    merged = scan_k_roots(s_max - 1e-9, 1.0, material)
    assert merged.roots == []
    assert find_k_roots(s_max - 1e-9, 1.0, material) == []
    assert len(merged.diagnostics) == 1
    assert f"k* = {k_star:.6g}" in merged.diagnostics[0]


def test_rank_two_difference_fails():
    check = rank_one_condition(IDENTITY, IDENTITY + np.diag([1.0, 1.0, 0.0]))
    assert not check.holds
    assert check.residual == 1.0


def test_equal_stretch_sum_gives_equal_roots(material):
    c = 0.3 ** 2 + 2.0
    a = 1.05
    s = np.sqrt(c - a * a - 1.0 / (a * a)) / a
    assert np.allclose(find_k_roots(0.3, 1.0, material), find_k_roots(s, a, material), rtol=0, atol=1e-12)


def test_soft_mu_tilde_is_inadmissible():
    assert admissible_smax(1.0, MaterialParams(1.0, 1.0, 1.0)) is None


def test_zero_direction_has_no_witness(material):
    F, _ = phase_gradients(PhaseParams(0.5, 0.3, 1.0))
    assert rank_one_convexity_probe(material, F, np.zeros(3), np.array([0.0, 1.0, 0.0]), np.linspace(0, 1, 11)) is None
