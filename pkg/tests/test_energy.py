"""Intermediate energy: quadrature, exact boundary identity."""

import numpy as np
import pytest

from g2mono import metric, oracles
from g2mono.energy import (UndefinedEnergyError, boundary_term,
                           energy_density, intermediate_energy)
from g2mono.ode import ProfileState, integrate
from g2mono.series import choose_delta, initial_data, v_series
from g2mono.shooting import profile_of_beta, solve_monopole


def test_flat_zero_energy():
    prof = profile_of_beta(0.0, metric.EUCLIDEAN)
    rep = intermediate_energy(prof, metric.EUCLIDEAN)
    assert rep.value == 0.0 and rep.identity_residual == 0.0


def test_euclidean_identity():
    prof = solve_monopole(metric.EUCLIDEAN, 1.0)
    rep = intermediate_energy(prof, metric.EUCLIDEAN)
    assert rep.identity_residual <= 1e-6
    assert rep.max_partial_residual <= rep.quad_tol
    assert rep.passed


def test_boundary_term_values():
    prof = solve_monopole(metric.EUCLIDEAN, 1.0)
    # BPS closed form: phi(10)(a(10)^2 - 1) with phi(10) = -0.45...
    ref = 0.5 * (1.0 / 10 - 1.0 / np.tanh(10.0))
    ref *= (10.0 / np.sinh(10.0)) ** 2 - 1.0
    assert abs(boundary_term(prof, 10.0) - ref) <= 1e-6
    # small-R limit: phi(0) = 0 kills the term
    assert abs(boundary_term(prof, 1e-3)) <= 1e-5


def test_boundary_term_converges_to_half_mass():
    prof = solve_monopole(metric.EUCLIDEAN, 1.0)
    b_near = boundary_term(prof, 10.0)
    b_far = boundary_term(prof, 200.0)
    assert abs(b_far - 0.5) < abs(b_near - 0.5)
    assert abs(b_far - 0.5) <= 1e-2


def test_density_nonnegative_and_zero_at_origin():
    prof = solve_monopole(metric.BS_S4, 1.0)
    dens = energy_density(prof.r, prof.a, prof.phi, metric.BS_S4)
    assert np.all(dens >= 0.0)
    assert energy_density(np.array([0.0]), np.array([1.0]),
                          np.array([0.0]), metric.BS_S4)[0] == 0.0


def test_linearity_in_mass():
    vals = []
    for m in (1.0, 2.0):
        prof = solve_monopole(metric.HYPERBOLIC, m)
        vals.append(intermediate_energy(prof, metric.HYPERBOLIC).value)
    assert abs(vals[0] - 0.5) <= 1e-5
    assert abs(vals[1] - 1.0) <= 1e-5


def test_blowup_energy_undefined():
    sol = v_series(1.0, metric.EUCLIDEAN.series_coeffs(12), 12)
    d = choose_delta(sol)
    a, phi, _ = initial_data(sol, d)
    res = integrate("minus", ProfileState(d, a, phi), metric.EUCLIDEAN,
                    100.0, tol=1e-10)

    class Bad:
        result = res
        mass = 1.0
        flat = False

    with pytest.raises(UndefinedEnergyError):
        intermediate_energy(Bad(), metric.EUCLIDEAN)


def test_instanton_branch_zero_energy():
    # a = 1, phi = 0 has vanishing reduced energy density everywhere
    rs = np.geomspace(0.01, 30.0, 100)
    dens = energy_density(rs, np.ones_like(rs), np.zeros_like(rs),
                          metric.BS_S4)
    assert np.max(np.abs(dens)) == 0.0
