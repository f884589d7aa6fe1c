"""Mass bijection and full profiles."""

import numpy as np
import pytest

from g2mono import metric
from g2mono.shooting import (MonopoleProfile, NoSolutionError,
                             beta_of_mass, bubbling_report, mass_of_beta,
                             profile_of_beta, solve_monopole)


def test_mass_of_beta_bps():
    assert abs(mass_of_beta(-1.0 / 3.0, metric.EUCLIDEAN) - 1.0) <= 1e-9
    assert abs(mass_of_beta(-4.0 / 3.0, metric.EUCLIDEAN) - 2.0) <= 1e-9


def test_mass_of_beta_hyperbolic():
    # closed-form mass 1 solution has v2 = -(m^2 + 2m)/3 = -1
    assert abs(mass_of_beta(-1.0, metric.HYPERBOLIC) - 1.0) <= 1e-9


def test_mass_of_beta_zero_and_positive():
    assert mass_of_beta(0.0, metric.BS_S4) == 0.0
    with pytest.raises(NoSolutionError):
        mass_of_beta(0.25, metric.EUCLIDEAN)


def test_beta_of_mass_inverts():
    b = beta_of_mass(1.0, metric.EUCLIDEAN)
    assert abs(b + 1.0 / 3.0) <= 1e-9
    b = beta_of_mass(1.0, metric.HYPERBOLIC)
    assert abs(b + 1.0) <= 1e-8


def test_beta_of_mass_requires_positive():
    with pytest.raises(ValueError):
        beta_of_mass(0.0, metric.EUCLIDEAN)


def test_profile_invariants_bs():
    prof = solve_monopole(metric.BS_CP2, 1.0)
    assert isinstance(prof, MonopoleProfile)
    pos = prof.r > 0
    assert np.all(prof.a[pos] > 0) and np.all(prof.a[pos] <= 1.0)
    assert np.all(prof.phi[pos] < 0)
    # mass consistency against the tail identity
    R, a_R, bound = prof.tail
    G_R = metric.BS_CP2.green_tail(R)
    phi_R = prof.eval_phi(R)
    assert abs(prof.mass - 2.0 * (G_R - phi_R)) <= 1e-12
    assert bound <= prof.tol


def test_zero_set_only_at_origin():
    prof = solve_monopole(metric.BS_S4, 1.0)
    sel = (prof.r > 0) & (prof.r <= 1.0)
    assert np.min(np.abs(prof.phi[sel]) / prof.r[sel]) > 0


def test_flat_profile():
    prof = profile_of_beta(0.0, metric.EUCLIDEAN)
    assert prof.flat and prof.mass == 0.0
    assert np.all(prof.a == 1.0) and np.all(prof.phi == 0.0)


def test_tail_correction_consistency():
    # extracting at twice the radius moves the mass by less than the
    # advertised bound 2 a^2(R) G(R)
    prof = solve_monopole(metric.EUCLIDEAN, 1.0)
    R, a_R, bound = prof.tail
    R2 = 2.0 * R
    a2 = prof.eval_a(R2)
    phi2 = prof.eval_phi(R2)
    m2 = 2.0 * (metric.EUCLIDEAN.green_tail(R2) - phi2)
    assert abs(m2 - prof.mass) <= bound + 1e-12


def test_profile_eval_piecewise_continuity():
    prof = solve_monopole(metric.EUCLIDEAN, 1.0)
    # across the series/integrator hand-off and the tail hand-off
    for r0 in (prof.delta, prof.R_end):
        lo = prof.eval_a(r0 * (1 - 1e-9)), prof.eval_phi(r0 * (1 - 1e-9))
        hi = prof.eval_a(r0 * (1 + 1e-9)), prof.eval_phi(r0 * (1 + 1e-9))
        assert abs(lo[0] - hi[0]) <= 1e-7
        assert abs(lo[1] - hi[1]) <= 1e-7


def test_bubbling_euclidean_exact():
    rep = bubbling_report([2.0, 4.0], metric.EUCLIDEAN, R=1.0)
    assert max(rep.sup_bps) <= 1e-7
    assert all(rep.translated_ok)
