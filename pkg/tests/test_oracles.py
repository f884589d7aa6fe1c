"""Closed-form families: values, derivatives, residuals, field conversion."""

import numpy as np
import pytest

from g2mono import metric, oracles
from g2mono.metric import DomainError
from g2mono.shooting import solve_monopole

RS = np.geomspace(0.01, 10.0, 200)


def test_bps_point_values():
    st = oracles.eval(oracles.bps_mass(1.0), 1.0)
    assert abs(st.a - 0.85092) <= 1e-5
    assert abs(st.phi + 0.15652) <= 1e-5


def test_hyperbolic_point_values():
    st = oracles.eval(oracles.hyperbolic(1.0), 1.0)
    assert abs(st.a - 2 * np.sinh(1) / np.sinh(2)) <= 1e-12
    assert abs(st.a - 0.64805) <= 1e-5
    assert abs(st.phi + 0.38079) <= 1e-5


def test_small_r_stability():
    # series evaluation below 1e-3 agrees with the raw closed form just
    # above the switch and has the right limits at 0
    st = oracles.eval(oracles.bps_mass(1.0), 0.0)
    assert st.a == 1.0 and st.phi == 0.0
    lo = oracles.eval(oracles.bps_mass(1.0), 9.99e-4)
    hi = oracles.eval(oracles.bps_mass(1.0), 1.001e-3)
    # the fields themselves vary by ~|f'| * 2e-6 across the gap
    assert abs(lo.a - hi.a) <= 1e-6
    assert abs(lo.phi - hi.phi) <= 1e-6


def test_bps_residual():
    r = oracles.residual(oracles.bps_mass(1.0), "minus", metric.EUCLIDEAN, RS)
    assert r <= 1e-12


def test_bps_general_family_residual():
    # D > 0: solves the system but is not extendable (a(0) != 1)
    form = oracles.bps(2.0, 0.5)
    r = oracles.residual(form, "minus", metric.EUCLIDEAN, RS)
    assert r <= 1e-12
    a0 = oracles.eval(form, 1e-6).a
    assert abs(a0 - 1.0) > 0.5


def test_hyperbolic_residual():
    for m in (1.0, 2.5):
        r = oracles.residual(oracles.hyperbolic(m), "minus",
                             metric.HYPERBOLIC, RS)
        assert r <= 5e-12


def test_dirac_exact():
    form = oracles.dirac_euclidean(1.0)
    st = oracles.eval(form, 2.0)
    assert st.a == 0.0 and st.phi == 1.25
    assert oracles.residual(form, "minus", metric.EUCLIDEAN, RS) == 0.0
    with pytest.raises(DomainError):
        oracles.eval(form, 0.0)


def test_flat_residual_zero():
    for met in (metric.EUCLIDEAN, metric.HYPERBOLIC, metric.BS_S4):
        assert oracles.residual(oracles.flat(), "minus", met, RS) == 0.0


def test_su3_u_values():
    assert oracles.su3_u(0.0, 3.7) == 1.0
    assert oracles.su3_u(5.0, 0.0) == 1.0
    # c=1, s->inf: limit (1-c)/(1+c) = 0
    assert abs(oracles.su3_u(1.0, 1e8)) <= 1e-7


def test_su3_instanton_residuals():
    rhos = np.array([metric.rho_of_s(s) for s in np.geomspace(0.01, 50, 80)])
    for c in (0.0, 1.0, 2.0, 5.0):
        for branch in (1, -1):
            form = oracles.su3_instanton(c, branch)
            r = oracles.residual(form, "su3", metric.BS_S4, rhos)
            assert r <= 1e-10, (c, branch)


def test_su3_branch_and_domain_validation():
    with pytest.raises(DomainError):
        oracles.su3_instanton(1.0, 2)
    with pytest.raises(DomainError):
        oracles.su3_instanton(-0.5)
    oracles.su3_instanton(-1.0)     # the flat special case is allowed


def test_bs_instanton_profile():
    s = np.array([0.0, 1.0, 3.0])
    out = oracles.bs_instanton_profile(1, s)
    assert np.all(out["b"] == 1.0)
    assert abs(out["a_conn"][0] - 1.0) <= 1e-15
    assert abs(out["a_conn"][1] - 2 ** -0.5) <= 1e-12
    assert oracles.residual(oracles.bs_instanton(1), "minus",
                            metric.BS_S4, RS) == 0.0


def test_solver_matches_oracles():
    for met, form in ((metric.EUCLIDEAN, oracles.bps_mass(0.5)),
                      (metric.HYPERBOLIC, oracles.hyperbolic(0.5))):
        prof = solve_monopole(met, 0.5)
        rs = np.linspace(0.0, 10.0, 101)
        a_ref = np.array([oracles.eval(form, r).a for r in rs])
        assert np.max(np.abs(prof.eval_a(rs) - a_ref)) <= 1e-6


def test_physical_fields():
    prof = solve_monopole(metric.BS_S4, 1.0)
    table = oracles.physical_fields(prof, "bs_s4")
    assert abs(table["a_conn"][0] - 1.0) <= 1e-4   # first sample sits at r ~ delta/32
    # monopole decays faster than the instanton's f^2 envelope
    assert table["a_conn_limit"] <= 1e-6
    assert table["ratio_to_f2"][-1] <= 1e-6
    with pytest.raises(ValueError):
        oracles.physical_fields(prof, "euclidean")


def test_parameter_validation():
    with pytest.raises(DomainError):
        oracles.bps(-1.0, 0.0)
    with pytest.raises(DomainError):
        oracles.bps_mass(0.0)
    with pytest.raises(DomainError):
        oracles.hyperbolic(-2.0)
