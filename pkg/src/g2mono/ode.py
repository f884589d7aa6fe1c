"""Right-hand sides and adaptive integration for the reduced systems.

Three systems appear:

* "minus"  -- the monopole system  a' = 2 phi a,  phi' = (a^2-1)/(2h^2).
  Integrated in the log variables (v, w) = (2 log a, 4 phi), which keeps
  a = e^(v/2) > 0 by construction and matches the singular-point
  expansion of the `series` module.
* "plus"   -- the non-extendable systems  phi' = sigma (1+a^2)/(2h^2),
  a' = sigma 2 a phi  (sigma = -1 and +1).
* "su3"    -- the five-field system (b1, b2, b3, phi1, phi2) on the
  Bryant-Salamon background.

Derivatives are always with respect to the geodesic radius r (called
rho on the BS backgrounds).  Internally BS integrations run in the
fiber coordinate s to avoid inverting rho(s) inside the right-hand
side; results are reported in r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp, cumulative_trapezoid

from .metric import MetricProfile, DomainError, bs_f, bs_h2_of_s, rho_of_s, s_of_rho

V_BLOWUP = 50.0
PHI_R_BLOWUP = 1.0e6
A_FLOOR = 1.0e-120
_V_FLOOR = 2.0 * math.log(A_FLOOR)
_EXP_CLIP = 700.0


class StiffnessError(RuntimeError):
    def __init__(self, msg, state=None):
        super().__init__(msg)
        self.state = state


@dataclass(frozen=True)
class ProfileState:
    r: float
    a: float
    phi: float


@dataclass(frozen=True)
class SU3State:
    r: float
    b1: complex
    b2: complex
    b3: complex
    phi1: float
    phi2: float


def _expm1_clipped(v):
    return np.expm1(np.clip(v, None, _EXP_CLIP))


# ---------------------------------------------------------------------------
# right-hand sides (in r / rho)
# ---------------------------------------------------------------------------

def rhs_minus(state: ProfileState, metric: MetricProfile):
    if state.r <= 0:
        raise DomainError("rhs requires r > 0")
    h2 = metric.h2(state.r)
    return (2.0 * state.phi * state.a, (state.a ** 2 - 1.0) / (2.0 * h2))


def rhs_plus(state: ProfileState, metric: MetricProfile, sigma: int):
    if state.r <= 0:
        raise DomainError("rhs requires r > 0")
    if sigma not in (-1, 1):
        raise ValueError("sigma must be +1 or -1")
    h2 = metric.h2(state.r)
    return (sigma * 2.0 * state.a * state.phi,
            sigma * (1.0 + state.a ** 2) / (2.0 * h2))


def rhs_su3(state: SU3State, metric: MetricProfile = None):
    """Five-field system on the BS background (derivatives in rho)."""
    if state.r <= 0:
        raise DomainError("rhs requires r > 0")
    s = s_of_rho(state.r)
    h2 = bs_h2_of_s(s)
    fs = bs_f(s) / s
    b1, b2, b3, p1, p2 = state.b1, state.b2, state.b3, state.phi1, state.phi2
    return (
        fs * b2 * b3 - b1 * (2.0 * p1 + p2),
        fs * b1 * b3 + b2 * (p1 - p2),
        fs * b1 * b2 + b3 * (p1 + 2.0 * p2),
        (b2 * b2 - b1 * b1 - 1.0).real / (2.0 * h2),
        (b3 * b3 - b2 * b2 + 1.0).real / (2.0 * h2),
    )


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

@dataclass
class IntegrationResult:
    system: str
    metric: MetricProfile
    classification: str                  # bounded | blowup | flat
    stats: dict
    r: np.ndarray                        # adaptive grid (geodesic radius)
    y: np.ndarray                        # rows: system state on the grid
    r_end: float
    _eval: Callable = field(repr=False)  # r array -> state rows
    sigma: int = -1

    # minus-system conveniences -------------------------------------

    def eval(self, r):
        return self._eval(np.asarray(r, dtype=float))

    def eval_a_phi(self, r):
        if self.system != "minus":
            raise ValueError("eval_a_phi applies to the minus system")
        v, w = self._eval(np.asarray(r, dtype=float))
        return np.exp(0.5 * np.clip(v, _V_FLOOR, _EXP_CLIP)), 0.25 * w

    @property
    def samples(self) -> Sequence:
        if self.system == "minus":
            v, w = self.y
            a = np.exp(0.5 * np.clip(v, _V_FLOOR, _EXP_CLIP))
            return [ProfileState(float(r), float(ai), float(0.25 * wi))
                    for r, ai, wi in zip(self.r, a, w)]
        if self.system == "plus":
            return [ProfileState(float(r), float(a), float(p))
                    for r, a, p in zip(self.r, self.y[0], self.y[1])]
        return [SU3State(float(r), *map(complex, row[:3]), float(row[3].real),
                         float(row[4].real))
                for r, row in zip(self.r, self.y.T)]


def _bs_like(metric: MetricProfile) -> bool:
    return metric.id in ("bs_s4", "bs_cp2")


def integrate(system: str, initial, metric: MetricProfile, r_max: float,
              tol: float = 1e-10, sigma: int = -1, r_min: float = None,
              v_stop: float = None) -> IntegrationResult:
    """Adaptive embedded Runge-Kutta (DOP853) trace of one of the
    reduced systems.

    `initial` is a ProfileState (minus/plus) or SU3State.  For the plus
    system pass r_min < initial.r to integrate backwards toward the
    singular origin.  `v_stop` adds a terminal event at v = v_stop
    (minus system only; used by the shooting driver).
    """
    if not 1e-14 <= tol <= 1e-6:
        raise ValueError("tol must lie in [1e-14, 1e-6]")
    if initial.r <= 0:
        raise DomainError("initial radius must be > 0")

    if system == "minus":
        return _integrate_minus(initial, metric, r_max, tol, v_stop)
    if system == "plus":
        return _integrate_plus(initial, metric, r_max, tol, sigma, r_min)
    if system == "su3":
        return _integrate_su3(initial, metric, r_max, tol)
    raise ValueError(f"unknown system {system!r}")


def _variable_change(metric: MetricProfile):
    """Return (to_x, to_r, jac, h2_x): the integration variable x, maps
    between x and r, the Jacobian dr/dx, and h^2 as a function of x."""
    if _bs_like(metric):
        return (lambda r: s_of_rho(r), lambda x: rho_of_s(x),
                lambda x: float(bs_f(x)), lambda x: float(bs_h2_of_s(x)))
    return (lambda r: r, lambda x: x, lambda x: 1.0,
            lambda x: metric.h2(x))


def _run(fun, x0, x1, y0, tol, events, complex_ok=False):
    sol = solve_ivp(
        fun, (x0, x1), y0, method="DOP853", dense_output=True,
        rtol=0.9 * tol, atol=0.1 * tol, events=events,
    )
    if sol.status == -1:
        raise StiffnessError(sol.message, state=(sol.t[-1], sol.y[:, -1]))
    return sol


def _integrate_minus(initial: ProfileState, metric, r_max, tol, v_stop):
    if initial.a <= 0:
        raise DomainError("minus system requires a > 0 (use a=0 via green.dirac)")
    v0 = 2.0 * math.log(initial.a)
    w0 = 4.0 * initial.phi
    to_x, to_r, jac, h2_x = _variable_change(metric)
    x0, x1 = to_x(initial.r), to_x(r_max)

    def fun(x, y):
        J = jac(x)
        return [J * y[1], J * 2.0 * _expm1_clipped(y[0]) / h2_x(x)]

    def ev_blowup(x, y):
        return y[0] - V_BLOWUP
    ev_blowup.terminal = True
    ev_blowup.direction = 1

    def ev_phi(x, y):
        return abs(y[1]) * 0.25 * to_r(x) - PHI_R_BLOWUP
    ev_phi.terminal = True

    events = [ev_blowup, ev_phi]
    if v_stop is not None:
        def ev_stop(x, y):
            return y[0] - v_stop
        ev_stop.terminal = True
        ev_stop.direction = -1
        events.append(ev_stop)

    def ev_floor(x, y):
        return y[0] - _V_FLOOR
    ev_floor.terminal = True
    ev_floor.direction = -1
    events.append(ev_floor)

    flat = v0 == 0.0 and w0 == 0.0
    sol = _run(fun, x0, x1, [v0, w0], tol, events)
    blowup = len(sol.t_events[0]) > 0 or len(sol.t_events[1]) > 0
    classification = "flat" if flat else ("blowup" if blowup else "bounded")

    xs = sol.t
    rs = np.array([to_r(x) for x in xs]) if _bs_like(metric) else xs.copy()

    def evaluate(r_arr):
        x = np.array([to_x(r) for r in np.atleast_1d(r_arr)]) \
            if _bs_like(metric) else np.atleast_1d(r_arr)
        return sol.sol(x)

    return IntegrationResult(
        system="minus", metric=metric, classification=classification,
        stats={"nfev": sol.nfev, "n_steps": len(sol.t) - 1,
               "status": sol.status, "message": sol.message},
        r=rs, y=sol.y, r_end=float(rs[-1]), _eval=evaluate,
    )


def _integrate_plus(initial: ProfileState, metric, r_max, tol, sigma, r_min):
    if sigma not in (-1, 1):
        raise ValueError("sigma must be +1 or -1")
    to_x, to_r, jac, h2_x = _variable_change(metric)
    x0 = to_x(initial.r)
    x1 = to_x(r_min) if r_min is not None else to_x(r_max)

    def fun(x, y):
        J = jac(x)
        return [J * sigma * 2.0 * y[0] * y[1],
                J * sigma * (1.0 + y[0] ** 2) / (2.0 * h2_x(x))]

    def ev_phi(x, y):
        return abs(y[1]) * to_r(x) - PHI_R_BLOWUP
    ev_phi.terminal = True

    sol = _run(fun, x0, x1, [initial.a, initial.phi], tol, [ev_phi])
    blowup = len(sol.t_events[0]) > 0
    classification = "blowup" if blowup else "bounded"

    xs = sol.t
    rs = np.array([to_r(x) for x in xs]) if _bs_like(metric) else xs.copy()

    def evaluate(r_arr):
        x = np.array([to_x(r) for r in np.atleast_1d(r_arr)]) \
            if _bs_like(metric) else np.atleast_1d(r_arr)
        return sol.sol(x)

    return IntegrationResult(
        system="plus", metric=metric, classification=classification,
        stats={"nfev": sol.nfev, "n_steps": len(sol.t) - 1,
               "status": sol.status, "message": sol.message},
        r=rs, y=sol.y, r_end=float(rs[-1]), _eval=evaluate, sigma=sigma,
    )


def _integrate_su3(initial: SU3State, metric, r_max, tol):
    to_x, to_r, jac, h2_x = _variable_change(metric)
    x0, x1 = to_x(initial.r), to_x(r_max)
    y0 = np.array([initial.b1, initial.b2, initial.b3,
                   initial.phi1, initial.phi2], dtype=complex)

    def fun(x, y):
        st = SU3State(to_r(x), y[0], y[1], y[2], y[3].real, y[4].real)
        d = rhs_su3(st, metric)
        J = jac(x)
        return [J * di for di in d]

    def ev_big(x, y):
        return float(np.max(np.abs(y))) - PHI_R_BLOWUP
    ev_big.terminal = True

    sol = _run(fun, x0, x1, y0, tol, [ev_big])
    classification = "blowup" if len(sol.t_events[0]) else "bounded"
    xs = sol.t
    rs = np.array([to_r(x) for x in xs]) if _bs_like(metric) else xs.copy()

    def evaluate(r_arr):
        x = np.array([to_x(r) for r in np.atleast_1d(r_arr)]) \
            if _bs_like(metric) else np.atleast_1d(r_arr)
        return sol.sol(x)

    return IntegrationResult(
        system="su3", metric=metric, classification=classification,
        stats={"nfev": sol.nfev, "n_steps": len(sol.t) - 1,
               "status": sol.status, "message": sol.message},
        r=rs, y=sol.y, r_end=float(rs[-1]), _eval=evaluate,
    )


# ---------------------------------------------------------------------------
# comparison envelopes
# ---------------------------------------------------------------------------

@dataclass
class EnvelopeReport:
    r: np.ndarray
    v: np.ndarray
    lower_quadrature: np.ndarray     # -k2 - k1 (r-d) - 2 int int h^-2
    lower_linear: np.ndarray         # solution of v'' = (2/h^2) v, same data
    upper_tangent: np.ndarray        # -k2 - k1 (r-d)
    ok: np.ndarray
    worst_margin: float

    @property
    def passed(self) -> bool:
        return bool(np.all(self.ok))


def envelope_check(result: IntegrationResult, metric: MetricProfile,
                   n_grid: int = 400, slack: float = 1e-7) -> EnvelopeReport:
    """Check the comparison envelopes for a bounded minus-type solution
    with v(d) <= 0, v'(d) <= 0:

        max(v_b, v_lin)  <=  v  <=  v(d) + v'(d) (r - d)

    where v_b = v(d) + v'(d)(r-d) - 2 int int h^-2 comes from
    e^v - 1 >= -1, the tangent line from e^v - 1 <= 0, and v_lin solves
    the linear comparison equation v'' = (2/h^2) v_lin with the same
    initial data (e^v - 1 >= v).  Note both computable curves bound v
    from below; the stated inequalities are those the comparison lemma
    actually yields.
    """
    if result.system != "minus":
        raise ValueError("envelope_check applies to the minus system")
    if result.classification == "blowup":
        raise ValueError("envelope_check requires a non-blowup solution")

    d = float(result.r[0])
    r_end = float(result.r_end)
    rs = np.linspace(d, r_end, n_grid)
    v, w = result.eval(rs)
    v0, w0 = float(v[0]), float(w[0])
    if v0 > 0 or w0 > 0:
        raise ValueError("envelope_check requires v(d) <= 0 and v'(d) <= 0")

    tangent = v0 + w0 * (rs - d)

    inv_h2 = 1.0 / np.asarray(metric.h2(rs), dtype=float)
    J = cumulative_trapezoid(inv_h2, rs, initial=0.0)
    II = cumulative_trapezoid(J, rs, initial=0.0)
    lower_quad = tangent - 2.0 * II

    # auxiliary linear integration, in the same variable change as the
    # main solve
    to_x, to_r, jac, h2_x = _variable_change(metric)
    xs0, xs1 = to_x(d), to_x(r_end)

    def lin(x, y):
        Jx = jac(x)
        return [Jx * y[1], Jx * 2.0 * y[0] / h2_x(x)]

    sol = solve_ivp(lin, (xs0, xs1), [v0, w0], method="DOP853",
                    dense_output=True, rtol=1e-10, atol=1e-12)
    x_eval = np.array([to_x(r) for r in rs]) if _bs_like(metric) else rs
    lower_lin = sol.sol(x_eval)[0]

    tol = slack * (1.0 + np.abs(v))
    ok = (v >= np.maximum(lower_quad, lower_lin) - tol) & (v <= tangent + tol)
    margins = np.minimum(v - np.maximum(lower_quad, lower_lin), tangent - v)
    return EnvelopeReport(
        r=rs, v=v, lower_quadrature=lower_quad, lower_linear=lower_lin,
        upper_tangent=tangent, ok=ok, worst_margin=float(margins.min()),
    )
