"""Singular-point initializer for v = 2 log a.

The reduced monopole system has a regular singular point at r = 0; the
second-order form

    v'' = (2/h^2) (e^v - 1),   v(0) = v'(0) = 0,

admits a unique formal power-series solution once the r^2 coefficient
v_2 = beta is fixed.  Writing h^2 = r^2 phi(r), psi = 1/phi, the
coefficients satisfy

    (n - 2)(n + 1) v_n = 2 * [r^n] ( psi(r) (e^v - 1) ),   n >= 3,

where the right-hand side is evaluated with v_n := 0 (its linear
occurrence, psi_0 * v_n, has been moved to the left).

`v_series` runs this recurrence in exact rational arithmetic;
`v_series_oracle` independently builds the same series by fixed-point
iteration of the double integral of (2/h^2)(exp(v) - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fps import FormalSeries


class SeriesTruncationError(ValueError):
    def __init__(self, msg, admissible_delta):
        super().__init__(msg)
        self.admissible_delta = admissible_delta


@dataclass(frozen=True)
class SeriesSolution:
    beta: Fraction
    coeffs: tuple            # v_0 .. v_N, exact rationals
    metric_coeffs: tuple     # phi_0 .. as used
    order: int

    def v_at(self, r: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * r + float(c)
        return acc

    def vdot_at(self, r: float) -> float:
        acc = 0.0
        for i in range(self.order, 0, -1):
            acc = acc * r + i * float(self.coeffs[i])
        return acc

    def truncation_bound(self, delta: float) -> float:
        # a-posteriori monitor: magnitude of the last retained terms
        n = self.order
        tail = [abs(float(self.coeffs[i])) * delta ** i for i in (n - 1, n)]
        return max(tail)


def _checked_metric(metric_coeffs, order) -> FormalSeries:
    phi = FormalSeries([Fraction(c) for c in metric_coeffs], order)
    if phi[0] != 1:
        raise ValueError("metric series must have phi_0 = 1")
    return phi


def v_series(beta, metric_coeffs, order: int) -> SeriesSolution:
    """Recurrence solution of the formal initial value problem."""
    if order < 2:
        raise ValueError("order must be >= 2")
    beta = Fraction(beta)
    phi = _checked_metric(metric_coeffs, order)
    psi = phi.inverse()
    v = [Fraction(0), Fraction(0), beta] + [Fraction(0)] * (order - 2)
    for n in range(3, order + 1):
        ev = FormalSeries(v, n).exp() - FormalSeries([1], n)
        rhs = (psi.truncate(n) * ev)[n]
        v[n] = 2 * rhs / ((n - 2) * (n + 1))
    return SeriesSolution(
        beta=beta,
        coeffs=tuple(v),
        metric_coeffs=tuple(phi[i] for i in range(order + 1)),
        order=order,
    )


def v_series_oracle(beta, metric_coeffs, order: int) -> SeriesSolution:
    """Independent construction: iterate

        v  <-  double integral of  psi(r) * (e^v - 1) * 2 / r^2

    starting from v = beta r^2.  The map is affine in each coefficient
    (the e^v linear term feeds v_n back into itself with slope
    lambda_n = 2/((n-1)n)), so each raw sweep only contracts; a
    per-coefficient affine extrapolation x = (m - lambda*x_old)/(1-lambda)
    turns every sweep into an exact solve of its lowest unconverged
    order.  `order` sweeps therefore suffice for exact agreement.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    beta = Fraction(beta)
    phi = _checked_metric(metric_coeffs, order)
    psi = phi.inverse()
    v = FormalSeries([0, 0, beta], order)
    for _ in range(order):
        ev = v.exp() - FormalSeries([1], order)
        w = (psi * ev * 2).shift(-2)           # (2/h^2)(e^v - 1), regular at 0
        mapped = w.integrate().integrate().truncate(order)
        out = [Fraction(0), Fraction(0), beta]
        for n in range(3, order + 1):
            lam = Fraction(2, (n - 1) * n)
            out.append((mapped[n] - lam * v[n]) / (1 - lam))
        v_new = FormalSeries(out, order)
        if v_new == v:
            break
        v = v_new
    return SeriesSolution(
        beta=beta,
        coeffs=tuple(v[i] for i in range(order + 1)),
        metric_coeffs=tuple(phi[i] for i in range(order + 1)),
        order=order,
    )


def choose_delta(series: SeriesSolution, bound: float = 1e-14,
                 max_delta: float = 0.1) -> float:
    """Largest hand-off radius with truncation monitor below `bound`."""
    top = max(abs(float(c)) for c in series.coeffs[2:]) if series.order >= 2 else 0.0
    if top == 0.0:
        return max_delta
    delta = max_delta
    while delta > 1e-6 and series.truncation_bound(delta) > bound:
        delta *= 0.75
    return delta


def initial_data(series: SeriesSolution, delta: float,
                 bound: float = 1e-14) -> tuple[float, float, float]:
    """Evaluate (a, phi, truncation bound) at the hand-off radius.

    a = exp(v(delta)/2),  phi = v'(delta)/4.
    """
    tb = series.truncation_bound(delta)
    if tb > bound:
        n = series.order
        top = abs(float(series.coeffs[n])) or abs(float(series.coeffs[n - 1]))
        admissible = (bound / top) ** (1.0 / n) if top else delta
        raise SeriesTruncationError(
            f"delta={delta} too large for order {n} (monitor {tb:.2e} > {bound:.2e})",
            admissible_delta=min(admissible, delta),
        )
    a = math.exp(0.5 * series.v_at(delta))
    phi = 0.25 * series.vdot_at(delta)
    return a, phi, tb
