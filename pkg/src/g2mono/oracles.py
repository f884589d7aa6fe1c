"""Closed-form solution families used as oracles.

Families (all exact solutions of their reduced systems):

* bps(C, D):       a = C r / sinh(Cr + D),  phi = (1/r - C coth(Cr+D))/2
                   (D = 0, C = m is the extendable BPS monopole)
* hyperbolic(m):   a = (m+1) sinh r / sinh((m+1) r),
                   phi = (coth r - (m+1) coth((m+1) r))/2
* dirac_euclidean(m):  a = 0,  phi = m + 1/(2r)  (the abelian solution
                   of the minus system in the fixed G >= 0 convention)
* flat:            a = 1, phi = 0
* bs_instanton(sign):  solver fields b = sign, phi = 0; geometric
                   connection coefficient a_conn = f^2 = (1+s^2)^(-1/2)
* su3_instanton(c, branch):  the five-field family built from u_c(s);
                   b1, b3 are purely imaginary for c > 0 (the closed form
                   sqrt(u_c^2 - 1) with u_c^2 <= 1), so evaluation and
                   residuals are done in complex arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ode
from .metric import (MetricProfile, EUCLIDEAN, DomainError, bs_f, bs_f2,
                     rho_of_s, s_of_rho)
from .ode import ProfileState, SU3State, rhs_minus, rhs_plus, rhs_su3

_SMALL_R = 1e-3

# series of x/sinh(x) and of coth(x) - 1/x, six terms each
_A_SER = (1.0, -1.0 / 6.0, 7.0 / 360.0, -31.0 / 15120.0, 127.0 / 604800.0,
          -73.0 / 3421440.0)
_COTH_SER = (1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0,
             2.0 / 93555.0, -1382.0 / 638512875.0)


def _x_over_sinh(x):
    """x / sinh(x), stable near 0."""
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    small = np.abs(x) < 0.2
    out = np.empty_like(x)
    xs = x[small] ** 2
    acc = np.zeros_like(xs)
    for c in reversed(_A_SER):
        acc = acc * xs + c
    out[small] = acc
    xb = x[~small]
    out[~small] = xb / np.sinh(xb)
    return float(out[0]) if scalar else out


def _x_over_sinh_prime(x):
    """d/dx of x / sinh(x), stable near 0."""
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    small = np.abs(x) < 0.2
    out = np.empty_like(x)
    xs = x[small]
    x2 = xs ** 2
    acc = np.zeros_like(xs)
    for k in range(len(_A_SER) - 1, 0, -1):
        acc = acc * x2 + 2 * k * _A_SER[k]
    out[small] = xs * acc
    xb = x[~small]
    sh, ch = np.sinh(xb), np.cosh(xb)
    out[~small] = 1.0 / sh - xb * ch / sh ** 2
    return float(out[0]) if scalar else out


def _coth_minus_inv(x):
    """coth(x) - 1/x, stable near 0."""
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    small = np.abs(x) < 0.2
    out = np.empty_like(x)
    xs = x[small]
    x2 = xs ** 2
    acc = np.zeros_like(xs)
    for c in reversed(_COTH_SER):
        acc = acc * x2 + c
    out[small] = xs * acc
    xb = x[~small]
    out[~small] = 1.0 / np.tanh(xb) - 1.0 / xb
    return float(out[0]) if scalar else out


def _coth_minus_inv_prime(x):
    """d/dx of coth(x) - 1/x, i.e. 1/x^2 - csch^2(x), stable near 0."""
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    small = np.abs(x) < 0.2
    out = np.empty_like(x)
    x2 = x[small] ** 2
    acc = np.zeros_like(x2)
    for k in range(len(_COTH_SER) - 1, -1, -1):
        acc = acc * x2 + (2 * k + 1) * _COTH_SER[k]
    out[small] = acc
    xb = x[~small]
    out[~small] = 1.0 / xb ** 2 - 1.0 / np.sinh(xb) ** 2
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class ClosedForm:
    family: str
    params: tuple


def bps(C: float, D: float) -> ClosedForm:
    if C <= 0 or D < 0:
        raise DomainError("bps family requires C > 0, D >= 0")
    return ClosedForm("bps", (float(C), float(D)))


def bps_mass(m: float) -> ClosedForm:
    if m <= 0:
        raise DomainError("bps_mass requires m > 0")
    return ClosedForm("bps", (float(m), 0.0))


def hyperbolic(m: float) -> ClosedForm:
    if m <= 0:
        raise DomainError("hyperbolic family requires m > 0")
    return ClosedForm("hyperbolic", (float(m),))


def dirac_euclidean(m: float) -> ClosedForm:
    return ClosedForm("dirac_euclidean", (float(m),))


def flat() -> ClosedForm:
    return ClosedForm("flat", ())


def bs_instanton(sign: int = 1) -> ClosedForm:
    if sign not in (-1, 1):
        raise DomainError("sign must be +1 or -1")
    return ClosedForm("bs_instanton", (sign,))


def su3_instanton(c: float, branch: int = 1) -> ClosedForm:
    if branch not in (-1, 1):
        raise DomainError("branch must be +1 or -1")
    if c < 0 and c != -1:
        raise DomainError("family requires c >= 0 (or the flat case c = -1)")
    return ClosedForm("su3_instanton", (float(c), branch))


# ---------------------------------------------------------------------------
# u_c and the BS instanton profile
# ---------------------------------------------------------------------------

def su3_u(c: float, s):
    """u_c(s) = 1 - 2 c s^2 / (s^2 (1+c) + 2 (sqrt(1+s^2) + 1))."""
    s = np.asarray(s, dtype=float)
    den = s * s * (1.0 + c) + 2.0 * (np.sqrt(1.0 + s * s) + 1.0)
    if np.any(den <= 0):
        raise DomainError("u_c denominator must be positive")
    out = 1.0 - 2.0 * c * s * s / den
    return float(out) if out.ndim == 0 else out


def _su3_u_prime(c: float, s):
    """Analytic d u_c/ds by the quotient rule (independent of the ODE)."""
    s = np.asarray(s, dtype=float)
    den = s * s * (1.0 + c) + 2.0 * (np.sqrt(1.0 + s * s) + 1.0)
    dden = 2.0 * s * (1.0 + c) + 2.0 * s / np.sqrt(1.0 + s * s)
    num = 2.0 * c * s * s
    dnum = 4.0 * c * s
    out = -(dnum * den - num * dden) / (den * den)
    return float(out) if out.ndim == 0 else out


def bs_instanton_profile(sign: int, s):
    """Solver-variable instanton (b = sign) plus the geometric
    connection coefficient a_conn = f^2(s)."""
    if sign not in (-1, 1):
        raise DomainError("sign must be +1 or -1")
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise DomainError("s must be >= 0")
    return {"b": sign * np.ones_like(s), "a_conn": bs_f2(s)}


# ---------------------------------------------------------------------------
# evaluation and analytic derivatives
# ---------------------------------------------------------------------------

def eval(form: ClosedForm, r):
    """Evaluate a family at radius r (rho on BS backgrounds)."""
    fam = form.family
    if fam == "bps":
        C, D = form.params
        if r <= 0 and not (D == 0 and r == 0):
            raise DomainError("bps requires r > 0")
        if D == 0:
            if r < _SMALL_R:
                x = C * r
                a = float(_x_over_sinh(np.array(x)))
                phi = -0.5 * C * float(_coth_minus_inv(np.array(x)))
                return ProfileState(r, a, phi)
            a = C * r / np.sinh(C * r)
            phi = 0.5 * (1.0 / r - C / np.tanh(C * r))
            return ProfileState(r, float(a), float(phi))
        X = C * r + D
        return ProfileState(r, float(C * r / np.sinh(X)),
                            float(0.5 * (1.0 / r - C / np.tanh(X))))
    if fam == "hyperbolic":
        (m,) = form.params
        mu = m + 1.0
        if r < 0:
            raise DomainError("hyperbolic requires r >= 0")
        a = float(_x_over_sinh(np.array(mu * r)) / _x_over_sinh(np.array(float(r))))
        phi = -0.5 * float(mu * _coth_minus_inv(np.array(mu * r))
                           - _coth_minus_inv(np.array(float(r))))
        return ProfileState(r, a, phi)
    if fam == "dirac_euclidean":
        (m,) = form.params
        if r <= 0:
            raise DomainError("Dirac monopole is singular at r = 0")
        return ProfileState(r, 0.0, m + 0.5 / r)
    if fam == "flat":
        return ProfileState(r, 1.0, 0.0)
    if fam == "bs_instanton":
        (sign,) = form.params
        return ProfileState(r, float(sign), 0.0)
    if fam == "su3_instanton":
        c, branch = form.params
        s = s_of_rho(r)
        u = su3_u(c, s)
        b1 = complex(np.sqrt(complex(u * u - 1.0)))
        return SU3State(r, b1, branch * u, branch * b1, 0.0, 0.0)
    raise ValueError(f"unknown family {form.family!r}")


def deriv(form: ClosedForm, r):
    """Analytic d/dr of the family fields (explicit differentiation of
    the closed forms; does not reuse the ODE right-hand sides)."""
    fam = form.family
    if fam == "bps":
        C, D = form.params
        if D == 0:
            # a = xos(Cr), phi = -(C/2) cmi(Cr)
            da = C * float(_x_over_sinh_prime(C * r))
            dphi = -0.5 * C * C * float(_coth_minus_inv_prime(C * r))
            return (da, dphi)
        X = C * r + D
        sh, ch = np.sinh(X), np.cosh(X)
        da = C / sh - C * r * C * ch / sh ** 2
        dphi = 0.5 * (-1.0 / r ** 2 + C * C / sh ** 2)
        return (float(da), float(dphi))
    if fam == "hyperbolic":
        (m,) = form.params
        mu = m + 1.0
        # a = xos(mu r)/xos(r), phi = (cmi(r) - mu cmi(mu r))/2
        num, den = float(_x_over_sinh(mu * r)), float(_x_over_sinh(float(r)))
        dnum = mu * float(_x_over_sinh_prime(mu * r))
        dden = float(_x_over_sinh_prime(float(r)))
        da = (dnum * den - num * dden) / den ** 2
        dphi = 0.5 * (float(_coth_minus_inv_prime(float(r)))
                      - mu * mu * float(_coth_minus_inv_prime(mu * r)))
        return (da, dphi)
    if fam == "dirac_euclidean":
        return (0.0, -0.5 / r ** 2)
    if fam in ("flat", "bs_instanton"):
        return (0.0, 0.0)
    if fam == "su3_instanton":
        c, branch = form.params
        s = s_of_rho(r)
        u = su3_u(c, s)
        up = _su3_u_prime(c, s)
        f = float(bs_f(s))
        b1 = complex(np.sqrt(complex(u * u - 1.0)))
        # d/d rho = f^{-1} d/ds; d b1/ds = u u' / sqrt(u^2-1)
        db1 = (u * up / b1) / f if b1 != 0 else 0.0j
        db2 = branch * up / f
        return (db1, db2, branch * db1, 0.0, 0.0)
    raise ValueError(f"unknown family {form.family!r}")


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------

def residual(obj, system: str, metric: MetricProfile, radii) -> float:
    """sup over radii of |d(state)/dr - rhs(state)| for a ClosedForm or
    a sampled profile (finite differences in the latter case)."""
    worst = 0.0
    if isinstance(obj, ClosedForm):
        for r in np.atleast_1d(radii):
            r = float(r)
            st = eval(obj, r)
            d = deriv(obj, r)
            if system == "minus":
                rhs = rhs_minus(st, metric)
            elif system == "plus":
                rhs = rhs_plus(st, metric, -1)
            elif system == "su3":
                rhs = rhs_su3(st, metric)
            else:
                raise ValueError(f"unknown system {system!r}")
            worst = max(worst, max(abs(x - y) for x, y in zip(d, rhs)))
        return worst
    # sampled profile: central differences on its own evaluator
    for r in np.atleast_1d(radii):
        r = float(r)
        h = 1e-5 * (1.0 + r)
        a_p, a_m = obj.eval_a(r + h), obj.eval_a(r - h)
        p_p, p_m = obj.eval_phi(r + h), obj.eval_phi(r - h)
        st = ProfileState(r, obj.eval_a(r), obj.eval_phi(r))
        rhs = rhs_minus(st, metric)
        da = (a_p - a_m) / (2 * h)
        dphi = (p_p - p_m) / (2 * h)
        worst = max(worst, abs(da - rhs[0]), abs(dphi - rhs[1]))
    return worst


# ---------------------------------------------------------------------------
# solver fields -> geometric fields
# ---------------------------------------------------------------------------

def physical_fields(profile, background: str):
    """Convert the rescaled solver field a to the
    geometric connection coefficient a_conn = f^2 * a on a BS
    background, with the asymptotic decay diagnostic."""
    if background not in ("bs_s4", "bs_cp2"):
        raise ValueError("physical_fields requires a BS background")
    rho = np.asarray(profile.r, dtype=float)
    pos = rho > 0
    s = np.array([s_of_rho(x) for x in rho[pos]])
    f2 = bs_f2(s)
    a_conn = np.ones_like(rho)
    a_conn[pos] = f2 * np.asarray(profile.a)[pos]
    table = {"rho": rho, "a_conn": a_conn,
             "phi": np.asarray(profile.phi, dtype=float)}
    table["ratio_to_f2"] = np.where(pos, np.asarray(profile.a, dtype=float), 1.0)
    table["a_conn_limit"] = float(a_conn[-1])
    return table
