"""Exact single-mode evolution and the frequency-space energy functionals.

A mode obeys u'' + sigma*u' + sigma*u = 0.  With a = sigma/2 and the shifted
discriminant s = sigma^2/4 - sigma, the fundamental pair is exp(-a t) times

    C(t) = cos(sqrt(-s) t) | cosh(sqrt(s) t),
    S(t) = sin(sqrt(-s) t)/sqrt(-s) | sinh(sqrt(s) t)/sqrt(s),

both entire functions of s, so one series handles the degenerate neighborhood
uniformly: no branch ever subtracts nearly equal exponentials.  The propagators

    k0 = exp(-a t) (C + a S)      (response to initial amplitude)
    k1 = exp(-a t) S              (response to initial velocity)
    k1' = exp(-a t) (C - a S)

give u(t) = u0*k0 + u1*k1 and u'(t) = -sigma*u0*k1 + u1*k1'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .multiplier import RootPair, SymbolPoint, r_of_sigma, roots_at, symbol_at

# below this value of |s| t^2 the Taylor series of C and S is machine-exact
_SERIES_Z = 1e-3
# factorial reciprocals for C (even) and S (odd) terms, j = 0..6
_C_COEF = [1.0 / math.factorial(2 * j) for j in range(7)]
_S_COEF = [1.0 / math.factorial(2 * j + 1) for j in range(7)]


def propagators(sigma, t: float):
    """Vectorized (k0, k1, k1dot) at time t >= 0 for an array of sigma values."""
    if t < 0.0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    a = 0.5 * sigma
    # one rounding only: keeps |s| accurate through the double root at sigma = 4
    s = sigma * (0.25 * sigma - 1.0)
    z = s * t * t

    eC = np.empty_like(sigma)
    eS = np.empty_like(sigma)

    series = np.abs(z) <= _SERIES_Z
    osc = ~series & (s < 0.0)
    real = ~series & (s > 0.0)

    if series.any():
        zs = z[series]
        c = np.full_like(zs, _C_COEF[6])
        q = np.full_like(zs, _S_COEF[6])
        for j in range(5, -1, -1):
            c = c * zs + _C_COEF[j]
            q = q * zs + _S_COEF[j]
        damp = np.exp(-a[series] * t)
        eC[series] = damp * c
        eS[series] = damp * q * t
    if osc.any():
        b = np.sqrt(-s[osc])
        damp = np.exp(-a[osc] * t)
        eC[osc] = damp * np.cos(b * t)
        eS[osc] = damp * np.sin(b * t) / b
    if real.any():
        d = np.sqrt(s[real])
        # both exponents are <= 0: lam+- = -a +- d with d < a
        ep = np.exp((d - a[real]) * t)
        em = np.exp(-(d + a[real]) * t)
        eC[real] = 0.5 * (ep + em)
        eS[real] = 0.5 * (ep - em) / d

    k0 = eC + a * eS
    k1dot = eC - a * eS
    return k0, eS, k1dot


def evolve_modes(sigma, u0_hat, u1_hat, t: float):
    """Advance arrays of spectral amplitudes by the exact closed form; returns (u, u')."""
    k0, k1, k1dot = propagators(sigma, t)
    value = u0_hat * k0 + u1_hat * k1
    velocity = -np.asarray(sigma, dtype=float) * u0_hat * k1 + u1_hat * k1dot
    return value, velocity


@dataclass(frozen=True)
class ModeClosedForm:
    """A single mode: frequency point, its roots and the initial spectral pair."""

    point: SymbolPoint
    roots: RootPair
    u0_hat: complex
    u1_hat: complex

    @staticmethod
    def at(r: float, u0_hat: complex = 0.0, u1_hat: complex = 1.0) -> "ModeClosedForm":
        p = symbol_at(r)
        return ModeClosedForm(p, roots_at(p), complex(u0_hat), complex(u1_hat))

    @staticmethod
    def from_sigma(sigma: float, u0_hat: complex = 0.0, u1_hat: complex = 1.0) -> "ModeClosedForm":
        return ModeClosedForm.at(r_of_sigma(sigma), u0_hat, u1_hat)


def mode_evaluate(m: ModeClosedForm, t: float):
    """Exact (value, velocity) of the mode at time t >= 0."""
    value, velocity = evolve_modes(
        np.array([m.point.sigma]), np.array([m.u0_hat]), np.array([m.u1_hat]), t
    )
    return complex(value[0]), complex(velocity[0])


def ode_oracle(point: SymbolPoint, u0_hat: complex, u1_hat: complex, t: float, dt: float) -> complex:
    """Independent check: classical RK4 on (u, v)' = (v, -sigma*(u + v)).

    One-step 4th order, fixed step h = t/ceil(t/dt); global error O(dt^4).
    Deliberately ignorant of the closed form above.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    if t < 0.0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    if t == 0.0:
        return complex(u0_hat)
    s = point.sigma
    n = max(1, int(np.ceil(t / dt)))
    h = t / n
    u = complex(u0_hat)
    v = complex(u1_hat)
    for _ in range(n):
        k1u = v
        k1v = -s * (u + v)
        k2u = v + 0.5 * h * k1v
        k2v = -s * (u + 0.5 * h * k1u + k2u)
        k3u = v + 0.5 * h * k2v
        k3v = -s * (u + 0.5 * h * k2u + k3u)
        k4u = v + h * k3v
        k4v = -s * (u + h * k3u + k4u)
        u = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return u


@dataclass(frozen=True)
class EnergyDensity:
    """Per-frequency energy functionals of the weighted multiplier method."""

    e0: float  # |u'|^2/2 + sigma |u|^2/2
    e: float   # e0 + rho Re(u' conj(u)) + (rho/2) sigma |u|^2
    f: float   # sigma |u'|^2 + rho sigma |u|^2
    rr: float  # rho |u'|^2


def energy_density(m: ModeClosedForm, t: float) -> EnergyDensity:
    value, velocity = mode_evaluate(m, t)
    s = m.point.sigma
    rho = m.point.rho
    amp2 = abs(value) ** 2
    vel2 = abs(velocity) ** 2
    e0 = 0.5 * vel2 + 0.5 * s * amp2
    e = e0 + rho * (velocity * value.conjugate()).real + 0.5 * rho * s * amp2
    f = s * vel2 + rho * s * amp2
    rr = rho * vel2
    return EnergyDensity(e0=e0, e=e, f=f, rr=rr)


def check_energy_identity(m: ModeClosedForm, t: float, h: float) -> float:
    """Residual of d/dt e0 + sigma |u'|^2 = 0 by centered difference; O(h^2)."""
    if h <= 0.0 or t <= 0.0 or h >= t:
        raise ValueError(f"need 0 < h < t, got h={h!r}, t={t!r}")
    ep = energy_density(m, t + h).e0
    em = energy_density(m, t - h).e0
    _, velocity = mode_evaluate(m, t)
    return abs((ep - em) / (2.0 * h) + m.point.sigma * abs(velocity) ** 2)


@dataclass(frozen=True)
class PointwiseCheck:
    """Both pointwise decay inequalities at one (t, frequency) sample.

    energy side:    |u'|^2 + sigma |u|^2        <= 6 (|u1|^2 + sigma |u0|^2) exp(-rho t / 2)
    amplitude side: |u|^2  <= 6 (|u1|^2 / sigma + |u0|^2) exp(-rho t / 2)   (sigma > 0 only)
    """

    energy_lhs: float
    energy_rhs: float
    amplitude_lhs: float
    amplitude_rhs: float
    amplitude_skipped: bool
    passed: bool


def check_pointwise_estimates(m: ModeClosedForm, t: float) -> PointwiseCheck:
    if t < 0.0:
        raise ValueError(f"time must be >= 0, got {t!r}")
    value, velocity = mode_evaluate(m, t)
    s = m.point.sigma
    decay = np.exp(-0.5 * m.point.rho * t)
    data_energy = abs(m.u1_hat) ** 2 + s * abs(m.u0_hat) ** 2

    energy_lhs = abs(velocity) ** 2 + s * abs(value) ** 2
    energy_rhs = 6.0 * data_energy * decay
    ok = energy_lhs <= energy_rhs * (1.0 + 1e-12)

    if s > 0.0:
        amplitude_lhs = abs(value) ** 2
        amplitude_rhs = 6.0 * (abs(m.u1_hat) ** 2 / s + abs(m.u0_hat) ** 2) * decay
        ok = ok and amplitude_lhs <= amplitude_rhs * (1.0 + 1e-12)
        skipped = False
    else:
        amplitude_lhs = amplitude_rhs = float("nan")
        skipped = True
    return PointwiseCheck(float(energy_lhs), float(energy_rhs), float(amplitude_lhs),
                          float(amplitude_rhs), skipped, bool(ok))
