"""Fourier symbol, damping weight and characteristic roots of the log-damped evolution.

Everything here is radial: the multiplier sigma = log(1 + r^2) depends on the
frequency only through r = |xi|, so a scalar r is the canonical representation.
The characteristic polynomial of a single mode is

    lam^2 + sigma*lam + sigma = 0,

complex-conjugate roots for 0 < sigma < 4, a double root -2 at sigma = 4 and two
distinct negative real roots for sigma > 4.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# branch point of the damping weight: sigma(r) = 1 there
RHO_BRANCH_R = math.sqrt(math.e - 1.0)
# double-root threshold in sigma and its frequency counterpart r = sqrt(e^4 - 1)
DEGENERATE_SIGMA = 4.0
DEGENERATE_R = math.sqrt(math.expm1(4.0))
# relative tolerance for classifying the double root
DEGENERACY_RTOL = 1e-12


class Regime(enum.Enum):
    COMPLEX = "Complex"
    DEGENERATE = "Degenerate"
    REAL = "Real"


def sigma_of(r):
    """Multiplier symbol sigma = log(1 + r^2), vectorized.

    log1p keeps small r exact; above r ~ 1e150 the square would overflow, so
    the equivalent 2 log r + log1p(1/r^2) takes over.
    """
    r = np.asarray(r, dtype=float)
    if r.ndim == 0:
        if r > 1e150:
            return 2.0 * np.log(r)
        return np.log1p(r * r)
    out = np.empty_like(r)
    big = r > 1e150
    out[big] = 2.0 * np.log(r[big])
    out[~big] = np.log1p(np.square(r[~big]))
    return out


def r_of_sigma(sigma: float) -> float:
    """Inverse of the symbol: r = sqrt(e^sigma - 1), stable for any sigma >= 0."""
    if sigma < 0.0 or not math.isfinite(sigma):
        raise ValueError(f"sigma must be finite and >= 0, got {sigma!r}")
    if sigma == 0.0:
        return 0.0
    if sigma > 700.0:
        # sqrt(e^s - 1) = e^(s/2) sqrt(-expm1(-s)); the direct expm1 overflows
        return math.exp(0.5 * sigma) * math.sqrt(-math.expm1(-sigma))
    return math.sqrt(math.expm1(sigma))


def rho_of(r):
    """Piecewise damping weight: sigma/2 below the branch point, 1/2 above."""
    return np.where(r <= RHO_BRANCH_R, 0.5 * sigma_of(r), 0.5)


def classify(sigma: float) -> Regime:
    if sigma == 0.0:
        # double root at the origin (lam = 0 twice)
        return Regime.DEGENERATE
    if abs(sigma - DEGENERATE_SIGMA) <= DEGENERACY_RTOL * max(1.0, sigma):
        return Regime.DEGENERATE
    return Regime.COMPLEX if sigma < DEGENERATE_SIGMA else Regime.REAL


@dataclass(frozen=True)
class SymbolPoint:
    """One radial frequency with its cached symbol values."""

    r: float
    sigma: float
    rho: float
    regime: Regime


@dataclass(frozen=True)
class RootPair:
    """Characteristic roots lam+- and their real/imaginary split a, b."""

    lambda_plus: complex
    lambda_minus: complex
    a: float
    b: float


def symbol_at(r: float) -> SymbolPoint:
    """Build the SymbolPoint at frequency magnitude r >= 0."""
    r = float(r)
    if not math.isfinite(r) or r < 0.0:
        raise ValueError(f"frequency magnitude must be finite and >= 0, got {r!r}")
    sigma = float(sigma_of(r))
    rho = 0.5 * sigma if r <= RHO_BRANCH_R else 0.5
    return SymbolPoint(r=r, sigma=sigma, rho=rho, regime=classify(sigma))


def roots_at(p: SymbolPoint) -> RootPair:
    """Characteristic roots of lam^2 + sigma*lam + sigma = 0 at the given point."""
    s = p.sigma
    a = 0.5 * s
    if p.regime is Regime.COMPLEX:
        b = 0.5 * math.sqrt(s * (4.0 - s))
        return RootPair(complex(-a, b), complex(-a, -b), a, b)
    if p.regime is Regime.DEGENERATE:
        return RootPair(complex(-a, 0.0), complex(-a, 0.0), a, 0.0)
    d = 0.5 * math.sqrt(s * (s - 4.0))
    return RootPair(complex(-a + d, 0.0), complex(-a - d, 0.0), a, 0.0)


def b_of(r):
    """Oscillation frequency b = sqrt(4*sigma - sigma^2)/2 (zero outside the complex band)."""
    s = sigma_of(r)
    return 0.5 * np.sqrt(np.maximum(s * (4.0 - s), 0.0))


def b_bounds_check(r: float) -> bool:
    """Check sqrt(sigma) <= 2 b(r) <= 2 sqrt(sigma); proven for 0 <= r <= 1."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"the two-sided b-bound is only asserted on [0, 1], got r={r!r}")
    s = float(sigma_of(r))
    twob = 2.0 * float(b_of(r))
    root = math.sqrt(s)
    # exact at r = 0 (0 <= 0 <= 0); tiny slack for rounding elsewhere
    eps = 1e-14 * max(1.0, root)
    return root - eps <= twob <= 2.0 * root + eps
