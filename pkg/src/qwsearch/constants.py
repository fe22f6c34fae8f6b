"""Analytic constants of the lattice analysis.

Four related quantities control the search transition on d-dimensional
periodic lattices:

* green_integral(j, d): the Brillouin-zone integral of 1/E(k)^j, finite for
  d > 2j.  Evaluated through the Laplace representation
  (2d)^-j / (j-1)! * int_0^inf a^(j-1) e^-a [I0(a/d)]^d da with the
  exponentially scaled Bessel function, plus an asymptotic tail.
* inverse_energy_sum(j, d, L): the exact finite-lattice sum
  (1/N) sum_{k != 0} E(k)^-j, which converges to the integral for d > 2j,
  grows like epstein_sum(j, d) * N^(2j/d - 1) for d < 2j, and picks up a
  log(N) law at d = 2j.
* epstein_sum(j, d): (2 pi)^-2j sum_{m in Z^d, m != 0} (m^2)^-j, the
  coefficient of the d < 2j growth law.
* scaling_function(x, dim) and its root: the N-independent function
  (1/4 pi^2) (sum_{m != 0} x/(m^2 (m^2 - x)) - 1/x) whose negative root
  pins the rescaled ground-state energy for dim = 2, 3.

All tolerances and truncation radii here are implementation choices; each
value carries an explicit error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.signal import fftconvolve
from scipy.special import i0e

from ._util import compensated_sum
from .graphs import dispersion_values

QUAD_UPPER = 2000.0          # switchover from quadrature to the asymptotic tail
EPSTEIN_TARGET = 1e-7        # radius doubling stops below this drift
SCALING_RADIUS = 200         # lattice-sum radius for the scaling function
X_ROOT_TOL = 1e-12
X_BRACKET_CAP = 1e6


class DivergenceError(ValueError):
    """Requested constant does not converge for these (j, d)."""


class NoRootError(ValueError):
    """Target value lies outside the range reached by bracket expansion."""


# ---------------------------------------------------------------------------
# Brillouin-zone integrals
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _green_integral_err(j: int, d: int) -> tuple[float, float]:
    if d <= 2 * j:
        raise DivergenceError(f"integral of E^-{j} diverges for d={d} <= 2j={2*j}")
    pref = 1.0 / ((2 * d) ** j * math.factorial(j - 1))

    def integrand(a: float) -> float:
        return pref * a ** (j - 1) * i0e(a / d) ** d

    val, err = quad(integrand, 0.0, QUAD_UPPER, epsabs=1e-14, epsrel=1e-13, limit=800)
    # Tail from the Bessel asymptotics (i0e(x))^d ~ (2 pi x)^(-d/2) (1 + d/(8x) + ...):
    # the integrand decays like a^(j-1-d/2), integrable precisely when d > 2j.
    p = j - d / 2.0
    c0 = pref * (d / (2.0 * math.pi)) ** (d / 2.0)
    t1 = c0 * QUAD_UPPER**p / (-p)
    t2 = c0 * (d**2 / 8.0) * QUAD_UPPER ** (p - 1) / (1.0 - p)
    t3 = c0 * (d**3 * (d + 8) / 128.0) * QUAD_UPPER ** (p - 2) / (2.0 - p)
    return val + t1 + t2 + t3, err + abs(t3)


def green_integral(j: int, d: int) -> float:
    """Brillouin-zone integral (2 pi)^-d int d^dk / E(k)^j; needs d > 2j."""
    return _green_integral_err(j, d)[0]


def inverse_energy_sum(j: int, d: int, side: int) -> float:
    """Exact finite sum (1/N) sum_{k != 0} E(k)^-j on the side^d torus."""
    if side < 2:
        raise ValueError(f"side must be >= 2, got {side}")
    n = side**d
    if n <= 1 << 23:
        e = dispersion_values(d, side)
        e = e[e > 0.0]
        return float(np.sum(e ** (-float(j)))) / n
    # Chunk over the leading axis so d=3 scaling studies stay in memory.
    axis_cos = np.cos(2.0 * np.pi * np.arange(side) / side)
    inner = np.zeros(1)
    for _ in range(d - 1):
        inner = (inner[:, None] + axis_cos[None, :]).ravel()
    partials = []
    for c in axis_cos:
        e = 2.0 * (d - (inner + c))
        e = e[e > 0.0]
        partials.append(float(np.sum(e ** (-float(j)))))
    return compensated_sum(np.asarray(partials)) / n


def green_integral_bruteforce(j: int, d: int, side: int) -> float:
    """Finite-lattice estimate of green_integral; converges as the side grows."""
    if d <= 2 * j:
        raise DivergenceError(f"finite sums do not converge to an integral for d={d} <= 2j={2*j}")
    if side < 4:
        raise ValueError(f"side must be >= 4 for a meaningful estimate, got {side}")
    return inverse_energy_sum(j, d, side)


# ---------------------------------------------------------------------------
# Integer-lattice sums
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _norm_counts(dim: int, limit: int) -> np.ndarray:
    """counts[n] = number of integer vectors in Z^dim with squared norm n."""
    one = np.zeros(limit + 1)
    one[0] = 1.0
    squares = np.arange(1, int(math.isqrt(limit)) + 1) ** 2
    one[squares] = 2.0
    counts = one
    for _ in range(dim - 1):
        counts = fftconvolve(counts, one)[: limit + 1]
    return np.rint(counts)


def _sphere_area(dim: int) -> float:
    return 2.0 * math.pi ** (dim / 2.0) / math.gamma(dim / 2.0)


def _epstein_at(j: int, d: int, radius: int) -> float:
    limit = radius * radius
    counts = _norm_counts(d, limit)
    norms = np.arange(1, limit + 1, dtype=float)
    body = compensated_sum(counts[1:] / norms**j)
    tail = _sphere_area(d) * radius ** (d - 2 * j) / (2 * j - d)
    return (body + tail) / (2.0 * math.pi) ** (2 * j)


@lru_cache(maxsize=None)
def _epstein_err(j: int, d: int) -> tuple[float, float]:
    if 2 * j <= d:
        raise DivergenceError(f"lattice sum of (m^2)^-{j} diverges for d={d} >= 2j={2*j}")
    radius = 64
    value = _epstein_at(j, d, radius)
    drift = math.inf
    while radius < 1024 and drift > EPSTEIN_TARGET:
        radius *= 2
        nxt = _epstein_at(j, d, radius)
        drift = abs(nxt - value)
        value = nxt
    return value, max(drift, 1e-12)


def epstein_sum(j: int, d: int) -> float:
    """(2 pi)^-2j sum over nonzero integer vectors of (m^2)^-j; needs 2j > d."""
    return _epstein_err(j, d)[0]


# ---------------------------------------------------------------------------
# The d=2 logarithmic law
# ---------------------------------------------------------------------------

LOG_LAW_SIDES = (64, 128, 256, 512)


@lru_cache(maxsize=None)
def log_law_fit() -> dict:
    """Fit inverse_energy_sum(1, 2, L) - ln(N)/(4 pi) = A + b/N over LOG_LAW_SIDES."""
    xs, ys = [], []
    for side in LOG_LAW_SIDES:
        n = side * side
        xs.append(1.0 / n)
        ys.append(inverse_energy_sum(1, 2, side) - math.log(n) / (4.0 * math.pi))
    slope, intercept = np.polyfit(xs, ys, 1)
    fitted = intercept + slope * np.asarray(xs)
    residuals = [y - f for y, f in zip(ys, fitted)]
    return {
        "intercept": float(intercept),
        "slope": float(slope),
        "sides": list(LOG_LAW_SIDES),
        "per_size_estimates": [float(y) for y in ys],
        "residuals": [float(r) for r in residuals],
    }


def log_law_intercept() -> float:
    """The additive constant in inverse_energy_sum(1, 2, L) = ln(N)/(4 pi) + A + O(1/N)."""
    return log_law_fit()["intercept"]


# ---------------------------------------------------------------------------
# Rescaled critical functions and their negative root
# ---------------------------------------------------------------------------

def scaling_function(x: float, dim: int) -> float:
    """(1/4 pi^2) * (sum_{m != 0} x/(m^2 (m^2 - x)) - 1/x) over Z^dim, x < 0.

    Strictly increasing on the negative axis; diverges to +inf as x -> 0-.
    Lattice points with |m| <= SCALING_RADIUS are summed exactly and the
    remainder is replaced by its shell integral (absolute error below 1e-8
    for |x| up to order 10^3).
    """
    if dim not in (2, 3):
        raise ValueError(f"dim must be 2 or 3, got {dim}")
    if x >= 0.0:
        raise ValueError(f"the analysis needs x < 0, got {x}")
    limit = SCALING_RADIUS * SCALING_RADIUS
    counts = _norm_counts(dim, limit)
    norms = np.arange(1, limit + 1, dtype=float)
    body = float(np.sum(counts[1:] * x / (norms * (norms - x))))
    ax = -x
    r = float(SCALING_RADIUS)
    if dim == 3:
        tail = -4.0 * math.pi * math.sqrt(ax) * (math.pi / 2.0 - math.atan(r / math.sqrt(ax)))
    else:
        tail = -math.pi * math.log1p(ax / (r * r))
    return (body + tail - 1.0 / x) / (4.0 * math.pi**2)


def scaling_function_root(a: float, dim: int) -> float:
    """The unique x0 < 0 with scaling_function(x0, dim) = a."""
    hi = -1e-12
    lo = -1.0
    while scaling_function(lo, dim) > a:
        lo *= 2.0
        if -lo > X_BRACKET_CAP:
            raise NoRootError(
                f"no negative root for a={a}: range exhausted at x={lo}"
            )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid >= hi or mid <= lo:
            break
        if scaling_function(mid, dim) > a:
            hi = mid
        else:
            lo = mid
        if hi - lo <= X_ROOT_TOL * max(abs(lo), 1e-12):
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Assembled table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantEntry:
    kind: str                # "I", "c", "S", "A", "x0"
    j: int | None
    d: int | None
    size: int | None         # N where the entry is size-dependent
    a: float | None          # rescaled offset for x0 entries
    value: float
    error_estimate: float
    method: str
    truncation: str


def build_constant_table() -> list[ConstantEntry]:
    """Every analytic constant the experiments rely on, with provenance."""
    entries: list[ConstantEntry] = []
    for d in range(3, 11):
        v, e = _green_integral_err(1, d)
        entries.append(ConstantEntry("I", 1, d, None, None, v, e,
                                     "scaled-Bessel quadrature + asymptotic tail",
                                     f"upper limit {QUAD_UPPER:g}"))
    for d in range(5, 11):
        v, e = _green_integral_err(2, d)
        entries.append(ConstantEntry("I", 2, d, None, None, v, e,
                                     "scaled-Bessel quadrature + asymptotic tail",
                                     f"upper limit {QUAD_UPPER:g}"))
    for d in (1, 2, 3):
        v, e = _epstein_err(2, d)
        entries.append(ConstantEntry("c", 2, d, None, None, v, e,
                                     "radial lattice sum + shell-integral tail",
                                     f"radius doubling from 64, drift <= {EPSTEIN_TARGET:g}"))
    fit = log_law_fit()
    for side, est in zip(fit["sides"], fit["per_size_estimates"]):
        n = side * side
        entries.append(ConstantEntry("S", 1, 2, n, None,
                                     inverse_energy_sum(1, 2, side),
                                     max(1e-13 * abs(est), 1e-16),
                                     "exact Brillouin sum", f"side {side}"))
    max_resid = max(abs(r) for r in fit["residuals"])
    entries.append(ConstantEntry("A", None, 2, None, None, fit["intercept"],
                                 max(max_resid, 1e-8),
                                 "linear fit of the log-law remainder against 1/N",
                                 f"sides {fit['sides']}"))
    for dim in (2, 3):
        x0 = scaling_function_root(0.0, dim)
        entries.append(ConstantEntry("x0", None, dim, None, 0.0, x0, X_ROOT_TOL,
                                     "bisection on the rescaled secular function",
                                     f"lattice radius {SCALING_RADIUS}"))
    return entries
