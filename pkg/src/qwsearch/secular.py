"""Rank-one spectral solver for H = -gamma*L - |w><w|.

The eigenvalues of H coupled to the marked vertex solve F(E) = 1 with

    F(E) = (1/N) * sum_k 1 / (gamma*E_k - E),

the diagonal resolvent of -gamma*L at the marked vertex, here accumulated
over distinct levels with multiplicities.  F is strictly increasing between
consecutive poles, so there is exactly one root below zero (the ground
state) and one root strictly inside each open interval between adjacent
distinct scaled levels.  Eigenvectors of H orthogonal to the marked vertex
sit exactly at the poles and are only counted, never constructed.

Per-root weights follow from the resolvent: F'(E_a) normalizes the
eigenvector, R_a = |<w|psi_a>|^2 = 1/F'(E_a), and
|<s|psi_a>|^2 = 1/(N E_a^2 F'(E_a)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import compensated_sum
from .graphs import LevelSpectrum

_EPS = float(np.finfo(float).eps)

# Bisection runs until the bracket shrinks to this fraction of its initial
# span; safeguarded Newton then polishes to machine precision.
_BISECT_REL = 1e-13
# Pole-adjacent brackets start this fraction of the local level gap inside
# each pole and shrink geometrically toward it if the sign condition fails.
_EDGE_REL = 1e-12


class SecularPoleError(ValueError):
    """Evaluation point coincides with a pole gamma*level at machine scale."""


class BracketError(RuntimeError):
    """A root bracket could not establish the required sign change."""


@dataclass(frozen=True)
class SecularSpectrum:
    """Relevant eigenvalues of H with the weights needed for time evolution."""

    gamma: float
    num_vertices: int
    energies: np.ndarray      # roots E_a, ascending; exactly one is negative
    fprimes: np.ndarray       # F'(E_a)
    w_weights: np.ndarray     # R_a = |<w|psi_a>|^2 = 1/F'(E_a)
    s_weights: np.ndarray     # |<s|psi_a>|^2 = 1/(N E_a^2 F'(E_a))
    irrelevant_count: int     # eigenvectors of H orthogonal to the marked vertex

    @property
    def num_roots(self) -> int:
        return len(self.energies)

    def sum_rule(self) -> float:
        """sum_a 1/(E_a F'(E_a)); equals -1 exactly."""
        return compensated_sum(1.0 / (self.energies * self.fprimes))


def _pole_guard(poles: np.ndarray, energy: float) -> None:
    i = int(np.argmin(np.abs(poles - energy)))
    if abs(poles[i] - energy) <= 4.0 * _EPS * max(1.0, abs(poles[i])):
        raise SecularPoleError(
            f"E={energy!r} is within machine scale of the pole at {poles[i]!r}"
        )


def _value(poles: np.ndarray, mult: np.ndarray, n: int, energy: float) -> float:
    diffs = poles - energy
    order = np.argsort(-np.abs(diffs))  # farthest pole (smallest term) first
    return compensated_sum(mult[order] / diffs[order]) / n


def _derivative(poles: np.ndarray, mult: np.ndarray, n: int, energy: float) -> float:
    diffs = poles - energy
    order = np.argsort(-np.abs(diffs))
    return compensated_sum(mult[order] / diffs[order] ** 2) / n


def secular_value(spectrum: LevelSpectrum, gamma: float, energy: float) -> float:
    """F(E); strictly increasing on every pole-free interval, -> 0 as E -> +-inf."""
    poles = gamma * spectrum.energies
    _pole_guard(poles, energy)
    return _value(poles, spectrum.multiplicities.astype(float), spectrum.num_vertices, energy)


def secular_derivative(spectrum: LevelSpectrum, gamma: float, energy: float) -> float:
    """F'(E); positive everywhere and at least 1/(N E^2) from the level at 0."""
    poles = gamma * spectrum.energies
    _pole_guard(poles, energy)
    return _derivative(poles, spectrum.multiplicities.astype(float), spectrum.num_vertices, energy)


def _refine(poles, mult, n, lo, hi) -> float:
    """Bisection to a relative-width floor, then safeguarded Newton."""
    f_target = 1.0
    span = hi - lo
    while (hi - lo) > _BISECT_REL * span:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _value(poles, mult, n, mid) >= f_target:
            hi = mid
        else:
            lo = mid
    e = 0.5 * (lo + hi)
    for _ in range(12):
        fv = _value(poles, mult, n, e) - f_target
        if fv >= 0.0:
            hi = min(hi, e)
        else:
            lo = max(lo, e)
        fp = _derivative(poles, mult, n, e)
        step = -fv / fp
        nxt = e + step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - e) <= 2.0 * _EPS * max(abs(e), 1e-300):
            e = nxt
            break
        e = nxt
    return e


def _ground_bracket(poles, mult, n):
    # F(E) <= 1/|E| for E < 0, so any lower end below -1 is on the F < 1 side;
    # F(-1/(2N)) >= 2 pins the other side because |E_0| > 1/N always.
    lo = -poles[-1] - 1.0
    while _value(poles, mult, n, lo) >= 1.0:
        lo *= 2.0
    hi = -0.5 / n
    return lo, hi


def _interval_bracket(poles, mult, n, i):
    a, b = poles[i], poles[i + 1]
    h = b - a
    ea = max(_EDGE_REL * h, 64.0 * _EPS * abs(a))
    eb = max(_EDGE_REL * h, 64.0 * _EPS * abs(b))
    floor_a = 8.0 * _EPS * abs(a)
    floor_b = 8.0 * _EPS * abs(b)
    # Roots may sit extremely close to either pole when their weight is tiny;
    # walk the endpoint geometrically toward the pole until the sign flips.
    while _value(poles, mult, n, a + ea) >= 1.0:
        ea *= 0.25
        if ea <= floor_a:
            raise BracketError(
                f"no sign change above pole {a!r}; level grouping is suspect"
            )
    while _value(poles, mult, n, b - eb) < 1.0:
        eb *= 0.25
        if eb <= floor_b:
            raise BracketError(
                f"no sign change below pole {b!r}; level grouping is suspect"
            )
    return a + ea, b - eb


def _weights(poles, mult, n, roots: np.ndarray):
    fprimes = np.array([_derivative(poles, mult, n, e) for e in roots])
    w = 1.0 / fprimes
    s = 1.0 / (n * roots**2 * fprimes)
    return fprimes, w, s


def solve_spectrum(spectrum: LevelSpectrum, gamma: float) -> SecularSpectrum:
    """All relevant eigenvalues of H = -gamma*L - |w><w| with their weights.

    Produces one root per bracket: (-inf, 0) plus each open interval between
    consecutive distinct scaled levels.  Roots with vanishing weight are
    retained; completeness and the sum rule need the full relevant set.
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    poles = gamma * spectrum.energies
    mult = spectrum.multiplicities.astype(float)
    n = spectrum.num_vertices
    roots = [_refine(poles, mult, n, *_ground_bracket(poles, mult, n))]
    for i in range(len(poles) - 1):
        roots.append(_refine(poles, mult, n, *_interval_bracket(poles, mult, n, i)))
    roots = np.asarray(roots)
    fprimes, w, s = _weights(poles, mult, n, roots)
    for arr in (roots, fprimes, w, s):
        arr.setflags(write=False)
    return SecularSpectrum(
        gamma=float(gamma),
        num_vertices=n,
        energies=roots,
        fprimes=fprimes,
        w_weights=w,
        s_weights=s,
        irrelevant_count=n - len(roots),
    )


def lowest_two(spectrum: LevelSpectrum, gamma: float):
    """Ground and first-excited relevant roots with their F' values.

    Returns (e0, e1, fprime0, fprime1) without solving the full spectrum;
    gamma scans only need the two lowest states.
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    poles = gamma * spectrum.energies
    mult = spectrum.multiplicities.astype(float)
    n = spectrum.num_vertices
    e0 = _refine(poles, mult, n, *_ground_bracket(poles, mult, n))
    e1 = _refine(poles, mult, n, *_interval_bracket(poles, mult, n, 0))
    return e0, e1, _derivative(poles, mult, n, e0), _derivative(poles, mult, n, e1)


def ground_and_gap(spectrum: LevelSpectrum, gamma: float):
    """(E_0, E_1, E_1 - E_0) for the two lowest relevant roots."""
    e0, e1, _, _ = lowest_two(spectrum, gamma)
    return e0, e1, e1 - e0
