"""Success amplitude <w|exp(-iHt)|s> from a solved spectrum, plus a dense oracle.

The spectral form of the amplitude is

    <w|exp(-iHt)|s> = -(1/sqrt(N)) * sum_a exp(-i E_a t) / (E_a F'(E_a)),

a sum over the relevant roots only.  At t=0 it reduces to <w|s> = 1/sqrt(N),
which is the sum rule sum_a 1/(E_a F'(E_a)) = -1 in disguise.

The dense oracle builds the full N x N Hamiltonian, diagonalizes it, and
evolves the uniform state directly.  It shares no machinery with the
spectral path and is the trusted reference for validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import golden_section_max
from .graphs import GraphFamily, neg_laplacian
from .secular import SecularSpectrum

DEFAULT_ORACLE_CAP = 4096
OPTIMAL_TIME_GRID = 2048


@dataclass(frozen=True)
class EvolutionTrace:
    gamma: float
    times: np.ndarray
    amplitudes: np.ndarray
    probabilities: np.ndarray


def spectral_coefficients(spec: SecularSpectrum) -> np.ndarray:
    """Per-root amplitude coefficients -1/(sqrt(N) E_a F'(E_a))."""
    return -1.0 / (np.sqrt(spec.num_vertices) * spec.energies * spec.fprimes)


def amplitude(spec: SecularSpectrum, t: float) -> complex:
    """Success amplitude at time t (units of the inverse oracle strength)."""
    coeffs = spectral_coefficients(spec)
    return complex(np.sum(coeffs * np.exp(-1j * spec.energies * t)))


def trace(spec: SecularSpectrum, t_max: float, num_points: int) -> EvolutionTrace:
    """Amplitude and probability on a uniform time grid including both endpoints."""
    if t_max <= 0.0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if num_points < 2:
        raise ValueError(f"need at least 2 time points, got {num_points}")
    times = np.linspace(0.0, float(t_max), int(num_points))
    coeffs = spectral_coefficients(spec)
    amps = np.exp(-1j * np.outer(times, spec.energies)) @ coeffs
    probs = np.abs(amps) ** 2
    for arr in (times, amps, probs):
        arr.setflags(write=False)
    return EvolutionTrace(gamma=spec.gamma, times=times, amplitudes=amps, probabilities=probs)


def find_optimal_time(spec: SecularSpectrum, t_max: float, grid_points: int = OPTIMAL_TIME_GRID):
    """Best measurement time on [0, t_max]: grid scan plus golden-section polish.

    Returns (t_star, p_star) with p_star at least the best grid probability.
    """
    if t_max <= 0.0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    coeffs = spectral_coefficients(spec)
    energies = spec.energies
    times = np.linspace(0.0, float(t_max), int(grid_points))
    probs = np.abs(np.exp(-1j * np.outer(times, energies)) @ coeffs) ** 2
    i = int(np.argmax(probs))

    def prob(t: float) -> float:
        return abs(np.sum(coeffs * np.exp(-1j * energies * t))) ** 2

    lo = times[max(0, i - 1)]
    hi = times[min(len(times) - 1, i + 1)]
    t_star, p_star = golden_section_max(prob, lo, hi, rel_width=1e-6)
    if probs[i] > p_star:
        t_star, p_star = float(times[i]), float(probs[i])
    return float(t_star), float(p_star)


class DenseReference:
    """Fully diagonalized N x N Hamiltonian H = -gamma*L - |w><w|.

    Holds the eigen-decomposition so repeated evolution times reuse one
    factorization.  Intended for tests and validation runs only.
    """

    def __init__(self, graph: GraphFamily, gamma: float, w_index: int = 0,
                 cap: int = DEFAULT_ORACLE_CAP):
        n = graph.num_vertices
        if n > cap:
            raise ValueError(f"N={n} exceeds the dense-oracle cap {cap}")
        if not 0 <= w_index < n:
            raise ValueError(f"w_index {w_index} out of range for N={n}")
        h = gamma * neg_laplacian(graph)
        h[w_index, w_index] -= 1.0
        eigvals, eigvecs = np.linalg.eigh(h)
        self.graph = graph
        self.gamma = float(gamma)
        self.w_index = int(w_index)
        self.eigenvalues = eigvals
        self._w_row = eigvecs[w_index, :].copy()
        self._s_row = eigvecs.sum(axis=0) / np.sqrt(n)

    def amplitude(self, t: float) -> complex:
        return complex(np.sum(self._w_row * self._s_row * np.exp(-1j * self.eigenvalues * t)))

    def w_overlaps_sq(self) -> np.ndarray:
        return self._w_row**2

    def s_overlaps_sq(self) -> np.ndarray:
        return self._s_row**2


def dense_oracle(graph: GraphFamily, gamma: float, w_index: int, t: float,
                 cap: int = DEFAULT_ORACLE_CAP) -> complex:
    """Brute-force amplitude via full diagonalization; any marked vertex index."""
    return DenseReference(graph, gamma, w_index, cap=cap).amplitude(t)


def default_time_horizon(num_vertices: int) -> float:
    """Search window 4*sqrt(N); every built-in family peaks within it."""
    return 4.0 * np.sqrt(num_vertices)
