"""Graph families for quantum-walk search and their compressed Laplacian spectra.

Three vertex-transitive families are supported: the complete graph on N
vertices, the n-bit hypercube (N = 2^n), and the d-dimensional periodic
lattice of side L (N = L^d).  All spectra refer to -L with L = A - D, the
positive-semidefinite walk generator.  Because every family is
vertex-transitive with a uniform-magnitude eigenbasis, each eigenvector has
squared overlap exactly 1/N with any single vertex; that single number plus
the distinct eigenvalues and their multiplicities is all downstream spectral
computation needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Two lattice dispersion values are treated as the same level when they
# differ by at most this fraction of the bandwidth 4d.  Distinct levels of
# an L-periodic lattice are separated by Omega(1/L^2), many orders above.
LEVEL_GROUP_TOL = 1e-9


@dataclass(frozen=True)
class GraphFamily:
    """One of complete:N, hypercube:n, or lattice:d:L."""

    kind: str
    num_vertices: int
    num_bits: int | None = None
    dim: int | None = None
    side: int | None = None

    @classmethod
    def complete(cls, num_vertices: int) -> "GraphFamily":
        if num_vertices < 2:
            raise ValueError(f"complete graph needs N >= 2, got {num_vertices}")
        return cls(kind="complete", num_vertices=int(num_vertices))

    @classmethod
    def hypercube(cls, num_bits: int) -> "GraphFamily":
        if num_bits < 1:
            raise ValueError(f"hypercube needs n >= 1 bits, got {num_bits}")
        return cls(kind="hypercube", num_vertices=2**int(num_bits), num_bits=int(num_bits))

    @classmethod
    def lattice(cls, dim: int, side: int) -> "GraphFamily":
        if dim < 1:
            raise ValueError(f"lattice needs dim >= 1, got {dim}")
        if side < 2:
            raise ValueError(f"lattice needs side >= 2, got {side}")
        return cls(kind="lattice", num_vertices=int(side) ** int(dim), dim=int(dim), side=int(side))

    def label(self) -> str:
        if self.kind == "complete":
            return f"complete:{self.num_vertices}"
        if self.kind == "hypercube":
            return f"hypercube:{self.num_bits}"
        return f"lattice:{self.dim}:{self.side}"


@dataclass(frozen=True)
class LevelSpectrum:
    """Distinct eigenvalues of -L with multiplicities, plus the marked-vertex overlap 1/N."""

    energies: np.ndarray
    multiplicities: np.ndarray
    num_vertices: int
    marked_overlap_sq: float

    @property
    def num_levels(self) -> int:
        return len(self.energies)

    @property
    def max_energy(self) -> float:
        return float(self.energies[-1])


def _freeze(energies: np.ndarray, multiplicities: np.ndarray, num_vertices: int) -> LevelSpectrum:
    energies = np.asarray(energies, dtype=float)
    multiplicities = np.asarray(multiplicities, dtype=np.int64)
    if energies[0] != 0.0 or multiplicities[0] != 1:
        raise AssertionError("lowest level must be the simple uniform mode at 0")
    if np.any(np.diff(energies) <= 0):
        raise AssertionError("levels must be strictly increasing")
    if int(multiplicities.sum()) != num_vertices:
        raise AssertionError("multiplicities must sum to N")
    energies.setflags(write=False)
    multiplicities.setflags(write=False)
    return LevelSpectrum(
        energies=energies,
        multiplicities=multiplicities,
        num_vertices=int(num_vertices),
        marked_overlap_sq=1.0 / num_vertices,
    )


def momentum_axis(side: int) -> np.ndarray:
    """Integer mode numbers along one lattice direction.

    Odd side L: 0, +-1, ..., +-(L-1)/2.  Even side L: 0, +-1, ...,
    +-(L-2)/2, +L/2.  Either way there are exactly L values containing 0 once.
    """
    if side < 2:
        raise ValueError(f"side must be >= 2, got {side}")
    return np.arange(-((side - 1) // 2), side // 2 + 1, dtype=np.int64)


def momentum_grid(dim: int, side: int) -> np.ndarray:
    """All side**dim integer momentum vectors, shape (side**dim, dim)."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    axis = momentum_axis(side)
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def dispersion(modes, dim: int, side: int) -> float:
    """Lattice eigenvalue 2*(d - sum_j cos(2 pi m_j / L)) of -L at mode vector m."""
    m = np.asarray(modes, dtype=float)
    if m.shape[-1] != dim:
        raise ValueError(f"mode vector has {m.shape[-1]} components, expected {dim}")
    return float(2.0 * (dim - np.sum(np.cos(2.0 * np.pi * m / side), axis=-1)))


def dispersion_values(dim: int, side: int) -> np.ndarray:
    """Dispersion over the full momentum grid without materializing the grid."""
    axis_cos = np.cos(2.0 * np.pi * momentum_axis(side) / side)
    acc = np.zeros(1)
    for _ in range(dim):
        acc = (acc[:, None] + axis_cos[None, :]).ravel()
    return 2.0 * (dim - acc)


def level_spectrum(graph: GraphFamily) -> LevelSpectrum:
    """Compressed spectrum of -L for any supported family."""
    n = graph.num_vertices
    if graph.kind == "complete":
        # L + N*I is N times the projector on the uniform state, so -L has
        # the simple eigenvalue 0 and the (N-1)-fold eigenvalue N.
        return _freeze([0.0, float(n)], [1, n - 1], n)
    if graph.kind == "hypercube":
        bits = graph.num_bits
        energies = [2.0 * r for r in range(bits + 1)]
        mult = [math.comb(bits, r) for r in range(bits + 1)]
        return _freeze(energies, mult, n)
    if graph.kind == "lattice":
        values = np.sort(dispersion_values(graph.dim, graph.side))
        tol = LEVEL_GROUP_TOL * 4.0 * graph.dim
        boundaries = np.flatnonzero(np.diff(values) > tol) + 1
        groups = np.split(values, boundaries)
        energies = [float(g.mean()) for g in groups]
        mult = [len(g) for g in groups]
        if energies[0] != 0.0:
            energies[0] = 0.0  # the k=0 group is exactly zero up to roundoff
        return _freeze(energies, mult, n)
    raise ValueError(f"unknown graph kind {graph.kind!r}")


def neg_laplacian(graph: GraphFamily) -> np.ndarray:
    """Dense -L = D - A.  Side-2 lattice rings carry double edges so that the
    dense matrix agrees with the dispersion relation."""
    n = graph.num_vertices
    if graph.kind == "complete":
        return float(n) * np.eye(n) - np.ones((n, n))
    if graph.kind == "hypercube":
        bits = graph.num_bits
        a = np.zeros((n, n))
        rows = np.arange(n)
        for b in range(bits):
            a[rows, rows ^ (1 << b)] = 1.0
        return bits * np.eye(n) - a
    if graph.kind == "lattice":
        d, side = graph.dim, graph.side
        shape = (side,) * d
        idx = np.arange(n)
        coords = np.stack(np.unravel_index(idx, shape), axis=1)
        a = np.zeros((n, n))
        for j in range(d):
            for step in (1, -1):
                nb = coords.copy()
                nb[:, j] = (nb[:, j] + step) % side
                a[idx, np.ravel_multi_index(tuple(nb.T), shape)] += 1.0
        return 2.0 * d * np.eye(n) - a
    raise ValueError(f"unknown graph kind {graph.kind!r}")
