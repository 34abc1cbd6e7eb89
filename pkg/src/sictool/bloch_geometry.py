"""Real Bloch representation of qutrit states in R^8.

The basis is the eight Gell-Mann matrices divided by sqrt(2), which makes
them orthonormal under ``Tr(A^dag B)``.  A state ``rho`` maps to

    u_a = sqrt(3/2) Tr(rho B_a),

so pure states are unit vectors and ``|<psi1|psi2>|^2 = (1 + 2 u1.u2) / 3``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .serialize import fmt_float
from .sic import SicPovm, density_matrix, random_pure_state

DIM = 3
SCALE = np.sqrt(DIM / 2)  # purity <=> unit norm for d = 3
PSD_TOL = -1e-10


class OutsideStateSpaceError(ValueError):
    pass


def gell_mann() -> np.ndarray:
    """The eight Gell-Mann matrices, conventional order, shape (8, 3, 3)."""
    g = np.zeros((8, 3, 3), dtype=complex)
    g[0][0, 1] = g[0][1, 0] = 1
    g[1][0, 1], g[1][1, 0] = -1j, 1j
    g[2][0, 0], g[2][1, 1] = 1, -1
    g[3][0, 2] = g[3][2, 0] = 1
    g[4][0, 2], g[4][2, 0] = -1j, 1j
    g[5][1, 2] = g[5][2, 1] = 1
    g[6][1, 2], g[6][2, 1] = -1j, 1j
    g[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return g


BASIS = gell_mann() / np.sqrt(2)


def to_bloch(state) -> np.ndarray:
    """Bloch vector of a pure state (1-d) or density matrix (2-d)."""
    rho = density_matrix(state)
    return SCALE * np.einsum("aij,ji->a", BASIS, rho).real


def from_bloch(u) -> np.ndarray:
    """Density matrix ``I/3 + sqrt(2/3) sum_a u_a B_a``; raises if not PSD."""
    u = np.asarray(u, dtype=float)
    if u.shape != (8,):
        raise ValueError(f"Bloch vector must have 8 components, got shape {u.shape}")
    rho = np.eye(DIM) / DIM + np.einsum("a,aij->ij", u, BASIS) / SCALE
    if np.linalg.eigvalsh(rho)[0] < PSD_TOL:
        raise OutsideStateSpaceError("Bloch vector lies outside the qutrit state space")
    return rho


def sic_bloch_vectors(povm: SicPovm) -> np.ndarray:
    """Bloch vectors of the SIC directions, shape (9, 8)."""
    return np.array([to_bloch(v) for v in povm.vectors])


@dataclass(frozen=True)
class SimplexReport:
    pairwise_dots: np.ndarray  # upper-triangle values, 36 entries
    centroid_norm: float
    frame_constant: float
    frame_residual: float

    @property
    def max_dot_deviation(self) -> float:
        return float(np.max(np.abs(self.pairwise_dots + 1 / 8)))


def simplex_report(povm: SicPovm, samples: int = 100, seed: int = 0) -> SimplexReport:
    """Regular-simplex and tight-frame diagnostics for the SIC Bloch vectors.

    The frame constant is the least-squares fit of ``sum_j (u.v_j)^2 = c |u|^2``
    over ``samples`` Gaussian random ``u``; ``frame_residual`` is the largest
    per-sample deviation from the fitted ``c``.
    """
    v = sic_bloch_vectors(povm)
    dots = v @ v.T
    iu = np.triu_indices(len(v), k=1)
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((samples, 8))
    lhs = ((u @ v.T) ** 2).sum(axis=1)
    rhs = (u**2).sum(axis=1)
    c = float(lhs @ rhs / (rhs @ rhs))
    return SimplexReport(
        pairwise_dots=dots[iu],
        centroid_norm=float(np.linalg.norm(v.sum(axis=0))),
        frame_constant=c,
        frame_residual=float(np.max(np.abs(lhs / rhs - c))),
    )


def tangent_point(v: np.ndarray, triple: Iterable[int]) -> np.ndarray:
    """``w = -(v_i + v_j + v_k) / |v_i + v_j + v_k|`` for an index triple."""
    s = v[list(triple)].sum(axis=0)
    return -s / np.linalg.norm(s)


def random_bloch_pairs(n: int, seed: int = 0):
    """Yield ``(psi1, psi2)`` Haar-random pure pairs from one seeded stream."""
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield random_pure_state(rng), random_pure_state(rng)


def write_csv(vectors: np.ndarray, fh: IO[str]) -> None:
    """One Bloch vector per row, 8 columns, 17 significant digits."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([f"u{a + 1}" for a in range(8)])
    for row in np.atleast_2d(vectors):
        writer.writerow([fmt_float(x) for x in row])
