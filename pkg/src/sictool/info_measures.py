"""Entropies, mutual information and informational power of a SIC measurement.

All quantities are in nats.  Also provides the quadratic Hermite interpolant
that certifies ``ln 6`` as the minimum outcome entropy of a qutrit SIC.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sic import SicPovm, probabilities
from .wh_algebra import INDEX_PAIRS, weyl

ETA_FLOOR = 1e-300
NEG_TOL = 1e-12
GRID_POINTS = 100_001  # 10^5 intervals, so -1/2 and 1/4 are grid points
MARGIN_TOL = 1e-12


class DomainError(ValueError):
    pass


class CertificateError(RuntimeError):
    pass


def eta(x) -> np.ndarray:
    """``-x ln x`` with ``eta(0) = 0``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > ETA_FLOOR
    out[pos] = -x[pos] * np.log(x[pos])
    return out


def _as_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.min() < -NEG_TOL:
        raise DomainError("probability vector has negative entries")
    if abs(p.sum() - 1) > 1e-9:
        raise DomainError(f"probabilities sum to {p.sum()!r}")
    return np.clip(p, 0.0, None)


def shannon_entropy(p) -> float:
    return float(eta(_as_distribution(p)).sum())


def relative_entropy(state, povm: SicPovm) -> float:
    """Divergence of the outcome distribution from uniform: ``ln n - H``."""
    return float(np.log(povm.size) - shannon_entropy(probabilities(state, povm)))


def _power_sum(p, alpha: float) -> float:
    if alpha <= 0 or alpha == 1:
        raise DomainError(f"alpha must be positive and different from 1, got {alpha}")
    p = _as_distribution(p)
    p = p[p > ETA_FLOOR]
    return float(np.sum(p**alpha))


def renyi_entropy(p, alpha: float) -> float:
    return float(np.log(_power_sum(p, alpha)) / (1 - alpha))


def tsallis_entropy(p, alpha: float) -> float:
    return float((_power_sum(p, alpha) - 1) / (1 - alpha))


@dataclass
class Ensemble:
    """Weighted collection of states (vectors or density matrices)."""

    weights: np.ndarray
    states: list

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if len(self.weights) != len(self.states):
            raise DomainError("weights and states differ in length")
        if self.weights.min() < 0 or abs(self.weights.sum() - 1) > 1e-12:
            raise DomainError("ensemble weights must be nonnegative and sum to 1")

    def __len__(self) -> int:
        return len(self.states)


def covariant_ensemble(state) -> Ensemble:
    """Equal-weight Weyl-Heisenberg orbit of ``state`` (9 members)."""
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        members = [weyl(p) @ a for p in INDEX_PAIRS]
    else:
        members = [weyl(p) @ a @ weyl(p).conj().T for p in INDEX_PAIRS]
    return Ensemble(np.full(len(INDEX_PAIRS), 1 / len(INDEX_PAIRS)), members)


def joint_distribution(ens: Ensemble, povm: SicPovm) -> np.ndarray:
    """``P_ij = pi_i Tr(rho_i Pi_j)``."""
    return np.array([w * probabilities(s, povm) for w, s in zip(ens.weights, ens.states)])


def mutual_information(ens: Ensemble, povm: SicPovm) -> float:
    p = joint_distribution(ens, povm)
    return float(
        eta(p.sum(axis=1)).sum() + eta(p.sum(axis=0)).sum() - eta(p).sum()
    )


def holevo_chi(ens: Ensemble, povm: SicPovm) -> float:
    """Holevo quantity of the quantum-classical channel at a fixed ensemble.

    The channel output is diagonal, so von Neumann entropies reduce to Shannon
    entropies of the outcome distributions.
    """
    rows = np.array([probabilities(s, povm) for s in ens.states])
    avg = ens.weights @ rows
    return float(eta(avg).sum() - ens.weights @ eta(rows).sum(axis=1))


@dataclass
class PowerResult:
    value: float
    min_entropy: float
    ensemble: Ensemble
    argmin: np.ndarray


def informational_power(povm: SicPovm, restarts: int = 200, seed: int = 42) -> PowerResult:
    """Informational power over group-covariant ensembles.

    Equals ``ln 9 - min H``; the achieving ensemble is the orbit of the
    numerically located entropy minimizer.
    """
    from .minimizers import numeric_min

    res = numeric_min(povm, restarts=restarts, seed=seed)
    best = res.states[0]
    return PowerResult(
        value=float(np.log(povm.size) - res.min_entropy),
        min_entropy=res.min_entropy,
        ensemble=covariant_ensemble(best),
        argmin=best,
    )


def _h(x):
    return eta((1 + 2 * np.asarray(x, dtype=float)) / 9)


@dataclass(frozen=True)
class HermiteCertificate:
    coefficients: tuple[float, float, float]  # a0 + a1 x + a2 x^2
    bound: float
    grid_margin: float
    margin_at_nodes: tuple[float, float]

    def poly(self, x):
        a0, a1, a2 = self.coefficients
        x = np.asarray(x, dtype=float)
        return a0 + a1 * x + a2 * x**2


def hermite_certificate(grid_points: int = GRID_POINTS) -> HermiteCertificate:
    """Quadratic lower interpolant of ``h(x) = eta((1 + 2x)/9)`` on [-1/2, 1].

    Matches ``h`` at -1/2 and 1/4 and ``h'`` at 1/4.  Summed over the nine SIC
    Bloch directions its linear part vanishes and its quadratic part equals
    ``(9/8) a2`` on the unit sphere, so ``9 a0 + (9/8) a2`` is a lower bound on
    the outcome entropy that is attained wherever the interpolation is tight.
    """
    lo, mid = -0.5, 0.25
    dh_mid = (2 / 9) * (-np.log(1 / 6) - 1)
    system = np.array(
        [
            [1.0, lo, lo**2],
            [1.0, mid, mid**2],
            [0.0, 1.0, 2 * mid],
        ]
    )
    rhs = np.array([0.0, float(_h(mid)), dh_mid])
    a0, a1, a2 = np.linalg.solve(system, rhs)
    grid = np.linspace(lo, 1.0, grid_points)
    margin = _h(grid) - (a0 + a1 * grid + a2 * grid**2)
    nodes = (0, int(np.argmin(np.abs(grid - mid))))
    cert = HermiteCertificate(
        coefficients=(float(a0), float(a1), float(a2)),
        bound=float(9 * a0 + 9 / 8 * a2),
        grid_margin=float(margin.min()),
        margin_at_nodes=(float(margin[nodes[0]]), float(margin[nodes[1]])),
    )
    if cert.grid_margin < -MARGIN_TOL:
        raise CertificateError(f"interpolant exceeds h by {-cert.grid_margin:.3g}")
    return cert
