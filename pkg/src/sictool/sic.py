"""The one-parameter family of Weyl-Heisenberg SIC-POVMs in dimension 3.

Vectors are stored unit-normalized; the POVM effects are ``|phi_j><phi_j| / d``.
Outcome ``j`` corresponds to the ``j``-th index pair in lexicographic order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .wh_algebra import DIM, INDEX_PAIRS, flat_index, weyl

OVERLAP_TOL = 1e-10
STATE_TOL = 1e-12


class InvalidStateError(ValueError):
    pass


@dataclass(frozen=True)
class SicPovm:
    """Rank-one POVM ``{|phi_j><phi_j| / d}`` given by its unit vectors.

    ``vectors`` has shape ``(n, d)``; for the qutrit family ``n = 9`` and row
    ``j`` is the displacement of the fiducial by ``INDEX_PAIRS[j]``.
    """

    vectors: np.ndarray
    t: Optional[float] = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, p) -> np.ndarray:
        if isinstance(p, (int, np.integer)):
            return self.vectors[p]
        return self.vectors[flat_index(p)]

    def effects(self) -> np.ndarray:
        v = self.vectors
        return np.einsum("ja,jb->jab", v, v.conj()) / self.dim


def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    n = np.linalg.norm(psi)
    if n == 0:
        raise InvalidStateError("zero vector is not a state")
    return psi / n


def fiducial(t: float) -> np.ndarray:
    """``(0, 1, -e^{it}) / sqrt(2)``."""
    return np.array([0.0, 1.0, -np.exp(1j * t)], dtype=complex) / np.sqrt(2)


def orbit(fid, t: Optional[float] = None) -> SicPovm:
    """Weyl-Heisenberg orbit ``{D_p fid}`` in lexicographic order of ``p``."""
    fid = normalize(fid)
    vecs = np.array([weyl(p) @ fid for p in INDEX_PAIRS])
    return SicPovm(vecs, t)


def family_sic(t: float) -> SicPovm:
    return orbit(fiducial(t), t=float(t))


@dataclass(frozen=True)
class SicReport:
    max_overlap_deviation: float
    max_identity_residual: float
    tol: float = OVERLAP_TOL

    @property
    def passed(self) -> bool:
        return self.max_overlap_deviation < self.tol and self.max_identity_residual < self.tol


def verify_sic(povm: SicPovm, tol: float = OVERLAP_TOL) -> SicReport:
    """Check equiangularity ``|<phi_i|phi_j>|^2 = 1/(d+1)`` and ``sum Pi_j = I``."""
    v = povm.vectors
    d = povm.dim
    gram = np.abs(v.conj() @ v.T) ** 2
    iu = np.triu_indices(povm.size, k=1)
    dev = float(np.max(np.abs(gram[iu] - 1.0 / (d + 1))))
    resid = float(np.max(np.abs(povm.effects().sum(axis=0) - np.eye(d))))
    return SicReport(dev, resid, tol)


def density_matrix(state) -> np.ndarray:
    """Validate ``state`` and return it as a density matrix.

    A 1-d input is a state vector (normalized here); a 2-d input must be a
    unit-trace Hermitian PSD matrix.
    """
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        psi = normalize(a)
        return np.outer(psi, psi.conj())
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidStateError(f"expected a vector or square matrix, got shape {a.shape}")
    if np.max(np.abs(a - a.conj().T)) > 1e-10:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(a) - 1) > 1e-10:
        raise InvalidStateError(f"density matrix has trace {np.trace(a).real:.3g}")
    if np.linalg.eigvalsh((a + a.conj().T) / 2)[0] < -1e-10:
        raise InvalidStateError("density matrix is not positive semidefinite")
    return a


def probabilities(state, povm: SicPovm) -> np.ndarray:
    """Outcome distribution ``p_j = <phi_j|rho|phi_j> / d``."""
    v = povm.vectors
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        psi = normalize(a)
        p = np.abs(v.conj() @ psi) ** 2 / povm.dim
    else:
        rho = density_matrix(a)
        p = np.einsum("ja,ab,jb->j", v.conj(), rho, v).real / povm.dim
    if p.min() < -STATE_TOL:
        raise InvalidStateError("negative outcome probability")
    return np.clip(p, 0.0, None)


def random_pure_state(rng: np.random.Generator, dim: int = DIM) -> np.ndarray:
    """Haar-random unit vector."""
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def same_ray(a, b, tol: float = 1e-9) -> bool:
    """Equality of pure states modulo global phase."""
    return bool(abs(abs(np.vdot(normalize(a), normalize(b))) - 1) < tol)


def pairwise_overlaps(vectors: np.ndarray) -> np.ndarray:
    return np.abs(vectors.conj() @ vectors.T) ** 2
