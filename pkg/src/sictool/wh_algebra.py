"""Index arithmetic over Z_3 x Z_3 and the Weyl (generalized Pauli) matrices.

Phase conventions::

    omega = exp(2 pi i / 3)
    tau   = -exp(pi i / 3)
    T|e_r> = omega^r |e_r>,   S|e_r> = |e_{r+1}>
    D_p   = tau^(p1 p2) S^p1 T^p2

With these conventions ``D_p D_q = tau^<p,q> D_{p+q}`` where
``<p,q> = p2 q1 - p1 q2``.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

DIM = 3
OMEGA = np.exp(2j * np.pi / DIM)
TAU = -np.exp(1j * np.pi / DIM)

ATOL = 1e-12


class IndexPair(NamedTuple):
    """Element of Z_3 x Z_3. Build with :func:`index_pair` to get reduced components."""

    p1: int
    p2: int

    def __add__(self, other):  # type: ignore[override]
        return index_pair(self.p1 + other[0], self.p2 + other[1])

    def __neg__(self):
        return index_pair(-self.p1, -self.p2)

    def __sub__(self, other):
        return index_pair(self.p1 - other[0], self.p2 - other[1])

    def scale(self, k: int) -> "IndexPair":
        return index_pair(k * self.p1, k * self.p2)


def index_pair(p1, p2=None) -> IndexPair:
    """Return the reduced pair ``(p1 mod 3, p2 mod 3)``.

    Accepts either two integers or a single length-2 sequence.
    """
    if p2 is None:
        p1, p2 = p1
    return IndexPair(int(p1) % DIM, int(p2) % DIM)


# Lexicographic order; this fixes the global outcome numbering.
INDEX_PAIRS: tuple[IndexPair, ...] = tuple(
    IndexPair(a, b) for a in range(DIM) for b in range(DIM)
)
NONZERO_PAIRS: tuple[IndexPair, ...] = INDEX_PAIRS[1:]


def flat_index(p) -> int:
    """Zero-based position of ``p`` in the lexicographic enumeration."""
    p = index_pair(p)
    return DIM * p.p1 + p.p2


def symplectic_form(p, q) -> int:
    """``<p, q> = p2*q1 - p1*q2 (mod 3)``."""
    p, q = index_pair(p), index_pair(q)
    return (p.p2 * q.p1 - p.p1 * q.p2) % DIM


def clock() -> np.ndarray:
    """The clock matrix ``T = diag(1, omega, omega^2)``."""
    return np.diag(OMEGA ** np.arange(DIM))


def shift() -> np.ndarray:
    """The cyclic shift ``S|e_r> = |e_{r+1}>``."""
    return np.roll(np.eye(DIM, dtype=complex), 1, axis=0)


def weyl(p) -> np.ndarray:
    """Weyl matrix ``D_p`` as a 3x3 complex array.

    Built from the entry formula ``D_p[r+p1, r] = tau^(p1 p2) omega^(p2 r)``
    rather than by multiplying powers of ``S`` and ``T``.
    """
    p = index_pair(p)
    # tau is a cube root of unity for d=3, so the exponent may be reduced mod 3
    phase = TAU ** ((p.p1 * p.p2) % DIM)
    out = np.zeros((DIM, DIM), dtype=complex)
    for r in range(DIM):
        out[(r + p.p1) % DIM, r] = phase * OMEGA ** ((p.p2 * r) % DIM)
    return out


def weyl_set() -> list[np.ndarray]:
    """All nine Weyl matrices in lexicographic index order."""
    return [weyl(p) for p in INDEX_PAIRS]


def is_unitary(u: np.ndarray, atol: float = ATOL) -> bool:
    u = np.asarray(u)
    return bool(np.allclose(u @ u.conj().T, np.eye(u.shape[0]), rtol=0, atol=atol))


def max_abs(a: np.ndarray) -> float:
    """Entrywise max-norm, used for all residual reporting."""
    return float(np.max(np.abs(a)))
