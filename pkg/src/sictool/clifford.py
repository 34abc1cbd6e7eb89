"""ESL(2, Z_3) arithmetic and Clifford unitaries for the qutrit Weyl-Heisenberg group.

A Clifford element is labelled by a pair ``(F, r)`` with ``F`` a 2x2 matrix over
Z_3 of determinant +-1 and ``r`` a displacement.  Its unitary satisfies::

    U D_p U^dag = omega^<r, F p> D_{F p}       for all p.

Only ``det F = +1`` is represented by an operator here; the ``det F = -1``
elements are antiunitary and enter only through matrix-level conjugacy tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .wh_algebra import (
    DIM,
    INDEX_PAIRS,
    NONZERO_PAIRS,
    OMEGA,
    IndexPair,
    index_pair,
    max_abs,
    symplectic_form,
    weyl,
)

CUBE_ROOTS = OMEGA ** np.arange(3)
SNAP_RADIUS = 1e-6


class CliffordError(ValueError):
    """Raised for inputs outside the supported part of the Clifford group."""


class EslMatrix(NamedTuple):
    """Row-major 2x2 matrix ``[[a, b], [c, d]]`` over Z_3 with determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_rows(cls, rows) -> "EslMatrix":
        (a, b), (c, d) = rows
        m = cls(a % DIM, b % DIM, c % DIM, d % DIM)
        if m.det not in (1, DIM - 1):
            raise CliffordError(f"determinant of {m.rows} is {m.det}, not +-1 mod 3")
        return m

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % DIM

    @property
    def trace(self) -> int:
        return (self.a + self.d) % DIM

    def apply(self, p) -> IndexPair:
        p = index_pair(p)
        return index_pair(self.a * p.p1 + self.b * p.p2, self.c * p.p1 + self.d * p.p2)

    def __matmul__(self, other: "EslMatrix") -> "EslMatrix":
        return EslMatrix(
            (self.a * other.a + self.b * other.c) % DIM,
            (self.a * other.b + self.b * other.d) % DIM,
            (self.c * other.a + self.d * other.c) % DIM,
            (self.c * other.b + self.d * other.d) % DIM,
        )

    def inverse(self) -> "EslMatrix":
        inv_det = self.det  # 1 and 2 are their own inverses mod 3
        return EslMatrix(
            (inv_det * self.d) % DIM,
            (-inv_det * self.b) % DIM,
            (-inv_det * self.c) % DIM,
            (inv_det * self.a) % DIM,
        )

    def __repr__(self) -> str:
        return f"EslMatrix([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


IDENTITY = EslMatrix(1, 0, 0, 1)
ZAUNER = EslMatrix.from_rows([[0, -1], [1, -1]])
# Symplectic part of the Clifford unitary stabilizing the one-parameter family.
FAMILY_G = EslMatrix.from_rows([[1, 0], [1, 1]])


def _esl_sort_key(m: EslMatrix) -> tuple[int, ...]:
    # lexicographic in F - I so that the identity is enumerated first
    return ((m.a - 1) % DIM, m.b, m.c, (m.d - 1) % DIM)


ESL_MATRICES: tuple[EslMatrix, ...] = tuple(
    sorted(
        (
            EslMatrix(*e)
            for e in itertools.product(range(DIM), repeat=4)
            if (e[0] * e[3] - e[1] * e[2]) % DIM in (1, DIM - 1)
        ),
        key=_esl_sort_key,
    )
)
SL_MATRICES: tuple[EslMatrix, ...] = tuple(m for m in ESL_MATRICES if m.det == 1)


def fixed_points(f: EslMatrix) -> list[IndexPair]:
    """Nonzero ``s`` with ``F s = s (mod 3)``, in lexicographic order."""
    return [s for s in NONZERO_PAIRS if f.apply(s) == s]


def covariance_residual(u: np.ndarray, f: EslMatrix, r=(0, 0)) -> float:
    """Max entrywise deviation from ``U D_p U^dag = omega^<r,Fp> D_{Fp}`` over all p."""
    r = index_pair(r)
    worst = 0.0
    for p in INDEX_PAIRS:
        fp = f.apply(p)
        target = OMEGA ** symplectic_form(r, fp) * weyl(fp)
        worst = max(worst, max_abs(u @ weyl(p) @ u.conj().T - target))
    return worst


def _fix_global_phase(u: np.ndarray) -> np.ndarray:
    # first entry (row-major) of maximal modulus is made real positive
    flat = u.ravel()
    mags = np.abs(flat)
    k = int(np.argmax(mags > mags.max() - 1e-9))
    return u * (abs(flat[k]) / flat[k])


def metaplectic(f: EslMatrix, seed: int = 0, max_tries: int = 16) -> np.ndarray:
    """Unitary ``V`` with ``V D_p V^dag = D_{F p}`` for every p.

    ``V`` is obtained by averaging ``D_{Fp} X D_p^dag`` over the Weyl group for
    a random ``X``; by irreducibility the average is a multiple of the
    intertwiner.  The global phase is fixed so that the first entry of largest
    modulus is real and positive, which makes the result independent of ``seed``.
    """
    if f.det != 1:
        raise CliffordError(f"{f!r} has determinant -1; its Clifford element is antiunitary")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        x = rng.standard_normal((DIM, DIM)) + 1j * rng.standard_normal((DIM, DIM))
        v0 = sum(weyl(f.apply(p)) @ x @ weyl(p).conj().T for p in INDEX_PAIRS)
        if np.linalg.svd(v0, compute_uv=False)[-1] < 1e-8:
            continue
        scale = np.sqrt(np.trace(v0 @ v0.conj().T).real / DIM)
        return _fix_global_phase(v0 / scale)
    raise CliffordError("Schur averaging kept producing a singular operator")


@dataclass(frozen=True)
class CliffordElement:
    matrix: EslMatrix
    shift: IndexPair
    unitary: np.ndarray = field(repr=False)

    def residual(self) -> float:
        return covariance_residual(self.unitary, self.matrix, self.shift)


def clifford_unitary(f: EslMatrix, r=(0, 0), seed: int = 0) -> CliffordElement:
    """``U_(F,r) = D_r V_F`` with ``V_F`` from :func:`metaplectic`."""
    r = index_pair(r)
    u = weyl(r) @ metaplectic(f, seed=seed)
    return CliffordElement(f, r, u)


def is_order3_matrix(f: EslMatrix) -> bool:
    return f.det == 1 and f.trace == DIM - 1 and f != IDENTITY


def canonical_order3(f: EslMatrix, r=(0, 0), seed: int = 0) -> CliffordElement:
    """Clifford unitary for ``(F, r)`` rephased so that ``U^3 = I``.

    Requires ``det F = 1``, ``Tr F = -1 (mod 3)`` and ``F != I``.  Then
    ``F^2 + F + I = 0`` and the raw cube is a multiple ``c I``; the result is
    the raw unitary times the principal cube root of ``conj(c)``.
    """
    if not is_order3_matrix(f):
        raise CliffordError(
            f"{f!r} is not a canonical order-3 symplectic matrix "
            f"(det={f.det}, trace={f.trace})"
        )
    elem = clifford_unitary(f, r, seed=seed)
    u = elem.unitary
    cube = u @ u @ u
    c = cube[0, 0]
    if max_abs(cube - c * np.eye(DIM)) > 1e-10:
        raise CliffordError("cube of the Clifford unitary is not scalar")
    u = u * np.exp(-1j * np.angle(c) / 3)
    return CliffordElement(elem.matrix, elem.shift, u)


def conjugate_to_zauner(g: EslMatrix, q=(0, 0)) -> Optional[tuple[EslMatrix, IndexPair]]:
    """First ``(F, r)`` with ``G = F Z F^-1`` and ``q = (I - G) r``, or None.

    Matrices are enumerated lexicographically in ``F - I`` (identity first),
    shifts lexicographically.
    """
    q = index_pair(q)
    for f in ESL_MATRICES:
        if f @ ZAUNER @ f.inverse() != g:
            continue
        for r in INDEX_PAIRS:
            if r - g.apply(r) == q:
                return f, r
    return None


@dataclass
class Order3Eigenstructure:
    """Eigenspaces of an order-3 unitary grouped by cube root of unity.

    ``spaces[k]`` is a ``(3, dim_k)`` array with orthonormal columns spanning the
    eigenspace for ``omega**k``.
    """

    eigenvalues: np.ndarray
    spaces: list[np.ndarray]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.shape[1] for s in self.spaces)

    @property
    def is_split(self) -> bool:
        """True for the 1 + 2 pattern needed by the algebraic minimizer argument."""
        return sorted(self.dims) == [0, 1, 2]

    def _space_of_dim(self, n: int) -> np.ndarray:
        if not self.is_split:
            raise CliffordError(f"eigenspace dimensions {self.dims} are not a 1 + 2 split")
        return self.spaces[self.dims.index(n)]

    @property
    def h1(self) -> np.ndarray:
        return self._space_of_dim(1)

    @property
    def h2(self) -> np.ndarray:
        return self._space_of_dim(2)


def eigenspaces(u: np.ndarray, atol: float = 1e-10) -> Order3Eigenstructure:
    """Split an order-3 unitary into its cube-root-of-unity eigenspaces.

    Each eigenspace is read off from the spectral projector
    ``(I + conj(lam) U + conj(lam)^2 U^2) / 3``.
    """
    u = np.asarray(u, dtype=complex)
    if max_abs(u @ u @ u - np.eye(DIM)) > atol:
        raise CliffordError("operator is not of order 3")
    evals = np.linalg.eigvals(u)
    dist = np.abs(evals[:, None] - CUBE_ROOTS[None, :])
    if np.any(dist.min(axis=1) > SNAP_RADIUS):
        raise CliffordError("eigenvalue not within snapping radius of a cube root of unity")
    counts = np.bincount(dist.argmin(axis=1), minlength=3)
    u2 = u @ u
    spaces = []
    for k, lam in enumerate(CUBE_ROOTS):
        proj = (np.eye(DIM) + np.conj(lam) * u + np.conj(lam) ** 2 * u2) / 3
        w, vecs = np.linalg.eigh((proj + proj.conj().T) / 2)
        spaces.append(vecs[:, DIM - counts[k]:] if counts[k] else np.zeros((DIM, 0), complex))
    return Order3Eigenstructure(CUBE_ROOTS.copy(), spaces)


def weyl_eigenbasis(s) -> np.ndarray:
    """Orthonormal eigenbasis of ``D_s`` (columns) for nonzero ``s``.

    ``D_s^3 = I`` and, for ``s != 0``, each cube root of unity is a simple
    eigenvalue, so the order-3 projectors give the basis directly.
    """
    s = index_pair(s)
    if s == (0, 0):
        raise CliffordError("D_(0,0) is the identity; its eigenbasis is not unique")
    es = eigenspaces(weyl(s))
    return np.hstack(es.spaces)
