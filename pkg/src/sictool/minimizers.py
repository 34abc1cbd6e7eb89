"""Entropy minimizers of qutrit SIC measurements.

Three independent routes are provided:

* geometric: states orthogonal to linearly dependent triples of SIC vectors
  (:func:`dependent_triples`);
* algebraic: eigenbases of the Weyl matrix ``D_s`` for ``s`` a fixed point of
  the symplectic matrix stabilizing the fiducial (:func:`algebraic_minimizers`);
* numerical: multistart minimization over a chart of CP^{d-1}
  (:func:`numeric_min`), which also handles the qubit tetrahedron.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize, root

from . import clifford
from .clifford import FAMILY_G, fixed_points
from .info_measures import Ensemble, eta, shannon_entropy
from .sic import SicPovm, family_sic, fiducial, normalize, probabilities
from .wh_algebra import INDEX_PAIRS, IndexPair, weyl

log = logging.getLogger(__name__)

DEPENDENCE_TOL = 1e-9
ORTHO_TOL = 1e-9
MUB_TOL = 1e-9
CLUSTER_OVERLAP = 1 - 1e-6
ENTROPY_TOL = 1e-6
POLE_MARGIN = 1e-3
DEFAULT_RESTARTS = 200
EXHAUSTIVE_RESTARTS = 10_000


class DegenerateSpanError(ValueError):
    pass


# ---------------------------------------------------------------------------
# geometric route


@dataclass(frozen=True)
class DependentTriple:
    indices: tuple[IndexPair, IndexPair, IndexPair]
    smallest_singular_value: float
    orthogonal_state: np.ndarray = field(repr=False)


def orthogonal_state(a, b) -> np.ndarray:
    """Unit vector orthogonal to ``a`` and ``b`` in C^3.

    Computed as the complex conjugate of the cross product ``a x b``.
    """
    a, b = normalize(a), normalize(b)
    if np.linalg.svd(np.column_stack([a, b]), compute_uv=False)[-1] < 1e-9:
        raise DegenerateSpanError("vectors are (nearly) colinear")
    return normalize(np.conj(np.cross(a, b)))


def dependent_triples(povm: SicPovm, tol: float = DEPENDENCE_TOL) -> list[DependentTriple]:
    """All index triples whose SIC vectors span only a plane."""
    out = []
    for tri in itertools.combinations(range(povm.size), 3):
        m = povm.vectors[list(tri)]
        sv = float(np.linalg.svd(m, compute_uv=False)[-1])
        if sv < tol:
            i, j, _ = tri
            psi = orthogonal_state(povm.vectors[i], povm.vectors[j])
            out.append(
                DependentTriple(tuple(INDEX_PAIRS[k] for k in tri), sv, psi)
            )
    return out


# ---------------------------------------------------------------------------
# result containers


@dataclass
class MinimizerSet:
    states: np.ndarray  # (m, d), rows are unit vectors
    entropies: np.ndarray
    bases: list[list[int]] = field(default_factory=list)
    mub: Optional[np.ndarray] = None  # (nbases, nbases) bool
    leftover: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def mub_pairs(self) -> list[tuple[int, int]]:
        if self.mub is None:
            return []
        n = len(self.bases)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.mub[i, j]]

    @property
    def all_mutually_unbiased(self) -> bool:
        n = len(self.bases)
        return not self.leftover and len(self.mub_pairs) == n * (n - 1) // 2


def _entropies(states: np.ndarray, povm: SicPovm) -> np.ndarray:
    return np.array([shannon_entropy(probabilities(s, povm)) for s in states])


def dedupe_rays(states, threshold: float = CLUSTER_OVERLAP) -> list[np.ndarray]:
    """Drop states equal (modulo phase) to an earlier one."""
    kept: list[np.ndarray] = []
    for s in states:
        s = normalize(s)
        if all(abs(np.vdot(k, s)) <= threshold for k in kept):
            kept.append(s)
    return kept


def geometric_minimizers(povm: SicPovm, tol: float = DEPENDENCE_TOL) -> MinimizerSet:
    """Distinct states orthogonal to some dependent triple."""
    states = dedupe_rays([d.orthogonal_state for d in dependent_triples(povm, tol)])
    arr = np.array(states) if states else np.zeros((0, povm.dim), complex)
    return MinimizerSet(arr, _entropies(arr, povm))


# ---------------------------------------------------------------------------
# algebraic route


def algebraic_minimizers(t: float, g: clifford.EslMatrix = FAMILY_G) -> MinimizerSet:
    """Eigenbasis of ``D_s``, ``s`` the first nonzero fixed point of ``g``.

    The fiducial ``(0, 1, -e^{it})`` of the family is an eigenvector of the
    canonical order-3 unitary ``U_(g, 0)``, whose 1-dimensional eigenspace is
    orthogonal to the plane spanned by ``phi, D_s phi, D_2s phi``.
    """
    s = fixed_points(g)[0]
    basis = clifford.weyl_eigenbasis(s).T
    povm = family_sic(t)
    return MinimizerSet(basis, _entropies(basis, povm))


def stabilizer_eigenspaces(t: float, g: clifford.EslMatrix = FAMILY_G, q=(0, 0)):
    """Eigenstructure of ``U_(g,q)`` and the residual of the fiducial as its eigenvector."""
    u = clifford.canonical_order3(g, q).unitary
    es = clifford.eigenspaces(u)
    fid = fiducial(t)
    ufid = u @ fid
    lam = np.vdot(fid, ufid) / np.vdot(fid, fid)
    return es, float(np.max(np.abs(ufid - lam * fid)))


# ---------------------------------------------------------------------------
# numerical route: chart of CP^{d-1}


def chart(x: np.ndarray, dim: int) -> np.ndarray:
    """Map chart coordinates to unit vectors.

    d = 3: ``x = (th1, th2, chi1, chi2)`` and
    ``psi = (cos th1, sin th1 cos th2 e^{i chi1}, sin th1 sin th2 e^{i chi2})``.
    d = 2: ``x = (th, chi)`` and ``psi = (cos th, sin th e^{i chi})``.
    Accepts a single point or a batch of shape ``(n, 2(d-1))``.
    """
    psi, _ = _chart_and_jacobian(np.atleast_2d(x), dim, jac=False)
    return psi[0] if np.ndim(x) == 1 else psi


def _chart_and_jacobian(x: np.ndarray, dim: int, jac: bool = True):
    n = x.shape[0]
    if dim == 3:
        t1, t2, c1, c2 = x.T
        e1, e2 = np.exp(1j * c1), np.exp(1j * c2)
        s1, k1, s2, k2 = np.sin(t1), np.cos(t1), np.sin(t2), np.cos(t2)
        psi = np.stack([k1 + 0j, s1 * k2 * e1, s1 * s2 * e2], axis=1)
        if not jac:
            return psi, None
        j = np.zeros((n, 4, 3), dtype=complex)
        j[:, 0] = np.stack([-s1 + 0j, k1 * k2 * e1, k1 * s2 * e2], axis=1)
        j[:, 1, 1] = -s1 * s2 * e1
        j[:, 1, 2] = s1 * k2 * e2
        j[:, 2, 1] = 1j * s1 * k2 * e1
        j[:, 3, 2] = 1j * s1 * s2 * e2
        return psi, j
    if dim == 2:
        th, ch = x.T
        e = np.exp(1j * ch)
        psi = np.stack([np.cos(th) + 0j, np.sin(th) * e], axis=1)
        if not jac:
            return psi, None
        j = np.zeros((n, 2, 2), dtype=complex)
        j[:, 0] = np.stack([-np.sin(th) + 0j, np.cos(th) * e], axis=1)
        j[:, 1, 1] = 1j * np.sin(th) * e
        return psi, j
    raise ValueError(f"chart implemented for d = 2, 3 only, got {dim}")


def inverse_chart(psi, dim: int) -> np.ndarray:
    """Chart coordinates of the ray through ``psi``."""
    psi = normalize(psi)
    psi = psi * np.exp(-1j * np.angle(psi[0])) if abs(psi[0]) > 0 else psi
    if dim == 3:
        t1 = np.arccos(np.clip(abs(psi[0]), 0, 1))
        t2 = np.arctan2(abs(psi[2]), abs(psi[1]))
        return np.array([t1, t2, np.angle(psi[1]), np.angle(psi[2])])
    if dim == 2:
        return np.array([np.arccos(np.clip(abs(psi[0]), 0, 1)), np.angle(psi[1])])
    raise ValueError(f"chart implemented for d = 2, 3 only, got {dim}")


def _near_pole(x: np.ndarray, dim: int) -> bool:
    polar = x[: dim - 1]
    # chart degenerates where any polar angle is a multiple of pi/2
    return bool(np.any(np.abs(np.sin(2 * polar)) < 2 * POLE_MARGIN))


def entropy_and_gradient(x: np.ndarray, povm: SicPovm, frame: Optional[np.ndarray] = None):
    """Batched entropy and its analytic gradient in chart coordinates.

    ``frame`` is an optional unitary ``Q`` so that the state is ``Q chart(x)``.
    Returns arrays of shape ``(n,)`` and ``(n, 2(d-1))``.
    """
    x = np.atleast_2d(x)
    d = povm.dim
    psi, jac = _chart_and_jacobian(x, d)
    vh = povm.vectors.conj().T  # (d, n_out)
    if frame is not None:
        vh = frame.T @ vh
    amp = psi @ vh  # <phi_j|psi>
    damp = jac @ vh  # (n, k, n_out)
    p = np.abs(amp) ** 2 / d
    dp = 2 * np.real(np.conj(amp)[:, None, :] * damp) / d
    pos = p > 1e-300
    logp = np.zeros_like(p)
    logp[pos] = np.log(p[pos])
    weight = np.where(pos, -(logp + 1), 0.0)
    return eta(p).sum(axis=1), np.einsum("nj,nkj->nk", weight, dp)


def entropy_at(x: np.ndarray, povm: SicPovm, frame: Optional[np.ndarray] = None) -> np.ndarray:
    return entropy_and_gradient(x, povm, frame)[0]


def _descend(x: np.ndarray, povm: SicPovm, iters: int = 400, gtol: float = 1e-9) -> np.ndarray:
    """Batched gradient descent with a per-point Armijo step."""
    step = np.full(len(x), 0.5)
    f, g = entropy_and_gradient(x, povm)
    for _ in range(iters):
        gn2 = np.sum(g * g, axis=1)
        active = gn2 > gtol**2
        if not active.any():
            break
        trial = x - step[:, None] * g
        ft, gt = entropy_and_gradient(trial, povm)
        ok = active & (ft <= f - 1e-4 * step * gn2)
        x[ok], f[ok], g[ok] = trial[ok], ft[ok], gt[ok]
        step = np.where(ok, np.minimum(step * 1.5, 2.0), step * 0.5)
        step = np.maximum(step, 1e-12)
    return x


def _unitary_with_first_column(v: np.ndarray) -> np.ndarray:
    d = len(v)
    q, _ = np.linalg.qr(np.column_stack([v, np.eye(d)]))
    q[:, 0] *= np.vdot(q[:, 0], v)  # |<q0|v>| = 1, so this aligns the phase
    return q


def _rotated_frame(psi: np.ndarray, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Frame ``Q`` and coordinates ``x0`` away from the poles with ``Q chart(x0) = psi``."""
    x0 = np.array([0.9, 0.7, 0.3, 1.1])[: 2 * (dim - 1)]
    c0 = chart(x0, dim)
    q = _unitary_with_first_column(psi) @ _unitary_with_first_column(c0).conj().T
    return q, x0


def polish(psi: np.ndarray, povm: SicPovm, gtol: float = 1e-10):
    """Local BFGS refinement followed by a root solve of the gradient.

    Near a minimizer the entropy is flat below double precision long before
    the state has converged, while the analytic gradient still resolves it;
    solving ``grad H = 0`` with MINPACK's hybrid method recovers the last
    digits.  Uses the standard chart unless ``psi`` sits near one of its poles,
    in which case a rotated chart centred on ``psi`` is used instead.  Returns
    the refined state and the final gradient norm in the chart used.
    """
    d = povm.dim
    x = inverse_chart(psi, d)
    frame = None
    if _near_pole(x, d):
        frame, x = _rotated_frame(normalize(psi), d)

    def fun(y):
        f, g = entropy_and_gradient(y, povm, frame)
        return f[0], g[0]

    res = minimize(fun, x, jac=True, method="BFGS", options={"gtol": gtol, "maxiter": 500})
    y, fy, gy = res.x, res.fun, np.linalg.norm(res.jac)
    if gy > gtol:
        sol = root(lambda z: fun(z)[1], y, method="hybr", options={"xtol": 1e-15})
        fz, gz = fun(sol.x)
        # accept only a point that is no worse, so a nearby saddle cannot capture it
        if np.linalg.norm(gz) < gy and fz <= fy + 1e-14:
            y, gy = sol.x, float(np.linalg.norm(gz))
    state = chart(y, d)
    if frame is not None:
        state = frame @ state
    return normalize(state), float(gy)


@dataclass
class NumericMinResult:
    min_entropy: float
    states: np.ndarray  # distinct global minimizers, best first
    entropies: np.ndarray
    gradient_norms: np.ndarray
    restarts: int
    seed: int


def _random_chart_points(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    # Haar-random rays pulled back through the chart
    z = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    return np.array([inverse_chart(v, dim) for v in z])


def _cluster(states: np.ndarray, order: Sequence[int], threshold: float) -> list[list[int]]:
    clusters: list[list[int]] = []
    reps: list[np.ndarray] = []
    for i in order:
        for c, r in zip(clusters, reps):
            if abs(np.vdot(r, states[i])) > threshold:
                c.append(i)
                break
        else:
            clusters.append([i])
            reps.append(states[i])
    return clusters


def _phase_aligned_centroid(states: np.ndarray) -> np.ndarray:
    ref = states[0]
    acc = sum(s * np.exp(-1j * np.angle(np.vdot(ref, s))) for s in states)
    return normalize(acc)


def numeric_min(
    povm: SicPovm,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 42,
    entropy_tol: float = ENTROPY_TOL,
) -> NumericMinResult:
    """Multistart global search for the minimum outcome entropy.

    All restarts descend together in the chart; endpoints are grouped into
    coarse clusters, each cluster's best point is polished, and the polished
    points within ``entropy_tol`` of the best value are merged modulo phase.
    """
    d = povm.dim
    rng = np.random.default_rng(seed)
    x = _descend(_random_chart_points(rng, restarts, d), povm)
    f = entropy_at(x, povm)
    psi = chart(x, d)
    order = np.argsort(f, kind="stable")
    coarse = _cluster(psi, order, threshold=1 - 1e-3)
    cutoff = f[order[0]] + 1e-3
    polished = []
    for members in coarse:
        best = members[0]
        if f[best] > cutoff:
            continue
        state, gnorm = polish(psi[best], povm)
        polished.append((shannon_entropy(probabilities(state, povm)), state, gnorm))
    polished.sort(key=lambda r: r[0])
    hmin = polished[0][0]
    keep = [r for r in polished if r[0] <= hmin + entropy_tol]
    states = np.array([r[1] for r in keep])
    groups = _cluster(states, range(len(states)), CLUSTER_OVERLAP)
    reps = np.array([_phase_aligned_centroid(states[g]) for g in groups])
    ent = _entropies(reps, povm)
    grads = np.array([min(keep[i][2] for i in g) for g in groups])
    o = np.argsort(ent, kind="stable")
    log.debug("numeric_min: %d coarse clusters, %d minimizers", len(coarse), len(reps))
    return NumericMinResult(float(ent[o[0]]), reps[o], ent[o], grads[o], restarts, seed)


# ---------------------------------------------------------------------------
# classification


def classify_minimizers(states, povm: Optional[SicPovm] = None) -> MinimizerSet:
    """Greedy partition into orthonormal bases and pairwise MUB test.

    States that cannot be completed into a basis are listed in ``leftover``.
    """
    arr = np.array([normalize(s) for s in states])
    m, d = arr.shape
    unused = list(range(m))
    bases: list[list[int]] = []
    leftover: list[int] = []
    while unused:
        basis = [unused.pop(0)]
        for k in list(unused):
            if len(basis) == d:
                break
            if all(abs(np.vdot(arr[b], arr[k])) < ORTHO_TOL for b in basis):
                basis.append(k)
                unused.remove(k)
        if len(basis) == d:
            bases.append(basis)
        else:
            leftover.extend(basis)
    nb = len(bases)
    mub = np.zeros((nb, nb), dtype=bool)
    for i, j in itertools.combinations(range(nb), 2):
        cross = np.abs(arr[bases[i]].conj() @ arr[bases[j]].T) ** 2
        mub[i, j] = mub[j, i] = bool(np.all(np.abs(cross - 1 / d) < MUB_TOL))
    ent = _entropies(arr, povm) if povm is not None else np.full(m, np.nan)
    return MinimizerSet(arr, ent, bases, mub, sorted(leftover))


# ---------------------------------------------------------------------------
# covariant ensembles


@dataclass
class CovariantEnsemble:
    seed_state: np.ndarray
    orbit: np.ndarray  # distinct members modulo phase
    ensemble: Ensemble


def wh_orbit(psi) -> list[np.ndarray]:
    """Distinct members (modulo phase) of ``{D_p psi}``, first-seen order."""
    psi = normalize(psi)
    return dedupe_rays([weyl(p) @ psi for p in INDEX_PAIRS])


def group_into_orbits(states) -> list[CovariantEnsemble]:
    """Partition minimizers into Weyl-Heisenberg orbits, each as an ensemble.

    Each orbit carries weight 1/9 per group element, aggregated over members
    that coincide modulo phase.
    """
    remaining = [normalize(s) for s in states]
    out = []
    while remaining:
        seed_state = remaining[0]
        full = [weyl(p) @ seed_state for p in INDEX_PAIRS]
        members = dedupe_rays(full)
        weights = np.array(
            [sum(abs(np.vdot(m, f)) > CLUSTER_OVERLAP for f in full) for m in members],
            dtype=float,
        ) / len(full)
        out.append(CovariantEnsemble(seed_state, np.array(members), Ensemble(weights, members)))
        remaining = [
            s for s in remaining if all(abs(np.vdot(m, s)) <= CLUSTER_OVERLAP for m in members)
        ]
    return out


def minimizer_states(
    t: float,
    method: str = "geometric",
    restarts: int = EXHAUSTIVE_RESTARTS,
    seed: int = 42,
) -> np.ndarray:
    """Full set of entropy minimizers for the family member ``t``.

    ``method="geometric"`` collects the states orthogonal to dependent triples;
    ``method="numeric"`` runs the exhaustive multistart search.
    """
    povm = family_sic(t)
    if method == "geometric":
        return geometric_minimizers(povm).states
    if method == "numeric":
        return numeric_min(povm, restarts=restarts, seed=seed).states
    raise ValueError(f"unknown method {method!r}")


def covariant_ensembles(t: float, method: str = "geometric", **kwargs) -> list[CovariantEnsemble]:
    """Maximally informative Weyl-Heisenberg covariant ensembles for family member ``t``."""
    return group_into_orbits(minimizer_states(t, method=method, **kwargs))


# ---------------------------------------------------------------------------
# qubit cross-check


def tetrahedron_sic() -> SicPovm:
    """Qubit SIC from the Bloch direction (1,1,1)/sqrt(3) and the Pauli group."""
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]])
    z = np.diag([1.0 + 0j, -1.0])
    n = np.ones(3) / np.sqrt(3)
    rho = (np.eye(2) + n[0] * x + n[1] * y + n[2] * z) / 2
    fid = np.linalg.eigh(rho)[1][:, -1]
    paulis = [np.eye(2, dtype=complex), x, z, x @ z]
    return SicPovm(np.array([p @ fid for p in paulis]))


def qubit_bloch(psi) -> np.ndarray:
    psi = normalize(psi)
    rho = np.outer(psi, psi.conj())
    return np.array([2 * rho[0, 1].real, -2 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real])


# ---------------------------------------------------------------------------
# landscape


def landscape(povm: SicPovm, points_per_axis: int = 8) -> np.ndarray:
    """Entropy on a regular grid of the chart; rows ``(th1, th2, chi1, chi2, H)``.

    Polar angles cover ``[0, pi/2]`` and phases ``[0, 2 pi)``.
    """
    if povm.dim != 3:
        raise ValueError("landscape is defined for qutrit measurements")
    polar = np.linspace(0, np.pi / 2, points_per_axis)
    phase = np.linspace(0, 2 * np.pi, points_per_axis, endpoint=False)
    grid = np.array(list(itertools.product(polar, polar, phase, phase)))
    return np.column_stack([grid, entropy_at(grid, povm)])
