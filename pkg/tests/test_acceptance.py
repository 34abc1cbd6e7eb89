"""Exit criteria, one test per criterion, each at its stated tolerance and time budget.

Every test records a one-line PASS/FAIL summary, printed at the end of the run.
"""
import itertools
import time

import numpy as np
import pytest

from sictool.clifford import (
    FAMILY_G,
    SL_MATRICES,
    canonical_order3,
    clifford_unitary,
    fixed_points,
    is_order3_matrix,
    weyl_eigenbasis,
)
from sictool.info_measures import (
    covariant_ensemble,
    hermite_certificate,
    informational_power,
    mutual_information,
    renyi_entropy,
    shannon_entropy,
    tsallis_entropy,
)
from sictool.minimizers import (
    algebraic_minimizers,
    classify_minimizers,
    dependent_triples,
    entropy_and_gradient,
    geometric_minimizers,
    group_into_orbits,
    numeric_min,
    qubit_bloch,
    tetrahedron_sic,
)
from sictool.sic import family_sic, probabilities, random_pure_state, verify_sic
from sictool.wh_algebra import INDEX_PAIRS, TAU, index_pair, max_abs, symplectic_form, weyl

from conftest import ACCEPTANCE_LINES, T_GRID

LN3, LN6, LN9 = np.log(3), np.log(6), np.log(9)


class Criterion:
    def __init__(self, number, name, budget_s):
        self.number, self.name, self.budget = number, name, budget_s
        self.details = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def note(self, text):
        self.details.append(text)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.budget
        detail = "; ".join(self.details)
        if exc_type is not None:
            detail = (detail + "; " if detail else "") + f"{exc_type.__name__}: {exc}"
        ACCEPTANCE_LINES.append(
            f"[{'PASS' if ok else 'FAIL'}] {self.number:>2}. {self.name}: {detail} "
            f"({elapsed:.2f}s, budget {self.budget:g}s)"
        )
        if exc_type is None:
            assert elapsed < self.budget, f"{self.name} took {elapsed:.1f}s > {self.budget}s"
        return False


def test_01_sic_family_validity():
    with Criterion(1, "SIC family validity", 1.0) as c:
        reps = [verify_sic(family_sic(t), tol=1e-10) for t in T_GRID]
        dev = max(r.max_overlap_deviation for r in reps)
        res = max(r.max_identity_residual for r in reps)
        c.note(f"max overlap dev {dev:.1e}, max effect-sum residual {res:.1e} (tol 1e-10)")
        assert len(reps) == 25
        assert dev < 1e-10 and res < 1e-10


def test_02_minimum_entropy():
    with Criterion(2, "Minimum entropy ln 6", 30.0) as c:
        num_err = 0.0
        tri_err = 0.0
        for t in T_GRID:
            povm = family_sic(t)
            num_err = max(num_err, abs(numeric_min(povm, restarts=200, seed=42).min_entropy - LN6))
            trips = dependent_triples(povm)
            assert trips
            for d in trips:
                tri_err = max(tri_err, abs(shannon_entropy(probabilities(d.orthogonal_state, povm)) - LN6))
        c.note(f"numeric |H-ln6| {num_err:.1e} (tol 1e-6), triple states {tri_err:.1e} (tol 1e-10)")
        assert num_err < 1e-6
        assert tri_err < 1e-10


def test_03_certificate():
    with Criterion(3, "Hermite certificate", 1.0) as c:
        cert = hermite_certificate()
        c.note(f"|bound-ln6| {abs(cert.bound - LN6):.1e} (tol 1e-12), grid margin {cert.grid_margin:.1e} (>= -1e-12)")
        assert abs(cert.bound - LN6) < 1e-12
        assert cert.grid_margin >= -1e-12


def test_04_algebraic_route():
    with Criterion(4, "Algebraic route at t = pi/5", 5.0) as c:
        t = np.pi / 5
        s = (0, 1)
        assert s in fixed_points(FAMILY_G)
        u = canonical_order3(FAMILY_G, (0, 0)).unitary
        comm = max_abs(u @ weyl(s) - weyl(s) @ u)
        basis = weyl_eigenbasis(s).T
        num = numeric_min(family_sic(t), restarts=200, seed=42).states
        assert len(num) == 3
        worst = min(max(abs(np.vdot(b, x)) for b in basis) for x in num)
        worst = min(worst, min(max(abs(np.vdot(b, x)) for x in num) for b in basis))
        alg = algebraic_minimizers(t).states
        c.note(f"min overlap numeric vs D_s eigenbasis {worst:.12f} (> 1-1e-6), [U, D_s] {comm:.1e} (tol 1e-12)")
        assert worst > 1 - 1e-6
        assert comm < 1e-12
        assert all(max(abs(np.vdot(a, x)) for x in num) > 1 - 1e-6 for a in alg)


def _special_case(t, restarts=10_000):
    povm = family_sic(t)
    res = numeric_min(povm, restarts=restarts, seed=42)
    ms = classify_minimizers(res.states, povm)
    cross = [
        np.abs(ms.states[ms.bases[i]].conj() @ ms.states[ms.bases[j]].T) ** 2
        for i, j in itertools.combinations(range(len(ms.bases)), 2)
    ]
    worst = max(np.max(np.abs(x - 1 / 3)) for x in cross) if cross else np.inf
    return res, ms, worst, group_into_orbits(res.states)


@pytest.mark.slow
def test_05_special_cases():
    with Criterion(5, "Special cases t = 0 and t = 2pi/9", 300.0) as c:
        res0, ms0, worst0, orb0 = _special_case(0.0)
        c.note(f"t=0: {len(res0.states)} minimizers, {len(ms0.bases)} bases, "
                f"max |cross-1/3| {worst0:.1e}, {len(orb0)} ensembles")
        assert len(res0.states) == 12
        assert len(ms0.bases) == 4 and ms0.all_mutually_unbiased and worst0 < 1e-9
        assert len(orb0) == 4

        t = 2 * np.pi / 9
        res1, ms1, worst1, orb1 = _special_case(t)
        trips = [set(d.indices) for d in dependent_triples(family_sic(t))]
        c.note(f"t=2pi/9: {len(res1.states)} minimizers, {len(ms1.bases)} bases, "
                f"max |cross-1/3| {worst1:.1e}, {len(orb1)} ensembles, {len(trips)} dependent triples")
        assert len(res1.states) == 12
        assert len(ms1.bases) == 4 and ms1.all_mutually_unbiased and worst1 < 1e-9
        assert len(orb1) == 2
        assert {(0, 0), (1, 2), (2, 0)} in trips


def test_06_informational_power():
    with Criterion(6, "Informational power ln(3/2)", 10.0) as c:
        err = max(abs(informational_power(family_sic(t), restarts=200, seed=42).value - (LN9 - LN6))
                  for t in T_GRID)
        povm = family_sic(np.pi / 5)
        rng = np.random.default_rng(2024)
        ident = 0.0
        for _ in range(100):
            psi = random_pure_state(rng)
            h = shannon_entropy(probabilities(psi, povm))
            ident = max(ident, abs(mutual_information(covariant_ensemble(psi), povm) - (LN9 - h)))
        c.note(f"|W - ln(3/2)| {err:.1e} (tol 1e-6), covariant identity {ident:.1e} (tol 1e-12)")
        assert err < 1e-6
        assert ident < 1e-12


def test_07_generalized_entropies():
    with Criterion(7, "Renyi/Tsallis at minimizers", 1.0) as c:
        worst = 0.0
        count = 0
        for t in T_GRID:
            povm = family_sic(t)
            states = list(geometric_minimizers(povm).states) + list(algebraic_minimizers(t).states)
            for s in states:
                p = probabilities(s, povm)
                for a in (0.5, 1.5, 2.0):
                    worst = max(worst, abs(renyi_entropy(p, a) - LN6),
                                abs(tsallis_entropy(p, a) - (6 ** (1 - a) - 1) / (1 - a)))
                count += 1
        c.note(f"{count} minimizer states, max deviation {worst:.1e} (tol 1e-9)")
        assert worst < 1e-9


def test_08_algebra_suite():
    with Criterion(8, "Algebra suite", 5.0) as c:
        comp = max(max_abs(weyl(p) @ weyl(q) - TAU ** symplectic_form(p, q) * weyl(index_pair(p) + q))
                   for p in INDEX_PAIRS for q in INDEX_PAIRS)
        adj = max(max_abs(weyl(p).conj().T - weyl(-index_pair(p))) for p in INDEX_PAIRS)
        cov = max(clifford_unitary(f, r).residual() for f in SL_MATRICES for r in INDEX_PAIRS)
        order3 = 0.0
        for f in SL_MATRICES:
            if not is_order3_matrix(f):
                continue
            for r in INDEX_PAIRS:
                u = canonical_order3(f, r).unitary
                order3 = max(order3, max_abs(u @ u @ u - np.eye(3)))
        c.note(f"composition {comp:.1e}, adjoint {adj:.1e}, covariance {cov:.1e}, order-3 {order3:.1e} (tol 1e-12)")
        assert max(comp, adj, cov, order3) < 1e-12


def test_09_qubit_cross_check():
    with Criterion(9, "Dimension-2 tetrahedron", 5.0) as c:
        tet = tetrahedron_sic()
        res = numeric_min(tet, restarts=200, seed=42)
        dirs = [qubit_bloch(v) for v in tet.vectors]
        anti = max(min(np.linalg.norm(qubit_bloch(s) + d) for d in dirs) for s in res.states)
        c.note(f"|H-ln3| {abs(res.min_entropy - LN3):.1e} (tol 1e-6), {len(res.states)} minimizers, "
                f"max distance to antipodes {anti:.1e}")
        assert abs(res.min_entropy - LN3) < 1e-6
        assert len(res.states) == 4
        assert anti < 1e-6


def test_10_gradient_sanity():
    with Criterion(10, "Gradient vs finite differences", 1.0) as c:
        povm = family_sic(np.pi / 5)
        rng = np.random.default_rng(10)
        x = np.column_stack([rng.uniform(0.05, 1.5, (100, 2)), rng.uniform(-np.pi, np.pi, (100, 2))])
        _, g = entropy_and_gradient(x, povm)
        h = 1e-6
        fd = np.empty_like(g)
        for k in range(4):
            e = np.zeros(4)
            e[k] = h
            fd[:, k] = (entropy_and_gradient(x + e, povm)[0] - entropy_and_gradient(x - e, povm)[0]) / (2 * h)
        rel = np.linalg.norm(g - fd, axis=1) / np.linalg.norm(fd, axis=1)
        c.note(f"max relative error {rel.max():.1e} over 100 points (tol 1e-5)")
        assert rel.max() < 1e-5
