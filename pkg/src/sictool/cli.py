"""Command-line front end: ``sictool <command> [options]``.

Exit status is 0 on success, 2 when a SIC verification or certificate check
fails, and 1 on usage errors (bad flags, unreadable files, unparseable ``--t``).
"""
from __future__ import annotations

import argparse
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import info_measures, minimizers, serialize
from .sic import SicPovm, family_sic, probabilities, verify_sic
from .wh_algebra import INDEX_PAIRS

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2
DEFAULT_SEED = 42
LN6 = math.log(6)

_T_PATTERN = re.compile(r"^\s*([0-9.]*)\s*\*?\s*pi\s*(?:/\s*([0-9.]+))?\s*$")


class UsageError(Exception):
    pass


def parse_t(text: str) -> float:
    """Parse a family parameter: a float, or ``pi/3``, ``2pi/9``, ``k*pi/n`` forms.

    The special values are evaluated as ``k * pi / n`` from the float ``pi``.
    """
    m = _T_PATTERN.match(text)
    try:
        if m:
            k = float(m.group(1)) if m.group(1) else 1.0
            n = float(m.group(2)) if m.group(2) else 1.0
            t = k * math.pi / n
        else:
            t = float(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid value for --t: {text!r}") from None
    if not math.isfinite(t):
        raise UsageError(f"invalid value for --t: {text!r}")
    return t


@dataclass
class RunConfig:
    command: str
    t: float = 0.0
    seed: int = DEFAULT_SEED
    restarts: int = minimizers.DEFAULT_RESTARTS
    tol: Optional[float] = None
    fmt: str = "text"
    output: Optional[str] = None
    file: Optional[str] = None
    points: int = 8
    t_given: bool = True


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed_type(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed_type, default=None,
                        help="master seed (default: $SICTOOL_SEED or 42)")
    common.add_argument("--restarts", type=_positive, default=minimizers.DEFAULT_RESTARTS)
    common.add_argument("--tol", type=float, default=None,
                        help="override the command's main tolerance")
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", default=None, help="write the report to this file")

    with_t = argparse.ArgumentParser(add_help=False)
    with_t.add_argument("--t", default="0", help="family parameter in radians, or 0, pi/3, 2pi/9")

    p = _Parser(prog="sictool", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("gen", parents=[common, with_t], help="emit the SIC for parameter t")
    v = sub.add_parser("verify", parents=[common, with_t], help="SIC verification report")
    v.add_argument("--file", help="state file (9 lines) or SIC JSON export to verify instead of the family")
    sub.add_parser("minimize", parents=[common, with_t], help="three-route entropy minimizer report")
    sub.add_parser("power", parents=[common, with_t], help="informational power and achieving ensembles")
    sub.add_parser("certify", parents=[common], help="Hermite interpolation certificate for ln 6")
    sub.add_parser("triples", parents=[common, with_t], help="linearly dependent triples of SIC vectors")
    ls = sub.add_parser("landscape", parents=[common, with_t], help="entropy over a chart grid, as CSV")
    ls.add_argument("--points", type=_positive, default=8, help="grid points per chart axis")
    mu = sub.add_parser("mubs", parents=[common], help="classify states from a file into bases/MUBs")
    mu.add_argument("--file", required=True)
    mu.add_argument("--t", default=None, help="also report entropies for this family member")
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    seed = ns.seed
    if seed is None:
        env = os.environ.get("SICTOOL_SEED")
        try:
            seed = _seed_type(env) if env else DEFAULT_SEED
        except (ValueError, argparse.ArgumentTypeError):
            raise UsageError(f"invalid SICTOOL_SEED value {env!r}") from None
    t_text = getattr(ns, "t", None)
    return RunConfig(
        command=ns.command,
        t=parse_t(t_text) if t_text is not None else 0.0,
        seed=seed,
        restarts=ns.restarts,
        tol=ns.tol,
        fmt=ns.fmt,
        output=ns.output,
        file=getattr(ns, "file", None),
        points=getattr(ns, "points", 8),
        t_given=t_text is not None,
    )


# ---------------------------------------------------------------------------
# helpers


def _label(j: int) -> str:
    p = INDEX_PAIRS[j]
    return f"{j + 1} ({p.p1},{p.p2})"


def _fmt_state(psi) -> str:
    return "(" + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in psi) + ")"


def _load_states(path: str) -> np.ndarray:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        if path.endswith(".json"):
            return serialize.sic_from_dict(json.loads(text)).vectors
        return serialize.read_states(io.StringIO(text))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from None


def _ensemble_dict(ens: info_measures.Ensemble) -> dict:
    return {
        "weights": [float(w) for w in ens.weights],
        "states": [serialize.state_to_json(s) for s in ens.states],
    }


# ---------------------------------------------------------------------------
# commands; each returns (exit status, structured report, text report)


def cmd_gen(cfg: RunConfig):
    povm = family_sic(cfg.t)
    lines = [f"SIC-POVM for t = {cfg.t:.17g}"]
    lines += [f"  {_label(j):>9}  {_fmt_state(v)}" for j, v in enumerate(povm.vectors)]
    return EXIT_OK, serialize.sic_to_dict(povm), "\n".join(lines)


def cmd_verify(cfg: RunConfig):
    tol = cfg.tol if cfg.tol is not None else 1e-10
    if cfg.file:
        vecs = _load_states(cfg.file)
        povm = SicPovm(vecs)
        source = cfg.file
    else:
        povm = family_sic(cfg.t)
        source = f"family t = {cfg.t:.17g}"
    if povm.size != povm.dim**2:
        rep = {"source": source, "passed": False,
               "reason": f"{povm.size} vectors in dimension {povm.dim}, expected {povm.dim ** 2}"}
        return EXIT_FAILED, rep, f"FAIL: {rep['reason']}"
    r = verify_sic(povm, tol)
    rep = {
        "source": source,
        "max_overlap_deviation": r.max_overlap_deviation,
        "max_identity_residual": r.max_identity_residual,
        "tolerance": tol,
        "passed": r.passed,
    }
    text = "\n".join([
        f"source: {source}",
        f"max |overlap|^2 deviation from 1/(d+1): {r.max_overlap_deviation:.3e}",
        f"max resolution-of-identity residual:    {r.max_identity_residual:.3e}",
        f"result: {'PASS' if r.passed else 'FAIL'} (tol {tol:g})",
    ])
    return (EXIT_OK if r.passed else EXIT_FAILED), rep, text


def _routes_agree(a: np.ndarray, b: np.ndarray, tol: float = 1e-6) -> bool:
    if len(a) != len(b):
        return False
    return all(max(abs(np.vdot(x, y)) for y in b) > 1 - tol for x in a)


def cmd_minimize(cfg: RunConfig):
    povm = family_sic(cfg.t)
    if not verify_sic(povm).passed:
        return EXIT_FAILED, {"t": cfg.t, "passed": False}, "FAIL: not a SIC-POVM"
    tol = cfg.tol if cfg.tol is not None else minimizers.DEPENDENCE_TOL
    num = minimizers.numeric_min(povm, restarts=cfg.restarts, seed=cfg.seed)
    geo = minimizers.geometric_minimizers(povm, tol)
    alg = minimizers.algebraic_minimizers(cfg.t)
    cls = minimizers.classify_minimizers(num.states, povm)
    orbits = minimizers.group_into_orbits(num.states)
    geo_in_num = all(max(abs(np.vdot(x, y)) for y in num.states) > 1 - 1e-6 for x in geo.states)
    alg_in_num = all(max(abs(np.vdot(x, y)) for y in num.states) > 1 - 1e-6 for x in alg.states)
    rep = {
        "t": cfg.t,
        "min_entropy_nats": num.min_entropy,
        "minimizers": [serialize.state_to_json(s) for s in num.states],
        "bases": cls.bases,
        "mub_pairs": [list(p) for p in cls.mub_pairs],
        "ensembles": [_ensemble_dict(o.ensemble) for o in orbits],
        "routes": {
            "numeric_count": len(num.states),
            "geometric_count": len(geo.states),
            "algebraic_count": len(alg.states),
            "geometric_matches_numeric": _routes_agree(geo.states, num.states),
            "geometric_subset_of_numeric": geo_in_num,
            "algebraic_subset_of_numeric": alg_in_num,
        },
        "restarts": cfg.restarts,
        "seed": cfg.seed,
    }
    lines = [
        f"t = {cfg.t:.17g}",
        f"min entropy {num.min_entropy:.6f} nats (ln 6 = {LN6:.6f})",
        f"{len(num.states)} minimizer state(s) from {cfg.restarts} restarts (seed {cfg.seed}):",
    ]
    for s, h in zip(num.states, num.entropies):
        lines.append(f"  {_fmt_state(s)}  H = {h:.12f}")
    lines.append(f"orthonormal bases: {len(cls.bases)}, MUB pairs: {len(cls.mub_pairs)}")
    lines.append(f"WH-covariant maximally informative ensembles: {len(orbits)}")
    lines.append(
        f"routes: geometric {len(geo.states)} (subset of numeric: {geo_in_num}), "
        f"algebraic {len(alg.states)} (subset of numeric: {alg_in_num})"
    )
    return EXIT_OK, rep, "\n".join(lines)


def cmd_power(cfg: RunConfig):
    povm = family_sic(cfg.t)
    if not verify_sic(povm).passed:
        return EXIT_FAILED, {"t": cfg.t, "passed": False}, "FAIL: not a SIC-POVM"
    res = info_measures.informational_power(povm, restarts=cfg.restarts, seed=cfg.seed)
    orbits = minimizers.covariant_ensembles(cfg.t)
    rep = {
        "t": cfg.t,
        "power_nats": res.value,
        "min_entropy_nats": res.min_entropy,
        "scope": "supremum over Weyl-Heisenberg covariant ensembles",
        "achieving_ensemble": _ensemble_dict(res.ensemble),
        "ensembles": [_ensemble_dict(o.ensemble) for o in orbits],
        "restarts": cfg.restarts,
        "seed": cfg.seed,
    }
    lines = [
        f"t = {cfg.t:.17g}",
        f"informational power (covariant ensembles): {res.value:.6f} nats (ln 3/2 = {math.log(1.5):.6f})",
        f"{len(orbits)} maximally informative WH-covariant ensemble(s):",
    ]
    for k, o in enumerate(orbits, 1):
        lines.append(f"  ensemble {k}: {len(o.orbit)} distinct states")
        for w, s in zip(o.ensemble.weights, o.ensemble.states):
            lines.append(f"    weight {w:.6f}  {_fmt_state(s)}")
    return EXIT_OK, rep, "\n".join(lines)


def cmd_certify(cfg: RunConfig):
    try:
        cert = info_measures.hermite_certificate()
    except info_measures.CertificateError as exc:
        return EXIT_FAILED, {"error": str(exc)}, f"FAIL: {exc}"
    rep = {
        "bound_nats": cert.bound,
        "coefficients": list(cert.coefficients),
        "grid_margin": cert.grid_margin,
        "power_nats": math.log(9) - cert.bound,
    }
    a0, a1, a2 = cert.coefficients
    text = "\n".join([
        f"p(x) = {a0:.12f} + {a1:.12f} x + {a2:.12f} x^2",
        f"certified entropy lower bound: {cert.bound:.12f} nats (ln 6 = {LN6:.12f})",
        f"min of h - p over {info_measures.GRID_POINTS} grid points: {cert.grid_margin:.3e}",
        f"implied informational power: {rep['power_nats']:.12f} nats",
    ])
    return EXIT_OK, rep, text


def cmd_triples(cfg: RunConfig):
    povm = family_sic(cfg.t)
    tol = cfg.tol if cfg.tol is not None else minimizers.DEPENDENCE_TOL
    trips = minimizers.dependent_triples(povm, tol)
    rep = {
        "t": cfg.t,
        "tolerance": tol,
        "count": len(trips),
        "triples": [
            {
                "indices": [list(p) for p in d.indices],
                "smallest_singular_value": d.smallest_singular_value,
                "orthogonal_state": serialize.state_to_json(d.orthogonal_state),
                "entropy_nats": info_measures.shannon_entropy(probabilities(d.orthogonal_state, povm)),
            }
            for d in trips
        ],
    }
    lines = [f"t = {cfg.t:.17g}: {len(trips)} dependent triple(s) (tol {tol:g})"]
    for d in trips:
        idx = " ".join(f"({p.p1},{p.p2})" for p in d.indices)
        lines.append(f"  {idx}  sv = {d.smallest_singular_value:.2e}  psi = {_fmt_state(d.orthogonal_state)}")
    return EXIT_OK, rep, "\n".join(lines)


def cmd_landscape(cfg: RunConfig):
    rows = minimizers.landscape(family_sic(cfg.t), cfg.points)
    csv_text = serialize.landscape_csv(rows)
    return EXIT_OK, None, csv_text.rstrip("\n")


def cmd_mubs(cfg: RunConfig):
    states = _load_states(cfg.file)
    povm = family_sic(cfg.t) if cfg.t_given else None
    if povm is not None and states.shape[1] != 3:
        raise UsageError("--t requires qutrit states")
    ms = minimizers.classify_minimizers(states, povm)
    rep = {
        "states": len(ms),
        "bases": ms.bases,
        "mub_pairs": [list(p) for p in ms.mub_pairs],
        "leftover": ms.leftover,
        "all_mutually_unbiased": ms.all_mutually_unbiased,
    }
    if povm is not None:
        rep["entropies_nats"] = [float(h) for h in ms.entropies]
    lines = [f"{len(ms)} state(s), {len(ms.bases)} orthonormal basis/bases"]
    for k, b in enumerate(ms.bases):
        lines.append(f"  basis {k}: states {b}")
    lines.append(f"MUB pairs: {ms.mub_pairs}")
    if ms.leftover:
        lines.append(f"not in any basis: {ms.leftover}")
    return EXIT_OK, rep, "\n".join(lines)


COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "minimize": cmd_minimize,
    "power": cmd_power,
    "certify": cmd_certify,
    "triples": cmd_triples,
    "landscape": cmd_landscape,
    "mubs": cmd_mubs,
}


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute one command and write its report; returns the exit status."""
    status, rep, text = COMMANDS[cfg.command](cfg)
    if cfg.command == "landscape" or (cfg.fmt == "csv" and rep is None):
        out = text + "\n"
    elif cfg.fmt == "json":
        out = serialize.dumps(rep)
    elif cfg.fmt == "csv":
        raise UsageError(f"csv output is only available for landscape, not {cfg.command}")
    else:
        out = text + "\n"
    if cfg.output:
        try:
            with open(cfg.output, "w") as fh:
                fh.write(out)
        except OSError as exc:
            raise UsageError(f"cannot write {cfg.output}: {exc.strerror}") from None
    else:
        (stdout or sys.stdout).write(out)
    return status


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    except UsageError as exc:
        print(f"sictool: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
