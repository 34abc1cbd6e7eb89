"""Byte-stable JSON/CSV output and the plain-text state file format.

Floats are written with 17 significant digits, complex numbers as ``[re, im]``
pairs, and mapping keys in insertion order, so equal inputs give identical
bytes.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import IO, Iterable

import numpy as np

from .sic import SicPovm, normalize


def fmt_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x}")
    if x == 0:
        x = 0.0  # drop the sign of negative zero
    return format(x, ".17g")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{fmt_float(obj.real)}, {fmt_float(obj.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [_encode(v, indent, level + 1) for v in obj]
        if all("\n" not in p for p in parts) and sum(len(p) for p in parts) < 100:
            return "[" + ", ".join(parts) + "]"
        return "[\n" + ",\n".join(pad + p for p in parts) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"


def state_to_json(psi) -> list:
    return [complex(z) for z in np.asarray(psi).ravel()]


def sic_to_dict(povm: SicPovm) -> dict:
    return {
        "t": None if povm.t is None else float(povm.t),
        "vectors": [state_to_json(v) for v in povm.vectors],
    }


def sic_from_dict(data: dict) -> SicPovm:
    vecs = np.array([[complex(re, im) for re, im in v] for v in data["vectors"]])
    # already-unit vectors are kept bit-exact so export/import round-trips
    norms = np.linalg.norm(vecs, axis=1)
    if np.any(np.abs(norms - 1) > 1e-14):
        vecs = np.array([normalize(v) for v in vecs])
    t = data.get("t")
    return SicPovm(vecs, None if t is None else float(t))


def read_states(fh: IO[str]) -> np.ndarray:
    """Parse one state per line as whitespace-separated ``re im`` pairs.

    Blank lines and ``#`` comments are skipped; states are normalized.
    """
    rows = []
    for lineno, line in enumerate(fh, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals = [float(v) for v in line.split()]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if len(vals) % 2 or not vals:
            raise ValueError(f"line {lineno}: expected re/im pairs, got {len(vals)} numbers")
        amps = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
        rows.append(normalize(amps))
    if not rows:
        raise ValueError("no states found")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("states have differing dimensions")
    return np.array(rows)


def write_states(states: Iterable, fh: IO[str]) -> None:
    for psi in states:
        fh.write(" ".join(f"{fmt_float(z.real)} {fmt_float(z.imag)}" for z in np.asarray(psi)) + "\n")


def landscape_csv(rows: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta1", "theta2", "chi1", "chi2", "entropy"])
    for row in rows:
        writer.writerow([fmt_float(v) for v in row])
    return buf.getvalue()
