"""Version-1 JSON state files.

Layout::

    {"version": 1, "dims": [dA, dB], "matrix": [
    [[re, im], [re, im], ...],
    ...
    ]}

One matrix row per line. Floats use Python's shortest round-trip ``repr``,
so writing a parsed file reproduces it byte for byte.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .densmat import DEFAULT_TOL, BipartiteState
from .errors import ValidationError


class StateFileError(ValidationError):
    """The file parses as JSON but is not a valid version-1 state file."""


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_real(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def dumps(s: BipartiteState) -> str:
    rows = [json.dumps([[float(z.real), float(z.imag)] for z in row]) for row in s.rho]
    head = json.dumps({"version": 1, "dims": [s.dim_a, s.dim_b]})[:-1]
    return head + ', "matrix": [\n' + ",\n".join(rows) + "\n]}\n"


def loads(text: str, tol: float = DEFAULT_TOL) -> BipartiteState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise StateFileError("top level must be an object")
    version = doc.get("version")
    if not _is_int(version) or version != 1:
        raise StateFileError(f"unsupported version {version!r}")
    dims = doc.get("dims")
    if not (isinstance(dims, list) and len(dims) == 2 and all(_is_int(d) and d > 0 for d in dims)):
        raise StateFileError(f"dims must be two positive integers, got {dims!r}")
    n = dims[0] * dims[1]
    matrix = doc.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != n:
        raise StateFileError(f"matrix must have {n} rows")
    rho = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise StateFileError(f"row {i} must have {n} entries")
        for j, z in enumerate(row):
            if not (isinstance(z, list) and len(z) == 2 and all(_is_real(c) for c in z)):
                raise StateFileError(f"entry [{i}][{j}] must be a pair of finite numbers, got {z!r}")
            rho[i, j] = complex(z[0], z[1])
    return BipartiteState(rho, dims[0], dims[1], tol=tol)


def read(path, tol: float = DEFAULT_TOL) -> BipartiteState:
    return loads(Path(path).read_text(encoding="utf-8"), tol=tol)


def write(path, s: BipartiteState) -> None:
    Path(path).write_text(dumps(s), encoding="utf-8")
