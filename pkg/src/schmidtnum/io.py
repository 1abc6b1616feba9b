"""JSON file formats for density matrices and state vectors.

A density-matrix document is::

    {
      "local_dim": 3,
      "unnormalized": false,
      "matrix": [[[re, im], ...], ...],   # d^2 rows of d^2 [re, im] pairs
      "metadata": {"name": "..."}          # optional string map
    }

Matrices must be Hermitian within 1e-9 on load and trace-one within 1e-9
unless ``"unnormalized": true`` is present.  A state-vector document holds
``"vector": [[re, im], ...]`` of length d^2.  All numbers are written via
Python's shortest round-trip float representation, so a document reloads
bit-identically.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .errors import ValidationError
from .linalg import HERM_TOL, BipartiteOperator, hermiticity_residue

TRACE_TOL = 1e-9


def _require_finite(arr: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(arr.view(float))):
        raise ValidationError(f"{what} contains non-finite entries")


def _pairs_to_complex(rows, what: str) -> np.ndarray:
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{what} entries must be [real, imag] pairs") from exc
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ValidationError(f"{what} entries must be [real, imag] pairs")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} contains non-finite entries")
    return arr[..., 0] + 1j * arr[..., 1]


def _complex_to_pairs(arr: np.ndarray) -> list:
    stacked = np.stack([arr.real, arr.imag], axis=-1)
    return stacked.tolist()


def operator_to_dict(op: BipartiteOperator, metadata: dict | None = None) -> dict:
    """Serialize an operator to the density-matrix document structure."""
    _require_finite(np.ascontiguousarray(op.matrix), "matrix")
    doc = {
        "local_dim": op.local_dim,
        "unnormalized": not op.normalized,
        "matrix": _complex_to_pairs(op.matrix),
    }
    if metadata:
        doc["metadata"] = {str(k): str(v) for k, v in metadata.items()}
    return doc


def operator_from_dict(doc: dict) -> BipartiteOperator:
    """Parse and validate a density-matrix document."""
    if not isinstance(doc, dict):
        raise ValidationError("density-matrix document must be a JSON object")
    try:
        d = int(doc["local_dim"])
    except (KeyError, TypeError, ValueError):
        raise ValidationError("document must carry an integer 'local_dim'")
    M = _pairs_to_complex(doc.get("matrix"), "matrix")
    if M.ndim != 2 or M.shape != (d * d, d * d):
        raise ValidationError(
            f"matrix must be {d * d}x{d * d} for local_dim={d}, got {M.shape}"
        )
    res = hermiticity_residue(M)
    if res > HERM_TOL:
        raise ValidationError(
            f"matrix violates Hermiticity on load: residue {res:.3e} > {HERM_TOL:.0e}"
        )
    unnormalized = bool(doc.get("unnormalized", False))
    tr = np.trace(M).real
    if not unnormalized and abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(
            f"matrix violates trace-one invariant: trace {tr} "
            "(set 'unnormalized': true for non-state operators)"
        )
    return BipartiteOperator(M, d, normalized=not unnormalized)


def save_operator(path, op: BipartiteOperator, metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(operator_to_dict(op, metadata), fh, indent=2)
        fh.write("\n")


def load_operator(path) -> BipartiteOperator:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    return operator_from_dict(doc)


def load_state_vector(path) -> np.ndarray:
    """Load a state-vector document: {"vector": [[re, im], ...]}."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict) or "vector" not in doc:
        raise ValidationError("state-vector document must carry a 'vector' field")
    v = _pairs_to_complex(doc["vector"], "vector")
    if v.ndim != 1:
        raise ValidationError("vector must be a flat list of [real, imag] pairs")
    d = math.isqrt(v.size)
    if d * d != v.size:
        raise ValidationError(
            f"vector length {v.size} is not a perfect square d^2"
        )
    return v


def save_state_vector(path, vec) -> None:
    v = np.asarray(vec, dtype=complex)
    _require_finite(np.ascontiguousarray(v), "vector")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"vector": _complex_to_pairs(v)}, fh, indent=2)
        fh.write("\n")
