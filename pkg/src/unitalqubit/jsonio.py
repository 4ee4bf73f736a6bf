"""JSON channel documents, the interchange format of the library and CLI.

A document is ``{"kind": "kraus"|"choi"|"pauli"|"bloch", "data": ...}``.
Complex numbers are two-element arrays ``[re, im]``, matrices are row-major
nested arrays, ``pauli`` data is the coefficient list (mu_I, mu_X, mu_Y,
mu_Z), and ``bloch`` data is ``{"linear": 3x3, "offset": [x, y, z]}``.
NaN/Infinity and wrong shapes are rejected with positional messages.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .channel import (
    BlochAffineForm,
    ChoiForm,
    KrausForm,
    PauliMixingForm,
    QubitChannel,
)
from .errors import ParseError

_KINDS = ("kraus", "choi", "pauli", "bloch")


def _reject_constant(token: str):
    raise ParseError(f"non-finite literal {token!r} is not allowed")


def _real(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{path}: expected a number, got {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value):
        raise ParseError(f"{path}: number must be finite")
    return value


def _complex_entry(value, path: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ParseError(f"{path}: expected a [re, im] pair")
    return complex(_real(value[0], f"{path}[0]"), _real(value[1], f"{path}[1]"))


def _complex_matrix(value, path: str, n: int) -> np.ndarray:
    if not isinstance(value, (list, tuple)) or len(value) != n:
        raise ParseError(f"{path}: expected {n} rows")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(value):
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise ParseError(f"{path}[{i}]: expected {n} entries")
        for j, entry in enumerate(row):
            out[i, j] = _complex_entry(entry, f"{path}[{i}][{j}]")
    return out


def _real_vector(value, path: str, n: int) -> np.ndarray:
    if not isinstance(value, (list, tuple)) or len(value) != n:
        raise ParseError(f"{path}: expected {n} numbers")
    return np.array([_real(entry, f"{path}[{i}]") for i, entry in enumerate(value)])


def _real_matrix(value, path: str, n: int) -> np.ndarray:
    if not isinstance(value, (list, tuple)) or len(value) != n:
        raise ParseError(f"{path}: expected {n} rows")
    return np.vstack([_real_vector(row, f"{path}[{i}]", n) for i, row in enumerate(value)])


def parse_channel_document(doc) -> QubitChannel:
    """Build a channel from a parsed JSON document (dict)."""
    if not isinstance(doc, dict):
        raise ParseError(f"document: expected an object, got {type(doc).__name__}")
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise ParseError(f"kind: expected one of {list(_KINDS)}, got {kind!r}")
    if "data" not in doc:
        raise ParseError("data: missing")
    data = doc["data"]
    if kind == "pauli":
        return QubitChannel(PauliMixingForm(_real_vector(data, "data", 4)))
    if kind == "choi":
        return QubitChannel(ChoiForm(_complex_matrix(data, "data", 4)))
    if kind == "kraus":
        if not isinstance(data, (list, tuple)) or not 1 <= len(data) <= 16:
            raise ParseError("data: expected a list of 1..16 Kraus operators")
        ops = [_complex_matrix(op, f"data[{k}]", 2) for k, op in enumerate(data)]
        return QubitChannel(KrausForm(ops))
    if not isinstance(data, dict):
        raise ParseError("data: expected an object with 'linear' and 'offset'")
    if "linear" not in data:
        raise ParseError("data.linear: missing")
    if "offset" not in data:
        raise ParseError("data.offset: missing")
    linear = _real_matrix(data["linear"], "data.linear", 3)
    offset = _real_vector(data["offset"], "data.offset", 3)
    return QubitChannel(BlochAffineForm(linear, offset))


def loads_channel(text: str) -> QubitChannel:
    """Parse a channel document from JSON text."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at position {exc.pos}: {exc.msg}") from exc
    return parse_channel_document(doc)


def _complex_out(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _complex_matrix_out(m: np.ndarray) -> list[list[list[float]]]:
    return [[_complex_out(entry) for entry in row] for row in np.asarray(m, dtype=complex)]


def _real_list(values) -> list[float]:
    return [float(x) for x in np.asarray(values, dtype=float).ravel()]


def channel_document(ch: QubitChannel) -> dict:
    """Serialize a channel to its JSON document (plain dict)."""
    rep = ch.representation
    if isinstance(rep, PauliMixingForm):
        return {"kind": "pauli", "data": _real_list(rep.coefficients)}
    if isinstance(rep, ChoiForm):
        return {"kind": "choi", "data": _complex_matrix_out(rep.matrix)}
    if isinstance(rep, KrausForm):
        return {"kind": "kraus", "data": [_complex_matrix_out(op) for op in rep.operators]}
    return {
        "kind": "bloch",
        "data": {
            "linear": [_real_list(row) for row in rep.linear],
            "offset": _real_list(rep.offset),
        },
    }


def decomposition_document(weights, unitaries, residual: float) -> dict:
    """Serialize a unitary mixture as ``{"weights", "unitaries", "residual"}``."""
    return {
        "weights": _real_list(weights),
        "unitaries": [_complex_matrix_out(op) for op in unitaries],
        "residual": float(residual),
    }


def dumps_document(doc: dict) -> str:
    """Canonical JSON rendering: sorted keys, two-space indent, newline end."""
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"
