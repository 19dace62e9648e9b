"""JSON encoding of simulator values. Complex arrays are written as [[re, im], ...]."""
from typing import Any

import numpy as np
import orjson

from core.density import DensityMatrix
from core.state import StateVector

JSON_OPTIONS = orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY


def complex_to_pairs(values) -> list:
    arr = np.asarray(values, dtype=complex)
    if arr.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in arr]
    return [complex_to_pairs(row) for row in arr]


def pairs_to_complex(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def _default(obj: Any):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray) and np.iscomplexobj(obj):
        return complex_to_pairs(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(payload: Any) -> bytes:
    """Deterministic JSON bytes: sorted keys, two-space indent, trailing newline."""
    return orjson.dumps(payload, default=_default, option=JSON_OPTIONS) + b"\n"


def loads(data) -> Any:
    return orjson.loads(data)


def state_to_json(psi: StateVector) -> dict:
    return {"dims": [psi.local_dim] * psi.num_sites, "amplitudes": complex_to_pairs(psi.amplitudes)}


def state_from_json(data: dict) -> StateVector:
    dims = data["dims"]
    return StateVector(dims[0], len(dims), pairs_to_complex(data["amplitudes"]))


def density_to_json(rho: DensityMatrix, dims=None) -> dict:
    return {"dims": list(dims) if dims else [rho.dim], "entries": complex_to_pairs(rho.entries)}
