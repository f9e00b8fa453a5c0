"""JSON reading and byte-stable JSON writing."""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Union

import numpy as np

from .errors import InvalidComplex
from .highdim import PureComplex
from .surface import SimplicialSurface, build_surface

SIGNIFICANT = 12
# rounding noise below this is printed as 0
ZERO = 1e-12


def _plain(x: Any) -> Any:
    """Convert to JSON-ready values with floats cut to 12 significant digits."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise ValueError("non-finite float in output")
        if abs(x) < ZERO:
            return 0.0
        return float(f"{x:.{SIGNIFICANT}g}")
    return x


def dumps(obj: Any) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2) + "\n"


def parse_complex(data: dict) -> Union[SimplicialSurface, PureComplex]:
    if not isinstance(data, dict) or "facets" not in data:
        raise InvalidComplex('expected an object with a "facets" list')
    facets = [tuple(int(v) for v in f) for f in data["facets"]]
    dim = data.get("dim", len(facets[0]) - 1 if facets else 2)
    if dim == 2:
        return build_surface(facets)
    return PureComplex(facets, d=dim)


def read_complex(path: Union[str, Path]) -> Union[SimplicialSurface, PureComplex]:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise InvalidComplex(f"{path}: not valid JSON ({err})") from err
    return parse_complex(data)


def coloring_json(colors: dict, k: int = None) -> dict:
    out = {"colors": {str(v): c for v, c in sorted(colors.items())}}
    if k is not None:
        out["k"] = k
    return out
