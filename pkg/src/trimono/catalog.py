"""Named example complexes."""
from __future__ import annotations

import re
from typing import Union

from .highdim import LabeledComplex, PureComplex, boundary_simplex, double_tetrahedron
from .monodromy import even_polygon_triangulation
from .platonic import ICOSAHEDRON_FACETS, OCTAHEDRON_FACETS, TETRAHEDRON_FACETS
from .surface import SimplicialSurface, build_surface

Fixture = Union[SimplicialSurface, PureComplex, LabeledComplex]


def seven_vertex_torus() -> SimplicialSurface:
    """Moebius' torus: every vertex has degree 6 and the 1-skeleton is K7."""
    tris = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    tris += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return build_surface(tris)


def six_vertex_projective_plane() -> SimplicialSurface:
    """The icosahedron modulo the antipodal map (antipodes sum to 13)."""
    return build_surface({tuple(sorted(min(v, 13 - v) for v in t)) for t in ICOSAHEDRON_FACETS})


def flat_torus(m: int, n: int) -> SimplicialSurface:
    """The m x n grid on a torus, each square cut along the same diagonal; needs m, n >= 3."""
    if m < 3 or n < 3:
        raise ValueError("flat tori need both sides at least 3 to be simplicial")

    def idx(i, j):
        return (i % m) * n + (j % n)

    tris = []
    for i in range(m):
        for j in range(n):
            tris.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            tris.append((idx(i, j), idx(i, j + 1), idx(i + 1, j + 1)))
    return build_surface(tris)


# Found by flips and triangle subdivisions from the 7-vertex torus and the
# 6-vertex projective plane; the only odd vertices are the listed adjacent pair.
TORUS_TWO_ODD = (
    (0, 2, 3), (0, 2, 6), (0, 3, 7), (0, 4, 5), (0, 4, 6), (0, 5, 7), (1, 2, 4), (1, 2, 6),
    (1, 3, 4), (1, 3, 7), (1, 5, 6), (1, 5, 7), (2, 3, 5), (2, 4, 5), (3, 4, 6), (3, 5, 6),
)
TORUS_TWO_ODD_PAIR = (3, 5)
PROJECTIVE_PLANE_TWO_ODD = (
    (1, 3, 4), (1, 3, 7), (1, 4, 6), (1, 5, 6), (1, 5, 8), (1, 7, 8), (2, 3, 6),
    (2, 3, 7), (2, 4, 5), (2, 4, 6), (2, 5, 8), (2, 7, 8), (3, 4, 5), (3, 5, 6),
)
PROJECTIVE_PLANE_TWO_ODD_PAIR = (4, 6)

BIPYRAMID = ((0, 2, 3), (0, 3, 4), (0, 2, 4), (1, 2, 3), (1, 3, 4), (1, 2, 4))

_FIXED: dict = {
    "tetrahedron": lambda: build_surface(TETRAHEDRON_FACETS),
    "octahedron": lambda: build_surface(OCTAHEDRON_FACETS),
    "icosahedron": lambda: build_surface(ICOSAHEDRON_FACETS),
    "bipyramid": lambda: build_surface(BIPYRAMID),
    "7-vertex-torus": seven_vertex_torus,
    "6-vertex-projective-plane": six_vertex_projective_plane,
    "torus-two-odd": lambda: build_surface(TORUS_TWO_ODD),
    "projective-plane-two-odd": lambda: build_surface(PROJECTIVE_PLANE_TWO_ODD),
    "boundary-4-simplex": lambda: boundary_simplex(3),
    "double-tetrahedron": double_tetrahedron,
}

_PATTERNS: list = [
    (re.compile(r"even-(\d+)-gon"), lambda m: even_polygon_triangulation(int(m.group(1)))),
    (re.compile(r"flat-torus-(\d+)x(\d+)"), lambda m: flat_torus(int(m.group(1)), int(m.group(2)))),
]


def builtin_names() -> list:
    return sorted(_FIXED) + ["even-<n>-gon", "flat-torus-<m>x<n>"]


def builtin(name: str) -> Fixture:
    if name in _FIXED:
        return _FIXED[name]()
    for pattern, make in _PATTERNS:
        m = pattern.fullmatch(name)
        if m:
            return make(m)
    raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(builtin_names())}")


def builtin_surface(name: str) -> SimplicialSurface:
    fx = builtin(name)
    if not isinstance(fx, SimplicialSurface):
        raise TypeError(f"builtin {name!r} is not a surface")
    return fx

