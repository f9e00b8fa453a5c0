"""
Rolling a platonic solid over a triangulated surface.

For k = 3, 4, 5 the colors are the vertices of the tetrahedron, octahedron
or icosahedron.  A colored triangle is a :class:`GermFlag`: a triangle of the
surface, a triangle of the target and a vertex bijection between them.
Rolling across an edge is forced, so the flags reachable from one base flag
determine both the monodromy image (a subgroup of the target's automorphism
group) and whether a proper platonic coloring exists.

The k = 2 case (three colors) lives in :mod:`trimono.monodromy`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .errors import BoundaryEdge, EdgeNotInTriangle, SurfaceError, TheoremViolation, UnsupportedK
from .monodromy import coloring_monodromy_image, fisk_check, is_cyclic, is_sphere
from .surface import (
    SimplicialSurface,
    build_surface,
    edge,
    extend_flag,
    isomorphisms,
    third_vertex,
    triangle_edges,
)

TETRAHEDRON_FACETS = ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))

# opposite faces of a die: 1-6, 2-5, 3-4, so antipodes sum to 7
OCTAHEDRON_FACETS = tuple(sorted((a, b, c) for a in (1, 6) for b in (2, 5) for c in (3, 4)))

# vertices of (0, ±1, ±phi) and its cyclic shifts; antipodes sum to 13
ICOSAHEDRON_FACETS = (
    (1, 2, 3), (1, 2, 8), (1, 3, 9), (1, 6, 8), (1, 6, 9),
    (2, 3, 7), (2, 4, 7), (2, 4, 8), (3, 5, 7), (3, 5, 9),
    (4, 7, 12), (4, 8, 10), (4, 10, 12), (5, 7, 12), (5, 9, 11),
    (5, 11, 12), (6, 8, 10), (6, 9, 11), (6, 10, 11), (10, 11, 12),
)  # fmt: skip

_FACETS = {3: TETRAHEDRON_FACETS, 4: OCTAHEDRON_FACETS, 5: ICOSAHEDRON_FACETS}
_ANTIPODE_SUM = {4: 7, 5: 13}


@dataclass(frozen=True)
class PlatonicTarget:
    k: int
    target: SimplicialSurface

    def antipode(self, c: int) -> Optional[int]:
        total = _ANTIPODE_SUM.get(self.k)
        return None if total is None else total - c


_TARGETS: dict = {}


def platonic_target(k: int) -> PlatonicTarget:
    if k not in _FACETS:
        raise UnsupportedK(f"platonic targets exist for k = 3, 4, 5, not {k}")
    if k not in _TARGETS:
        _TARGETS[k] = PlatonicTarget(k, build_surface(_FACETS[k]))
    return _TARGETS[k]


def _target_surface(k_or_target) -> SimplicialSurface:
    if isinstance(k_or_target, SimplicialSurface):
        return k_or_target
    if isinstance(k_or_target, PlatonicTarget):
        return k_or_target.target
    return platonic_target(k_or_target).target


# -- automorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class TargetAutomorphism:
    """A vertex permutation stored as sorted ``(vertex, image)`` pairs."""

    pairs: tuple

    @classmethod
    def from_mapping(cls, mapping: Mapping) -> "TargetAutomorphism":
        return cls(tuple(sorted(mapping.items())))

    @property
    def mapping(self) -> dict:
        return dict(self.pairs)

    def __call__(self, v):
        return self.mapping[v]

    def compose(self, other: "TargetAutomorphism") -> "TargetAutomorphism":
        """``self o other``."""
        mine = self.mapping
        return TargetAutomorphism(tuple((v, mine[w]) for v, w in other.pairs))

    def inverse(self) -> "TargetAutomorphism":
        return TargetAutomorphism(tuple(sorted((w, v) for v, w in self.pairs)))

    @property
    def is_identity(self) -> bool:
        return all(v == w for v, w in self.pairs)

    def fixed_points(self) -> frozenset:
        return frozenset(v for v, w in self.pairs if v == w)


def automorphism_group(s: SimplicialSurface) -> frozenset:
    """All automorphisms of a connected surface, found by flag propagation."""
    return frozenset(TargetAutomorphism.from_mapping(iso.vertex_bijection) for iso in isomorphisms(s, s))


def acts_simply_transitively_on_flags(s: SimplicialSurface, group) -> bool:
    base = s.triangles[0]
    images = set()
    for g in group:
        m = g.mapping
        images.add(tuple(m[x] for x in base))
    return len(images) == len(group) == 6 * s.num_triangles


# -- flags and rolling -----------------------------------------------------


@dataclass(frozen=True)
class GermFlag:
    """Triangle ``sigma`` of one surface mapped bijectively onto ``sigma_prime`` of another."""

    sigma: tuple
    sigma_prime: tuple
    images: tuple  # images of sigma's vertices, in sigma's (sorted) order

    @classmethod
    def make(cls, mapping: Mapping) -> "GermFlag":
        sigma = tuple(sorted(mapping))
        images = tuple(mapping[x] for x in sigma)
        if len(set(images)) != 3:
            raise ValueError(f"{dict(mapping)} is not a bijection")
        return cls(sigma, tuple(sorted(images)), images)

    @property
    def phi(self) -> dict:
        return dict(zip(self.sigma, self.images))


def roll_step(s: SimplicialSurface, target, flag: GermFlag, e) -> GermFlag:
    """Roll ``flag`` across edge ``e`` of ``flag.sigma``; the result agrees with it on ``e``."""
    t = _target_surface(target)
    e = edge(*e)
    if e[0] not in flag.sigma or e[1] not in flag.sigma or e[0] == e[1]:
        raise EdgeNotInTriangle(f"{e} is not an edge of {flag.sigma}")
    nxt = s.adjacent_triangle(flag.sigma, e)
    if nxt is None:
        raise BoundaryEdge(f"{e} is a boundary edge")
    phi = flag.phi
    e_img = edge(phi[e[0]], phi[e[1]])
    nxt_img = t.adjacent_triangle(flag.sigma_prime, e_img)
    if nxt_img is None:
        raise BoundaryEdge(f"{e_img} is a boundary edge of the target")
    return GermFlag.make(
        {e[0]: phi[e[0]], e[1]: phi[e[1]], third_vertex(nxt, e): third_vertex(nxt_img, e_img)}
    )


def roll_along(s: SimplicialSurface, target, flag: GermFlag, strip) -> GermFlag:
    """Roll through consecutive triangles of ``strip`` (which starts at ``flag.sigma``)."""
    strip = [tuple(sorted(x)) for x in strip]
    if strip[0] != flag.sigma:
        raise SurfaceError("strip must start at the flag's triangle")
    for t1, t2 in zip(strip, strip[1:]):
        shared = tuple(sorted(set(t1) & set(t2)))
        if len(shared) != 2:
            raise SurfaceError(f"{t1} and {t2} do not share an edge")
        flag = roll_step(s, target, flag, shared)
    return flag


def flag_orbit(s: SimplicialSurface, target, base: GermFlag) -> dict:
    """Flags reachable from ``base`` by rolling, grouped by triangle of ``s``."""
    t = _target_surface(target)
    reached = {base.sigma: {base}}
    queue = deque([base])
    while queue:
        f = queue.popleft()
        for e in triangle_edges(f.sigma):
            if s.adjacent_triangle(f.sigma, e) is None:
                continue
            g = roll_step(s, t, f, e)
            bucket = reached.setdefault(g.sigma, set())
            if g not in bucket:
                bucket.add(g)
                queue.append(g)
    return reached


def default_flag(s: SimplicialSurface, target) -> GermFlag:
    t = _target_surface(target)
    return GermFlag(s.triangles[0], t.triangles[0], t.triangles[0])


def _automorphism_between(t: SimplicialSurface, f0: GermFlag, f1: GermFlag) -> TargetAutomorphism:
    """The automorphism of ``t`` sending ``f0``'s coloring of a triangle to ``f1``'s."""
    m = extend_flag(t, t, f0.images, f1.images)
    if m is None or len(m) != t.num_vertices:
        raise TheoremViolation(f"{f0} -> {f1} does not extend to an automorphism")
    return TargetAutomorphism.from_mapping(m)


def platonic_monodromy_image(s: SimplicialSurface, k, base: Optional[GermFlag] = None) -> frozenset:
    """Automorphisms ``phi1 o phi0^-1`` over all closed strips at the base flag."""
    s.require_connected()
    t = _target_surface(k)
    base = base or default_flag(s, t)
    flags = flag_orbit(s, t, base)[base.sigma]
    image = frozenset(_automorphism_between(t, base, f) for f in flags)
    if not _closed(image):
        raise TheoremViolation("platonic monodromy image is not a subgroup")
    return image


def _closed(group) -> bool:
    return all(g.compose(h) in group for g in group for h in group)


def is_cyclic_group(group) -> bool:
    return is_cyclic(group, compose=lambda g, h: g.compose(h))


def loop_automorphism(s: SimplicialSurface, k, v: int, flag: Optional[GermFlag] = None) -> TargetAutomorphism:
    """Automorphism from rolling once around interior vertex ``v``."""
    t = _target_surface(k)
    ring = list(s.triangles_around(v))
    if not s.is_interior(v):
        raise SurfaceError(f"vertex {v} is on the boundary")
    if flag is None:
        flag = GermFlag(ring[0], t.triangles[0], tuple(sorted(t.triangles[0])))
    i = ring.index(flag.sigma)
    ring = ring[i:] + ring[:i]
    end = roll_along(s, t, flag, ring + ring[:1])
    return _automorphism_between(t, flag, end)


# -- colorings -------------------------------------------------------------


def is_proper_platonic_coloring(s: SimplicialSurface, target, coloring: Mapping) -> bool:
    """Check the triangle condition and the adjacent-pair condition directly."""
    t = _target_surface(target)
    for tri in s.triangles:
        img = tuple(sorted(coloring[x] for x in tri))
        if len(set(img)) != 3 or img not in t:
            return False
    for e in s.edges:
        pair = s.edge_triangles(e)
        if len(pair) != 2:
            continue
        a = third_vertex(pair[0], e)
        b = third_vertex(pair[1], e)
        ea, eb = coloring[e[0]], coloring[e[1]]
        if len({ea, eb, coloring[a], coloring[b]}) != 4:
            return False
        if t.adjacent_triangle(tuple(sorted((ea, eb, coloring[a]))), (ea, eb)) != tuple(
            sorted((ea, eb, coloring[b]))
        ):
            return False
    return True


def platonic_coloring(s: SimplicialSurface, k) -> Optional[dict]:
    """A proper platonic coloring, or None when the monodromy is nontrivial."""
    s.require_connected()
    t = _target_surface(k)
    orbit = flag_orbit(s, t, default_flag(s, t))
    coloring: dict = {}
    for flags in orbit.values():
        if len(flags) != 1:
            return None
        (f,) = flags
        for x, y in zip(f.sigma, f.images):
            if coloring.setdefault(x, y) != y:
                return None
    if not is_proper_platonic_coloring(s, t, coloring):
        raise TheoremViolation("assembled platonic coloring is not proper")
    return coloring


# -- theorem checks ----------------------------------------------------------


def exceptional_vertices(s: SimplicialSurface, k: int) -> tuple:
    return tuple(sorted(v for v in s.vertices if s.is_interior(v) and s.degree(v) % k))


def across_an_edge(s: SimplicialSurface, a: int, b: int) -> Optional[tuple]:
    """An edge whose two triangles have ``a`` and ``b`` as third vertices, if any."""
    for e in s.edges:
        pair = s.edge_triangles(e)
        if len(pair) == 2 and {third_vertex(pair[0], e), third_vertex(pair[1], e)} == {a, b}:
            return e
    return None


def _shortest_strips(s: SimplicialSurface, a: int, b: int, limit: int) -> list:
    """Shortest dual-graph paths from a triangle at ``a`` to a triangle at ``b``."""
    sources = set(s.vertex_triangles(a))
    targets = set(s.vertex_triangles(b))
    dist = {t: 0 for t in sources}
    preds: dict = {t: [] for t in sources}
    queue = deque(sorted(sources))
    while queue:
        t = queue.popleft()
        for _, o in s.triangle_neighbors(t):
            if o not in dist:
                dist[o] = dist[t] + 1
                preds[o] = [t]
                queue.append(o)
            elif dist[o] == dist[t] + 1:
                preds[o].append(t)
    best = min(dist[t] for t in targets)
    paths = []

    def back(t, tail):
        if len(paths) >= limit:
            return
        if not preds[t]:
            paths.append([t] + tail)
            return
        for p in sorted(preds[t]):
            back(p, [t] + tail)

    for t in sorted(x for x in targets if dist[x] == best):
        back(t, [])
    return paths


@dataclass
class KVertReport:
    k: int
    exceptional: tuple
    applies: bool
    adjacent: Optional[bool] = None
    image_cyclic: Optional[bool] = None
    across_edge: Optional[tuple] = None
    rolled_colors: dict = field(default_factory=dict)

    @property
    def theorem_ok(self) -> bool:
        return not self.applies or (not self.adjacent and self.image_cyclic is not False)

    @property
    def remark_across_edge_ok(self) -> bool:
        return not self.applies or self.k == 2 or self.across_edge is None

    @property
    def remark_rolling_ok(self) -> bool:
        return not self.applies or self.k == 2 or set(self.rolled_colors) <= {"same"}


def check_kvert(s: SimplicialSurface, k: int, strip_limit: int = 64, strict_remark: bool = False) -> KVertReport:
    """Check that two exceptional vertices (degree not divisible by k) are never adjacent.

    Raises :class:`TheoremViolation` on adjacency or a non-cyclic monodromy
    image.  The stronger claims for k > 2 (not across an edge; rolling from one
    exceptional vertex to the other gives it the first one's color) are
    recorded in the report, and only raise when ``strict_remark`` is set.
    ``rolled_colors`` counts the outcomes ``same``, ``antipodal`` or ``other``
    over shortest strips between the two vertices.
    """
    if not is_sphere(s):
        raise SurfaceError("check_kvert requires a triangulated 2-sphere")
    exc = exceptional_vertices(s, k)
    report = KVertReport(k=k, exceptional=exc, applies=len(exc) == 2)
    if not report.applies:
        return report
    a, b = exc
    report.adjacent = s.has_edge(a, b)
    if k == 2:
        fisk = fisk_check(s)
        report.image_cyclic = fisk.image_cyclic
    else:
        report.image_cyclic = is_cyclic_group(platonic_monodromy_image(s, k))
        report.across_edge = across_an_edge(s, a, b)
        pt = platonic_target(k)
        t = pt.target
        for strip in _shortest_strips(s, a, b, strip_limit):
            start = GermFlag(strip[0], t.triangles[0], t.triangles[0])
            end = roll_along(s, t, start, strip)
            ca, cb = start.phi[a], end.phi[b]
            kind = "same" if ca == cb else "antipodal" if pt.antipode(ca) == cb else "other"
            report.rolled_colors[kind] = report.rolled_colors.get(kind, 0) + 1
    if not report.theorem_ok:
        raise TheoremViolation(f"k={k}: exceptional vertices {exc} violate the theorem: {report}")
    if strict_remark and not (report.remark_across_edge_ok and report.remark_rolling_ok):
        raise TheoremViolation(f"k={k}: exceptional vertices {exc} contradict the remark: {report}")
    return report
