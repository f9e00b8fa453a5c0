"""
Three-coloring monodromy of triangulated surfaces.

A proper coloring of one triangle extends uniquely across each edge: the two
shared vertices keep their colors and the third vertex takes the remaining
one.  Extending around closed strips permutes the colors of the base triangle;
the set of permutations obtained is the monodromy image, a subgroup of Sym3.

The image is computed as the orbit of the colored base triangle under a
breadth-first search over (triangle, coloring) states.  Boundary edges are
never crossed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Mapping, Optional, Sequence

from .errors import (
    DisconnectedInput,
    NotAStrip,
    NotDivisibleBy3,
    SurfaceError,
    TheoremViolation,
)
from .surface import (
    SimplicialSurface,
    boundary_cycles,
    build_surface,
    edge,
    euler_characteristic,
    third_vertex,
    triangle_edges,
)

COLORS = (1, 2, 3)
IDENTITY = (1, 2, 3)
SYM3 = frozenset(permutations(COLORS))


# -- Sym3 ------------------------------------------------------------------


def perm_compose(p, q):
    """``p o q``: apply ``q`` first."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def perm_inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p, start=1):
        inv[x - 1] = i
    return tuple(inv)


def is_subgroup(perms) -> bool:
    perms = set(perms)
    if not perms:
        return False
    return all(perm_compose(p, q) in perms for p in perms for q in perms) and all(
        perm_inverse(p) in perms for p in perms
    )


def is_cyclic(perms, compose=perm_compose, identity=None) -> bool:
    """True when some element generates the whole (finite) group ``perms``."""
    perms = set(perms)
    for g in perms:
        seen = {g}
        x = compose(g, g)
        while x not in seen:
            seen.add(x)
            x = compose(x, g)
        if seen == perms:
            return True
    return False


def sym3_name(perms) -> str:
    perms = frozenset(perms)
    if perms == {IDENTITY}:
        return "trivial"
    if len(perms) == 6:
        return "Sym3"
    if len(perms) == 3:
        return "C3"
    if len(perms) == 2:
        return "C2"
    raise ValueError(f"{sorted(perms)} is not a subgroup of Sym3")


# -- strips ----------------------------------------------------------------


def _colors_tuple(t, coloring: Mapping) -> tuple:
    try:
        cs = tuple(coloring[x] for x in t)
    except KeyError as exc:
        raise SurfaceError(f"coloring misses vertex {exc.args[0]} of {t}") from None
    if sorted(cs) != list(COLORS):
        raise SurfaceError(f"coloring {dict(zip(t, cs))} is not a bijection onto 1,2,3")
    return cs


def cross_edge(t1, colors1, t2) -> tuple:
    """Colors of ``t2`` (aligned with its sorted vertices) after crossing from ``t1``."""
    col = dict(zip(t1, colors1))
    shared = [x for x in t2 if x in col]
    missing = 6 - col[shared[0]] - col[shared[1]]
    return tuple(col[x] if x in col else missing for x in t2)


def extend_along_strip(
    s: SimplicialSurface, start_coloring: Mapping, strip: Sequence[Sequence[int]]
) -> dict:
    """Carry a coloring of ``strip[0]`` along the strip; return the last triangle's coloring."""
    strip = [tuple(sorted(t)) for t in strip]
    if not strip:
        raise NotAStrip("empty strip")
    for t in strip:
        if t not in s:
            raise NotAStrip(f"{t} is not a triangle of the surface")
    colors = _colors_tuple(strip[0], start_coloring)
    for t1, t2 in zip(strip, strip[1:]):
        shared = set(t1) & set(t2)
        if len(shared) != 2 or t1 == t2:
            raise NotAStrip(f"{t1} and {t2} do not share an edge")
        colors = cross_edge(t1, colors, t2)
    return dict(zip(strip[-1], colors))


def vertex_loop(s: SimplicialSurface, v: int, start=None) -> list:
    """Closed strip going once around interior vertex ``v``, from ``start`` back to it."""
    if not s.is_interior(v):
        raise SurfaceError(f"vertex {v} is on the boundary")
    ring = list(s.triangles_around(v))
    if start is not None:
        start = tuple(sorted(start))
        i = ring.index(start)
        ring = ring[i:] + ring[:i]
    return ring + ring[:1]


def loop_recoloring(s: SimplicialSurface, v: int, start) -> tuple:
    """Permutation of {1,2,3} produced by going once around ``v`` from ``start``."""
    start = tuple(sorted(start))
    end = extend_along_strip(s, dict(zip(start, COLORS)), vertex_loop(s, v, start))
    return tuple(end[x] for x in start)


# -- monodromy -------------------------------------------------------------


def colored_orbit(s: SimplicialSurface, base, base_colors=COLORS) -> dict:
    """All colorings reachable on each triangle from ``base`` colored by ``base_colors``."""
    base = tuple(sorted(base))
    reached = {base: {tuple(base_colors)}}
    queue = deque([(base, tuple(base_colors))])
    while queue:
        t, cs = queue.popleft()
        for _, other in s.triangle_neighbors(t):
            ocs = cross_edge(t, cs, other)
            bucket = reached.setdefault(other, set())
            if ocs not in bucket:
                bucket.add(ocs)
                queue.append((other, ocs))
    return reached


def default_base(s: SimplicialSurface):
    return s.triangles[0]


def coloring_monodromy_image(s: SimplicialSurface, base=None) -> frozenset:
    """Monodromy image as a set of permutations ``(p(1), p(2), p(3))``.

    ``p`` sends the color a vertex of ``base`` had before a closed strip to the
    color it has afterwards, starting from the coloring 1, 2, 3 of the sorted base.
    """
    s.require_connected()
    base = tuple(sorted(base)) if base is not None else default_base(s)
    image = frozenset(colored_orbit(s, base)[base])
    if not is_subgroup(image):
        raise TheoremViolation(f"monodromy image {sorted(image)} is not a subgroup")
    return image


def vertex_coloring(s: SimplicialSurface) -> Optional[dict]:
    """A proper 3-coloring of the vertices, or None.

    Propagates vertex colors triangle by triangle and stops at the first
    conflict; this does not go through the monodromy orbit.
    """
    s.require_connected()
    t0 = s.triangles[0]
    color = dict(zip(t0, COLORS))
    queue = deque([t0])
    done = {t0}
    while queue:
        t = queue.popleft()
        for e, other in s.triangle_neighbors(t):
            w = third_vertex(other, e)
            want = 6 - color[e[0]] - color[e[1]]
            have = color.setdefault(w, want)
            if have != want:
                return None
            if other not in done:
                done.add(other)
                queue.append(other)
    for t in s.triangles:
        if sorted(color[x] for x in t) != list(COLORS):
            return None
    return color


def is_proper_coloring(s: SimplicialSurface, coloring: Mapping) -> bool:
    return all(sorted(coloring[x] for x in t) == list(COLORS) for t in s.triangles)


def odd_vertices(s: SimplicialSurface) -> frozenset:
    return frozenset(v for v in s.vertices if s.is_interior(v) and s.degree(v) % 2)


def is_sphere(s: SimplicialSurface) -> bool:
    return bool(s.triangles) and s.is_closed and s.is_connected and euler_characteristic(s) == 2


@dataclass
class FiskReport:
    odd: tuple
    applies: bool
    adjacent: Optional[bool] = None
    image: Optional[str] = None
    image_cyclic: Optional[bool] = None
    loops: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.applies or (not self.adjacent and self.image_cyclic)


def fisk_check(s: SimplicialSurface) -> FiskReport:
    """Two odd vertices on a sphere are never adjacent; the image is then cyclic.

    On non-spheres the report is returned without asserting anything.
    """
    odd = tuple(sorted(odd_vertices(s)))
    report = FiskReport(odd=odd, applies=len(odd) == 2)
    if not report.applies:
        return report
    a, b = odd
    report.adjacent = s.has_edge(a, b)
    image = coloring_monodromy_image(s)
    report.image = sym3_name(image)
    report.image_cyclic = is_cyclic(image)
    if report.adjacent:
        t = next(t for t in s.triangles if a in t and b in t)
        report.loops = {a: loop_recoloring(s, a, t), b: loop_recoloring(s, b, t)}
    if is_sphere(s) and not report.ok:
        raise TheoremViolation(f"sphere with two odd vertices {odd}: {report}")
    return report


# -- even polygons ---------------------------------------------------------


def _glue_trapezoid(triangles, u, v, fresh):
    """Glue a three-triangle strip to boundary edge ``u v``; adds 2 edges at ``u`` and ``v``."""
    b0, b1, b2 = fresh, fresh + 1, fresh + 2
    triangles.extend([(b0, b1, u), (b1, v, u), (b1, b2, v)])


def even_polygon_triangulation(n: int) -> SimplicialSurface:
    """A triangulated n-gon whose vertices all have even degree (3 must divide n).

    Starts from one triangle (every corner has degree 2) and repeatedly glues a
    trapezoid of three triangles to a boundary edge, which adds 3 corners and
    keeps every degree even.
    """
    if n < 3:
        raise ValueError("a polygon needs at least 3 sides")
    if n % 3:
        raise NotDivisibleBy3(f"no even triangulation of a {n}-gon exists")
    triangles = [(0, 1, 2)]
    fresh = 3
    while fresh < n:
        s = build_surface(triangles)
        (cycle,) = boundary_cycles(s)
        pairs = list(zip(cycle, cycle[1:] + cycle[:1]))
        u, v = min(pairs, key=lambda p: (s.degree(p[0]) + s.degree(p[1]), edge(*p)))
        _glue_trapezoid(triangles, u, v, fresh)
        fresh += 3
    return build_surface(triangles)


def _is_disk(s: SimplicialSurface) -> bool:
    return s.is_connected and euler_characteristic(s) == 1 and len(boundary_cycles(s)) == 1


def boundary_color_period(s: SimplicialSurface, coloring: Optional[Mapping] = None) -> tuple:
    """Boundary color sequence of an even colorable disk; it cycles through 1, 2, 3.

    Returns the sequence.  Raises :class:`TheoremViolation` if the colors do not
    advance by the same nonzero step around the whole boundary.
    """
    if not _is_disk(s):
        raise SurfaceError("boundary_color_period requires a triangulated disk")
    (cycle,) = boundary_cycles(s)
    if any(s.degree(v) % 2 for v in cycle):
        raise SurfaceError("a boundary vertex has odd degree")
    if coloring is None:
        coloring = vertex_coloring(s)
        if coloring is None:
            raise SurfaceError("disk is not 3-colorable")
    seq = tuple(coloring[v] for v in cycle)
    steps = {(seq[(i + 1) % len(seq)] - seq[i]) % 3 for i in range(len(seq))}
    if len(steps) != 1 or 0 in steps or len(seq) % 3:
        raise TheoremViolation(f"boundary colors {seq} do not repeat with period 3")
    return seq


def polygon_parity_census(n: int, max_interior: int = 3) -> dict:
    """Count triangulated n-gons by vertex-degree parities, exhaustively.

    Returns ``{(corner_parities, interior_used): count}`` over all simplicial
    triangulations of the polygon ``0..n-1`` with at most ``max_interior``
    interior vertices whose interior vertices all have even degree.  The
    recursion looks at the triangle on the first polygon edge: its apex is
    either another corner (the polygon splits along a chord) or a new interior
    vertex (the polygon grows by one).  Independent of
    :func:`even_polygon_triangulation`.
    """
    memo: dict = {}

    def solve(poly: tuple, forbidden: frozenset, avail: int) -> dict:
        # degrees count edges inside the closed region bounded by ``poly``
        m = len(poly)
        if m == 2:
            return {((1, 1), 0): 1}
        key = (poly, forbidden, avail)
        if key in memo:
            return memo[key]
        out: dict = {}
        p0, p1 = poly[0], poly[1]
        for k in range(2, m):
            pk = poly[k]
            if k != 2 and edge(p1, pk) in forbidden:
                continue
            if k != m - 1 and edge(pk, p0) in forbidden:
                continue
            s1 = poly[1 : k + 1]
            s2 = poly[k:] + (p0,)
            f1 = frozenset(e for e in forbidden if e[0] in s1 and e[1] in s1)
            f2 = frozenset(e for e in forbidden if e[0] in s2 and e[1] in s2)
            r1 = solve(s1, f1, avail)
            r2 = solve(s2, f2, avail)
            for (par1, u1), c1 in r1.items():
                for (par2, u2), c2 in r2.items():
                    if u1 + u2 > avail:
                        continue
                    deg = dict.fromkeys(poly, 0)
                    for x, p in zip(s1, par1):
                        deg[x] += p
                    for x, p in zip(s2, par2):
                        deg[x] += p
                    # triangle edges p0p1, p1pk, pkp0; the last two are shared with s1, s2
                    deg[p0] += 1
                    deg[p1] += 1
                    par = tuple(deg[x] % 2 for x in poly)
                    key2 = (par, u1 + u2)
                    out[key2] = out.get(key2, 0) + c1 * c2
        if avail > 0:
            w = max(poly) + 1
            grown = (p0, w) + poly[1:]
            sub = solve(grown, forbidden | {edge(p0, p1)}, avail - 1)
            for (par, u), c in sub.items():
                if par[1] % 2:
                    continue  # w is interior: its degree is final and must be even
                deg = dict(zip(grown, par))
                deg[p0] += 1  # edge p0p1 is outside the grown polygon
                deg[p1] += 1
                key2 = (tuple(deg[x] % 2 for x in poly), u + 1)
                out[key2] = out.get(key2, 0) + c
        memo[key] = out
        return out

    return solve(tuple(range(n)), frozenset(), max_interior)


def even_polygon_exists(n: int, max_interior: int = 3) -> bool:
    """True iff some triangulated n-gon with at most ``max_interior`` interior vertices is even."""
    zero = tuple([0] * n)
    return any(par == zero for par, _ in polygon_parity_census(n, max_interior))
