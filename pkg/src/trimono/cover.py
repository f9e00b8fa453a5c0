"""
Branched covers generated by colorings.

The unfolding glues all colored triangles ``(triangle, coloring)`` of a
surface along edges where the colorings agree.  Total-space vertices are
classes of ``(colored triangle, vertex)`` under that gluing, so branch
indices are read off afterwards as ratios of triangle counts rather than
being assumed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .errors import (
    NotASimpleCycle,
    SearchExhausted,
    SurfaceError,
    TheoremViolation,
    TouchesBoundary,
)
from .monodromy import (
    COLORS,
    coloring_monodromy_image,
    cross_edge,
    odd_vertices,
    sym3_name,
    vertex_coloring,
)
from .surface import (
    SimplicialSurface,
    build_surface,
    edge,
    euler_characteristic,
    orientation,
)

WHITE, BLACK = "white", "black"


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def assemble_total(states: Sequence, corners, gluings) -> tuple:
    """Glue abstract triangles into a surface.

    ``states[i]`` is a triangle whose corners are ``corners(states[i])`` (three
    labels).  ``gluings`` yields ``(i, j, shared_corners)`` meaning corner ``x``
    of state ``i`` is identified with corner ``x`` of state ``j``.  Returns the
    total surface, the triangle of each state, and ``class id -> (state index,
    corner)`` representatives.
    """
    uf = _UnionFind()
    for i, st in enumerate(states):
        for x in corners(st):
            uf.find((i, x))
    for i, j, shared in gluings:
        for x in shared:
            uf.union((i, x), (j, x))
    roots = sorted({uf.find(node) for node in uf.parent})
    ids = {r: n for n, r in enumerate(roots)}
    tris = []
    for i, st in enumerate(states):
        tris.append(tuple(sorted(ids[uf.find((i, x))] for x in corners(st))))
    total = build_surface(tris)
    return total, tris, {ids[r]: r for r in roots}


@dataclass
class BranchedCover:
    """A simplicial map ``total -> base`` together with its branch indices.

    ``labels`` optionally records the colored triangle behind each total triangle.
    """

    total: SimplicialSurface
    base: SimplicialSurface
    vertex_projection: dict
    triangle_projection: dict
    branch_indices: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.branch_indices:
            self.branch_indices = compute_branch_indices(self)

    @property
    def fiber_sizes(self) -> dict:
        sizes = dict.fromkeys(self.base.triangles, 0)
        for bt in self.triangle_projection.values():
            sizes[bt] += 1
        return sizes

    @property
    def degree(self) -> int:
        """Number of total triangles over each base triangle (must be constant)."""
        sizes = set(self.fiber_sizes.values())
        if len(sizes) != 1:
            raise SurfaceError(f"fiber sizes {sorted(sizes)} are not constant")
        return sizes.pop()

    @property
    def is_unbranched(self) -> bool:
        return all(i == 1 for i in self.branch_indices.values())

    def preimages(self, v) -> list:
        return sorted(w for w, bv in self.vertex_projection.items() if bv == v)

    def components(self) -> list:
        return components(self)

    def to_json(self) -> dict:
        return {
            "total": self.total.to_json(),
            "base": self.base.to_json(),
            "triangle_projection": [[list(t), list(b)] for t, b in sorted(self.triangle_projection.items())],
            "vertex_projection": {str(v): b for v, b in sorted(self.vertex_projection.items())},
            "branch_indices": {str(v): i for v, i in sorted(self.branch_indices.items())},
        }


def compute_branch_indices(cover: BranchedCover) -> dict:
    out = {}
    for v in cover.total.vertices:
        up = len(cover.total.vertex_triangles(v))
        down = len(cover.base.vertex_triangles(cover.vertex_projection[v]))
        if up % down:
            raise TheoremViolation(f"vertex {v}: {up} triangles over {down} is not a cover")
        out[v] = up // down
    return out


def check_simplicial(cover: BranchedCover) -> bool:
    """Each total triangle maps bijectively onto its projected base triangle."""
    for t, bt in cover.triangle_projection.items():
        if tuple(sorted(cover.vertex_projection[x] for x in t)) != bt:
            return False
    return True


def riemann_hurwitz(cover: BranchedCover) -> tuple:
    """``(chi(total), deg * chi(base) - sum(index - 1))`` for a cover of constant degree."""
    lhs = euler_characteristic(cover.total)
    rhs = cover.degree * euler_characteristic(cover.base) - sum(
        i - 1 for i in cover.branch_indices.values()
    )
    return lhs, rhs


def riemann_hurwitz_holds(cover: BranchedCover) -> bool:
    lhs, rhs = riemann_hurwitz(cover)
    return lhs == rhs


def components(cover: BranchedCover) -> list:
    """Restrict the cover to each connected component of the total space."""
    out = []
    for tris in cover.total.component_triangle_sets():
        verts = {x for t in tris for x in t}
        out.append(
            BranchedCover(
                total=build_surface(tris),
                base=cover.base,
                vertex_projection={v: cover.vertex_projection[v] for v in verts},
                triangle_projection={t: cover.triangle_projection[t] for t in tris},
                branch_indices={v: cover.branch_indices[v] for v in verts},
                labels={t: cover.labels[t] for t in tris if t in cover.labels},
            )
        )
    return out


def _colored_states(s: SimplicialSurface, with_faces: bool) -> list:
    states = []
    for t in s.triangles:
        for cs in permutations(COLORS):
            if with_faces:
                states.append((t, cs, WHITE))
                states.append((t, cs, BLACK))
            else:
                states.append((t, cs))
    return states


def _build_colored_cover(s: SimplicialSurface, with_faces: bool) -> BranchedCover:
    states = _colored_states(s, with_faces)
    index = {st: i for i, st in enumerate(states)}

    def gluings():
        for i, st in enumerate(states):
            t, cs = st[0], st[1]
            for e, other in s.triangle_neighbors(t):
                ocs = cross_edge(t, cs, other)
                if with_faces:
                    j = index[(other, ocs, BLACK if st[2] == WHITE else WHITE)]
                else:
                    j = index[(other, ocs)]
                yield i, j, e

    total, tris, reps = assemble_total(states, lambda st: st[0], gluings())
    vproj = {c: r[1] for c, r in reps.items()}
    tproj = {tri: st[0] for tri, st in zip(tris, states)}
    labels = {tri: st for tri, st in zip(tris, states)}
    return BranchedCover(total, s, vproj, tproj, labels=labels)


def unfolding(s: SimplicialSurface) -> BranchedCover:
    """The cover glued from all (triangle, 3-coloring) pairs; 6 triangles over each base triangle."""
    return _build_colored_cover(s, with_faces=False)


def face_vertex_colored_cover(s: SimplicialSurface) -> BranchedCover:
    """Like :func:`unfolding` with white/black triangles glued only to the opposite color."""
    return _build_colored_cover(s, with_faces=True)


def total_vertex_coloring(cover: BranchedCover) -> dict:
    """The coloring of total vertices carried by the colored-triangle labels."""
    colors = {}
    for tri, st in cover.labels.items():
        base_colors = dict(zip(st[0], st[1]))
        for x in tri:
            c = base_colors[cover.vertex_projection[x]]
            if colors.setdefault(x, c) != c:
                raise TheoremViolation(f"total vertex {x} carries two colors")
    return colors


def total_face_coloring(cover: BranchedCover) -> dict:
    return {tri: st[2] for tri, st in cover.labels.items()}


# -- face colorings --------------------------------------------------------


def face_coloring(s: SimplicialSurface) -> Optional[dict]:
    """Proper white/black coloring of the triangles (bipartite dual graph), or None."""
    s.require_connected()
    t0 = s.triangles[0]
    col = {t0: WHITE}
    queue = deque([t0])
    while queue:
        t = queue.popleft()
        want = BLACK if col[t] == WHITE else WHITE
        for _, o in s.triangle_neighbors(t):
            if o not in col:
                col[o] = want
                queue.append(o)
            elif col[o] != want:
                return None
    return col


def _components_colorable(s: SimplicialSurface) -> bool:
    return all(vertex_coloring(c) is not None for c in s.components())


@dataclass
class BelyiReport:
    vertex_colorable: bool
    face_colorable: bool
    orientable: bool
    even: bool
    image: str
    part1_applies: bool
    part2_applies: bool

    @property
    def ok(self) -> bool:
        p1 = not self.part1_applies or self.face_colorable == self.orientable
        p2 = not self.part2_applies or self.face_colorable == (self.image in ("trivial", "C3"))
        return p1 and p2


def check_belyi_theorem(s: SimplicialSurface) -> BelyiReport:
    """Vertex-colorable: face-colorable iff orientable.  Even and orientable:
    face-colorable iff the monodromy image is trivial or generated by a 3-cycle."""
    if not s.is_closed:
        raise SurfaceError("check_belyi_theorem requires a closed surface")
    s.require_connected()
    orientable = orientation(s) is not None
    even = not odd_vertices(s)
    vc = vertex_coloring(s) is not None
    report = BelyiReport(
        vertex_colorable=vc,
        face_colorable=face_coloring(s) is not None,
        orientable=orientable,
        even=even,
        image=sym3_name(coloring_monodromy_image(s)),
        part1_applies=vc,
        part2_applies=even and orientable,
    )
    if not report.ok:
        raise TheoremViolation(f"colorability theorem fails: {report}")
    return report


# -- cutting ---------------------------------------------------------------


def cut_along_cycle(s: SimplicialSurface, cycle: Sequence[int]) -> SimplicialSurface:
    """Cut ``s`` open along a simple closed edge path given by its vertices.

    Around each cycle vertex the triangles split into two arcs at the two
    cycle edges; the second arc gets a fresh copy of the vertex.
    """
    cycle = [int(v) for v in cycle]
    if len(cycle) > 1 and cycle[0] == cycle[-1]:
        cycle = cycle[:-1]
    m = len(cycle)
    if m < 3 or len(set(cycle)) != m:
        raise NotASimpleCycle(f"{cycle} is not a simple cycle")
    cyc_edges = set()
    for i in range(m):
        u, v = cycle[i], cycle[(i + 1) % m]
        if not s.has_edge(u, v):
            raise NotASimpleCycle(f"{(u, v)} is not an edge")
        if len(s.edge_triangles((u, v))) != 2:
            raise TouchesBoundary(f"{(u, v)} is a boundary edge")
        cyc_edges.add(edge(u, v))
    for v in cycle:
        if not s.is_interior(v):
            raise TouchesBoundary(f"vertex {v} is on the boundary")
    fresh = max(s.vertices) + 1
    relabel: dict = {}  # (triangle, vertex) -> new vertex
    for i, v in enumerate(cycle):
        lk = s.link(v)
        ring = s.triangles_around(v)  # ring[j] = (v, lk[j], lk[j+1])
        d = len(lk)
        p = lk.index(cycle[i - 1])
        q = lk.index(cycle[(i + 1) % m])
        j = q
        while j != p:
            relabel[(ring[j], v)] = fresh
            j = (j + 1) % d
        fresh += 1
    tris = [tuple(relabel.get((t, x), x) for x in t) for t in s.triangles]
    return build_surface(tris)


def simple_cycles(s: SimplicialSurface, max_len: Optional[int] = None) -> Iterator[tuple]:
    """Simple edge cycles by increasing length, each once (smallest vertex first)."""
    verts = sorted(s.vertices)
    max_len = max_len or len(verts)
    for length in range(3, max_len + 1):
        for start in verts:
            path = [start]
            on_path = {start}

            def extend():
                cur = path[-1]
                if len(path) == length:
                    if s.has_edge(cur, start) and path[1] < path[-1]:
                        yield tuple(path)
                    return
                for w in sorted(s.neighbors(cur)):
                    if w > start and w not in on_path:
                        path.append(w)
                        on_path.add(w)
                        yield from extend()
                        path.pop()
                        on_path.discard(w)

            yield from extend()


@dataclass
class TorusCut:
    already_colorable: bool
    cycle: Optional[tuple] = None
    cut: Optional[SimplicialSurface] = None
    cycles_tried: int = 0


def torus_colorability_cut(s: SimplicialSurface) -> TorusCut:
    """Find a simple edge cycle whose cut makes an even torus vertex-colorable."""
    s.require_connected()
    if not s.is_closed or euler_characteristic(s) != 0 or orientation(s) is None:
        raise SurfaceError("torus_colorability_cut requires a closed orientable surface with chi = 0")
    if any(s.degree(v) % 2 for v in s.vertices):
        raise SurfaceError("torus_colorability_cut requires all degrees even")
    if vertex_coloring(s) is not None:
        return TorusCut(already_colorable=True)
    tried = 0
    for cyc in simple_cycles(s, max_len=s.num_edges):
        tried += 1
        try:
            cut = cut_along_cycle(s, cyc)
        except SurfaceError:
            continue
        if _components_colorable(cut):
            return TorusCut(False, cyc, cut, tried)
    raise SearchExhausted(f"no simple edge cycle makes this torus colorable ({tried} tried)")
