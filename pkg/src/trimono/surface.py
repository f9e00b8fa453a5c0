"""
Triangulated surfaces (possibly with boundary, possibly disconnected).

A :class:`SimplicialSurface` is built once by :func:`build_surface`, which
validates the 2-manifold conditions and precomputes edge incidences and the
ordered link of every vertex.  Everything afterwards is read-only.

Vertices are nonnegative integers, triangles are sorted triples and edges are
sorted pairs, so equal surfaces hash equally regardless of input order.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    DegenerateTriangle,
    DisconnectedInput,
    DuplicateTriangle,
    EdgeNotInTriangle,
    NonManifoldEdge,
    NotClosed,
    NotOrientable,
    PinchedVertex,
    SurfaceError,
    UnknownVertex,
)

Triangle = tuple  # sorted (a, b, c)
Edge = tuple  # sorted (a, b)


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def triangle_edges(t: Triangle) -> tuple:
    a, b, c = t
    return ((a, b), (a, c), (b, c))


def third_vertex(t: Triangle, e: Edge) -> int:
    for x in t:
        if x != e[0] and x != e[1]:
            return x
    raise EdgeNotInTriangle(f"{e} is not an edge of {t}")


class SimplicialSurface:
    """A validated triangulated surface.  Construct with :func:`build_surface`."""

    __slots__ = (
        "triangles",
        "_triangle_set",
        "vertices",
        "_edge_triangles",
        "_vertex_triangles",
        "_links",
        "_closed_links",
        "_hash",
    )

    def __init__(self, triangles, edge_triangles, vertex_triangles, links, closed_links):
        self.triangles = triangles
        self._triangle_set = frozenset(triangles)
        self.vertices = frozenset(links)
        self._edge_triangles = edge_triangles
        self._vertex_triangles = vertex_triangles
        self._links = links
        self._closed_links = closed_links
        self._hash = hash(self._triangle_set)

    # -- basic structure -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SimplicialSurface):
            return NotImplemented
        return self._triangle_set == other._triangle_set

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (
            f"SimplicialSurface(V={len(self.vertices)}, E={len(self._edge_triangles)}, "
            f"F={len(self.triangles)})"
        )

    def __contains__(self, t) -> bool:
        return tuple(sorted(t)) in self._triangle_set

    @property
    def edges(self) -> tuple:
        return tuple(sorted(self._edge_triangles))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edge_triangles)

    @property
    def num_triangles(self) -> int:
        return len(self.triangles)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self._edge_triangles

    def edge_triangles(self, e: Edge) -> tuple:
        return self._edge_triangles[edge(*e)]

    def vertex_triangles(self, v: int) -> tuple:
        self._check_vertex(v)
        return self._vertex_triangles[v]

    @property
    def boundary_edges(self) -> tuple:
        return tuple(e for e in self.edges if len(self._edge_triangles[e]) == 1)

    @property
    def is_closed(self) -> bool:
        return all(len(ts) == 2 for ts in self._edge_triangles.values())

    def _check_vertex(self, v):
        if v not in self._links:
            raise UnknownVertex(f"vertex {v!r} is not in the surface")

    def link(self, v: int) -> tuple:
        """Neighbours of ``v`` in cyclic order (interior) or path order (boundary)."""
        self._check_vertex(v)
        return self._links[v]

    def is_interior(self, v: int) -> bool:
        self._check_vertex(v)
        return self._closed_links[v]

    def degree(self, v: int) -> int:
        """Number of edges at ``v``; equals the number of triangles for interior vertices."""
        return len(self.link(v))

    def neighbors(self, v: int) -> frozenset:
        return frozenset(self.link(v))

    def triangles_around(self, v: int) -> tuple:
        """Triangles at ``v`` in the order of its link."""
        lk = self.link(v)
        pairs = zip(lk, lk[1:] + lk[:1]) if self._closed_links[v] else zip(lk, lk[1:])
        return tuple(tuple(sorted((v, x, y))) for x, y in pairs)

    def adjacent_triangle(self, t: Sequence[int], e: Sequence[int]) -> Optional[Triangle]:
        t = tuple(sorted(t))
        e = edge(*e)
        if e[0] not in t or e[1] not in t or e[0] == e[1]:
            raise EdgeNotInTriangle(f"{e} is not an edge of {t}")
        if t not in self._triangle_set:
            raise SurfaceError(f"{t} is not a triangle of the surface")
        for other in self._edge_triangles[e]:
            if other != t:
                return other
        return None

    def triangle_neighbors(self, t: Triangle) -> Iterator[tuple]:
        """Yield ``(edge, neighbour)`` over the interior edges of ``t``."""
        for e in triangle_edges(t):
            for other in self._edge_triangles[e]:
                if other != t:
                    yield e, other

    # -- connectivity ----------------------------------------------------

    def component_triangle_sets(self) -> list:
        seen = set()
        comps = []
        for t0 in self.triangles:
            if t0 in seen:
                continue
            seen.add(t0)
            comp = [t0]
            queue = deque([t0])
            while queue:
                t = queue.popleft()
                for _, o in self.triangle_neighbors(t):
                    if o not in seen:
                        seen.add(o)
                        comp.append(o)
                        queue.append(o)
            comps.append(sorted(comp))
        return comps

    @property
    def is_connected(self) -> bool:
        return len(self.component_triangle_sets()) <= 1

    def components(self) -> list:
        return [build_surface(c) for c in self.component_triangle_sets()]

    def require_connected(self):
        if not self.triangles or not self.is_connected:
            raise DisconnectedInput("operation requires a connected, nonempty surface")

    def relabel(self, mapping) -> "SimplicialSurface":
        return build_surface([tuple(mapping[x] for x in t) for t in self.triangles])

    def to_json(self) -> dict:
        return {"dim": 2, "facets": [list(t) for t in self.triangles]}


def _order_link(v, link_edges):
    adj = {}
    for a, b in link_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    ends = sorted(x for x, ns in adj.items() if len(ns) == 1)
    if ends:
        start = ends[0]
        closed = False
    else:
        start = min(adj)
        closed = True
    order = [start]
    prev, cur = None, start
    while True:
        cands = sorted(x for x in adj[cur] if x != prev)
        if not cands or cands[0] == start:
            break
        prev, cur = cur, cands[0]
        order.append(cur)
        if len(order) > len(adj):
            break
    if len(order) != len(adj) or (not closed and len(ends) != 2):
        raise PinchedVertex(f"link of vertex {v} is disconnected")
    return tuple(order), closed


def build_surface(facets: Iterable[Sequence[int]]) -> SimplicialSurface:
    """Validate ``facets`` as a triangulated surface and precompute its structure."""
    triangles = []
    seen = set()
    for f in facets:
        f = tuple(int(x) for x in f)
        if len(f) != 3:
            raise DegenerateTriangle(f"facet {f} does not have 3 vertices")
        if len(set(f)) != 3:
            raise DegenerateTriangle(f"facet {f} has a repeated vertex")
        if min(f) < 0:
            raise SurfaceError(f"facet {f} has a negative vertex id")
        t = tuple(sorted(f))
        if t in seen:
            raise DuplicateTriangle(f"triangle {t} appears twice")
        seen.add(t)
        triangles.append(t)
    triangles.sort()

    edge_triangles: dict = {}
    vertex_triangles: dict = {}
    link_edges: dict = {}
    for t in triangles:
        for e in triangle_edges(t):
            edge_triangles.setdefault(e, []).append(t)
        for v in t:
            vertex_triangles.setdefault(v, []).append(t)
            a, b = (x for x in t if x != v)
            link_edges.setdefault(v, []).append((a, b))
    for e, ts in edge_triangles.items():
        if len(ts) > 2:
            raise NonManifoldEdge(f"edge {e} lies in {len(ts)} triangles")

    links = {}
    closed = {}
    for v in sorted(link_edges):
        links[v], closed[v] = _order_link(v, link_edges[v])

    return SimplicialSurface(
        tuple(triangles),
        {e: tuple(ts) for e, ts in edge_triangles.items()},
        {v: tuple(ts) for v, ts in vertex_triangles.items()},
        links,
        closed,
    )


# -- invariants ----------------------------------------------------------


def euler_characteristic(s: SimplicialSurface) -> int:
    return s.num_vertices - s.num_edges + s.num_triangles


def vertex_degree(s: SimplicialSurface, v: int) -> int:
    return s.degree(v)


def interior_vertices(s: SimplicialSurface) -> frozenset:
    return frozenset(v for v in s.vertices if s.is_interior(v))


def boundary_cycles(s: SimplicialSurface) -> list:
    """Boundary components as vertex cycles, each starting at its smallest vertex."""
    adj: dict = {}
    for a, b in s.boundary_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    cycles = []
    seen = set()
    for start in sorted(adj):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        prev, cur = start, min(adj[start])
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(tuple(cyc))
    return cycles


def orientation(s: SimplicialSurface) -> Optional[dict]:
    """A coherent orientation (triangle -> oriented vertex tuple), or None.

    Orients every component independently.
    """
    result = {}
    for comp in s.component_triangle_sets():
        t0 = comp[0]
        result[t0] = t0
        queue = deque([t0])
        while queue:
            t = queue.popleft()
            o = result[t]
            for u, v in ((o[0], o[1]), (o[1], o[2]), (o[2], o[0])):
                other = s.adjacent_triangle(t, (u, v))
                if other is None:
                    continue
                w = third_vertex(other, edge(u, v))
                want = (v, u, w)
                if other in result:
                    if not _same_cyclic(result[other], want):
                        return None
                else:
                    result[other] = want
                    queue.append(other)
    return result


def _same_cyclic(a, b) -> bool:
    return a == b or a == (b[1], b[2], b[0]) or a == (b[2], b[0], b[1])


def is_orientable(s: SimplicialSurface) -> bool:
    s.require_connected()
    return orientation(s) is not None


def genus(s: SimplicialSurface) -> int:
    s.require_connected()
    if not s.is_closed:
        raise NotClosed("genus requires a closed surface")
    if orientation(s) is None:
        raise NotOrientable("genus requires an orientable surface")
    chi = euler_characteristic(s)
    return (2 - chi) // 2


def adjacent_triangle(s: SimplicialSurface, t, e) -> Optional[Triangle]:
    return s.adjacent_triangle(t, e)


# -- isomorphism -----------------------------------------------------------


@dataclass(frozen=True)
class SurfaceIsomorphism:
    vertex_bijection: dict

    def __call__(self, v):
        return self.vertex_bijection[v]

    def apply(self, t) -> Triangle:
        return tuple(sorted(self.vertex_bijection[x] for x in t))


def extend_flag(a: SimplicialSurface, b: SimplicialSurface, seed_a, seed_b) -> Optional[dict]:
    """Propagate the vertex map ``seed_a -> seed_b`` over the component of ``seed_a``.

    Both seeds are ordered vertex triples of triangles.  Returns the vertex map
    when it is a simplicial embedding of that component, else None.
    """
    f = dict(zip(seed_a, seed_b))
    g = dict(zip(seed_b, seed_a))
    t0 = tuple(sorted(seed_a))
    if tuple(sorted(seed_b)) not in b._triangle_set:
        return None
    visited = {t0}
    queue = deque([t0])
    while queue:
        t = queue.popleft()
        img = tuple(sorted(f[x] for x in t))
        for e in triangle_edges(t):
            ta = a.adjacent_triangle(t, e)
            eb = edge(f[e[0]], f[e[1]])
            tb = b.adjacent_triangle(img, eb)
            if (ta is None) != (tb is None):
                return None
            if ta is None:
                continue
            x = third_vertex(ta, e)
            y = third_vertex(tb, eb)
            fx = f.get(x)
            if fx is None:
                if y in g:
                    return None
                f[x] = y
                g[y] = x
            elif fx != y:
                return None
            if ta not in visited:
                visited.add(ta)
                queue.append(ta)
    return f


def _invariants(s: SimplicialSurface):
    return (
        s.num_vertices,
        s.num_edges,
        s.num_triangles,
        len(s.boundary_edges),
        tuple(sorted(Counter(s.degree(v) for v in s.vertices).items())),
    )


def _connected_isomorphisms(a, b) -> Iterator[dict]:
    if _invariants(a) != _invariants(b):
        return
    t0 = a.triangles[0]
    seed = tuple(sorted(t0, key=lambda x: (a.degree(x), x)))
    degs = tuple(a.degree(x) for x in seed)
    for tb in b.triangles:
        for img in permutations(tb):
            if tuple(b.degree(y) for y in img) != degs:
                continue
            f = extend_flag(a, b, seed, img)
            if f is not None and len(f) == a.num_vertices:
                yield f


def isomorphisms(a: SimplicialSurface, b: SimplicialSurface) -> Iterator[SurfaceIsomorphism]:
    """All isomorphisms between two connected surfaces."""
    a.require_connected()
    b.require_connected()
    for f in _connected_isomorphisms(a, b):
        yield SurfaceIsomorphism(f)


def are_isomorphic(a: SimplicialSurface, b: SimplicialSurface) -> Optional[SurfaceIsomorphism]:
    """An isomorphism ``a -> b`` or None.  Handles disconnected surfaces."""
    if _invariants(a) != _invariants(b):
        return None
    if not a.triangles:
        return SurfaceIsomorphism({})
    comps_a = a.components()
    comps_b = b.components()
    if len(comps_a) != len(comps_b):
        return None
    used = [False] * len(comps_b)
    total = {}
    # isomorphism is an equivalence, so greedy matching of components is exact
    for ca in comps_a:
        for j, cb in enumerate(comps_b):
            if used[j]:
                continue
            f = next(_connected_isomorphisms(ca, cb), None)
            if f is not None:
                used[j] = True
                total.update(f)
                break
        else:
            return None
    return SurfaceIsomorphism(total)
