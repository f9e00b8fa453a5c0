"""
The space of germs between two closed triangulated surfaces.

Every triple ``(sigma, sigma', phi)`` with ``phi`` a vertex bijection between
triangles of the two surfaces is a triangle; triples are glued across an edge
when rolling takes one to the other.  Both forgetful maps are simplicial
branched covers, and any surface covering both factors maps into a component.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .cover import BranchedCover, assemble_total
from .errors import BoundaryNotSupported, MismatchedTotals, TheoremViolation
from .platonic import GermFlag, roll_step
from .surface import SimplicialSurface, build_surface, triangle_edges


@dataclass
class GermSpace:
    total: SimplicialSurface
    left: BranchedCover
    right: BranchedCover
    flags: dict  # total triangle -> GermFlag
    source: SimplicialSurface
    target: SimplicialSurface

    def components(self) -> list:
        return germ_components(self)

    def flag_triangle(self, flag: GermFlag) -> tuple:
        return self._by_flag()[flag]

    def _by_flag(self) -> dict:
        cached = getattr(self, "_flag_index", None)
        if cached is None:
            cached = {f: t for t, f in self.flags.items()}
            self._flag_index = cached
        return cached

    def to_json(self) -> dict:
        return {
            "total": self.total.to_json(),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


def space_of_germs(a: SimplicialSurface, b: SimplicialSurface) -> GermSpace:
    if not (a.is_closed and b.is_closed):
        raise BoundaryNotSupported("the space of germs is built for closed surfaces only")
    states = []
    for s in a.triangles:
        for t in b.triangles:
            for img in permutations(t):
                states.append(GermFlag(s, t, img))
    index = {f: i for i, f in enumerate(states)}

    def gluings():
        for i, f in enumerate(states):
            for e in triangle_edges(f.sigma):
                yield i, index[roll_step(a, b, f, e)], e

    total, tris, reps = assemble_total(states, lambda f: f.sigma, gluings())
    left_v = {}
    right_v = {}
    for c, (i, x) in reps.items():
        left_v[c] = x
        right_v[c] = states[i].phi[x]
    flags = dict(zip(tris, states))
    left = BranchedCover(total, a, left_v, {t: f.sigma for t, f in flags.items()})
    right = BranchedCover(total, b, right_v, {t: f.sigma_prime for t, f in flags.items()})
    return GermSpace(total, left, right, flags, a, b)


def _restrict(cover: BranchedCover, total: SimplicialSurface) -> BranchedCover:
    verts = total.vertices
    return BranchedCover(
        total=total,
        base=cover.base,
        vertex_projection={v: cover.vertex_projection[v] for v in verts},
        triangle_projection={t: cover.triangle_projection[t] for t in total.triangles},
        branch_indices={v: cover.branch_indices[v] for v in verts},
    )


def germ_components(g: GermSpace) -> list:
    out = []
    for tris in g.total.component_triangle_sets():
        total = build_surface(tris)
        out.append(
            GermSpace(
                total=total,
                left=_restrict(g.left, total),
                right=_restrict(g.right, total),
                flags={t: g.flags[t] for t in tris},
                source=g.source,
                target=g.target,
            )
        )
    return out


@dataclass
class Factorization:
    vertex_map: dict  # vertex of Z -> vertex of the germ space
    triangle_map: dict  # triangle of Z -> triangle of the germ space
    component: Optional[int] = None


def factor_cover_through_germs(
    f: BranchedCover, f2: BranchedCover, germs: Optional[GermSpace] = None
) -> Factorization:
    """Map ``Z -> G(base(f), base(f2))`` by ``z -> (f(z), f2(z), f2 o f^-1)``."""
    if f.total != f2.total:
        raise MismatchedTotals("the two covers must share the same total surface")
    g = germs if germs is not None else space_of_germs(f.base, f2.base)
    tri_map = {}
    vert_map: dict = {}
    for z in f.total.triangles:
        phi = {f.vertex_projection[x]: f2.vertex_projection[x] for x in z}
        flag = GermFlag.make(phi)
        gt = g.flag_triangle(flag)
        tri_map[z] = gt
        for x in z:
            # the germ-space vertex over (f(x), f2(x)) inside triangle gt
            gx = next(
                y for y in gt
                if g.left.vertex_projection[y] == f.vertex_projection[x]
            )
            if vert_map.setdefault(x, gx) != gx:
                raise TheoremViolation(f"vertex {x} of Z maps to two germ-space vertices")
    comps = g.total.component_triangle_sets()
    hit = {i for i, c in enumerate(comps) for t in c if t in set(tri_map.values())}
    return Factorization(vert_map, tri_map, component=min(hit) if len(hit) == 1 else None)
