"""
Pure d-dimensional complexes: the odd subcomplex, its Z/2 boundary identity,
the parity law, links of codimension-3 faces, and the d-dimensional unfolding.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Optional

from .errors import InvalidComplex, LinkNotSphere, SurfaceError, TheoremViolation
from .monodromy import fisk_check, is_sphere
from .surface import build_surface


class PureComplex:
    """A pure simplicial complex given by its facets (all of size d + 1)."""

    def __init__(self, facets: Iterable, d: Optional[int] = None):
        fs = sorted({tuple(sorted(f)) for f in facets})
        if not fs:
            raise InvalidComplex("a complex needs at least one facet")
        sizes = {len(f) for f in fs}
        if len(sizes) != 1:
            raise InvalidComplex(f"facets of mixed sizes {sorted(sizes)}")
        for f in fs:
            if len(set(f)) != len(f):
                raise InvalidComplex(f"facet {f} repeats a vertex")
        self.d = sizes.pop() - 1
        if d is not None and d != self.d:
            raise InvalidComplex(f"facets have dimension {self.d}, expected {d}")
        self.facets = tuple(fs)
        ridges = self.face_counts(self.d - 1)
        over = [r for r, c in ridges.items() if c > 2]
        if over:
            raise InvalidComplex(f"{len(over)} codimension-1 faces lie in more than two facets, e.g. {over[0]}")

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for f in self.facets for v in f)

    def face_counts(self, j: int) -> Counter:
        """Number of facets containing each j-dimensional face."""
        out: Counter = Counter()
        for f in self.facets:
            out.update(combinations(f, j + 1))
        return out

    def faces(self, j: int) -> list:
        return sorted(self.face_counts(j))

    def is_closed(self) -> bool:
        return all(c == 2 for c in self.face_counts(self.d - 1).values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * len(self.face_counts(j)) for j in range(self.d + 1))

    def link(self, face) -> "PureComplex":
        face = set(face)
        rest = [tuple(v for v in f if v not in face) for f in self.facets if face <= set(f)]
        return PureComplex(rest)

    def to_json(self) -> dict:
        return {"dim": self.d, "facets": [list(f) for f in self.facets]}

    def __eq__(self, other):
        return isinstance(other, PureComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return f"PureComplex(d={self.d}, facets={len(self.facets)})"


@dataclass
class OddSubcomplex:
    faces: frozenset
    incidence_counts: dict

    def __len__(self):
        return len(self.faces)


def odd_subcomplex(c: PureComplex) -> OddSubcomplex:
    counts = c.face_counts(c.d - 2)
    odd = frozenset(f for f, n in counts.items() if n % 2)
    return OddSubcomplex(odd, {f: counts[f] for f in odd})


def is_even(c: PureComplex) -> bool:
    return not odd_subcomplex(c).faces


def mod2_boundary(chain: Iterable) -> frozenset:
    out: Counter = Counter()
    for s in chain:
        out.update(combinations(s, len(s) - 1))
    return frozenset(f for f, n in out.items() if n % 2)


def z2_nullhomologous_check(c: PureComplex) -> bool:
    """The odd subcomplex is the Z/2 boundary of the sum of all codimension-1 faces."""
    return odd_subcomplex(c).faces == mod2_boundary(c.faces(c.d - 1))


def parity_check(c: PureComplex) -> bool:
    """Count the (d-2, d) incidences two ways, each facet contributes C(d+1, 2) of them.

    Modulo 2 this gives ``#odd == C(d+1, 2) * #facets``, i.e. the same parity
    as the facet count when d = 1, 2 (mod 4) and even otherwise.
    """
    n_odd = len(odd_subcomplex(c))
    n_fac = len(c.facets)
    if c.d % 4 in (1, 2):
        return n_odd % 2 == n_fac % 2
    return n_odd % 2 == 0


@dataclass
class LinkPairReport:
    checked: list = field(default_factory=list)  # (tau, odd pair) where the claim applied
    not_spheres: list = field(default_factory=list)  # taus whose link failed the 2-sphere test
    vacuous: bool = True


def link_pair_check(c: PureComplex) -> LinkPairReport:
    """For a 3-manifold: two odd edges at a vertex with exactly two never span a triangle."""
    if c.d != 3:
        raise InvalidComplex("link_pair_check is for three-dimensional complexes")
    odd = odd_subcomplex(c).faces
    at: dict = defaultdict(list)
    for e in odd:
        for x in e:
            at[x].append(e)
    rep = LinkPairReport()
    for tau in sorted(at):
        if len(at[tau]) != 2:
            continue
        try:
            lk = build_surface(c.link((tau,)).facets)
            if not is_sphere(lk):
                raise LinkNotSphere(f"link of {tau} is not a 2-sphere")
        except (SurfaceError, LinkNotSphere, InvalidComplex):
            rep.not_spheres.append(tau)
            continue
        rep.vacuous = False
        e1, e2 = sorted(at[tau])
        a = next(x for x in e1 if x != tau)
        b = next(x for x in e2 if x != tau)
        report = fisk_check(lk)
        if lk.has_edge(a, b) or set(report.odd) != {a, b}:
            raise TheoremViolation(f"odd edges {e1}, {e2} at {tau} span a triangle")
        rep.checked.append((tau, (e1, e2)))
    return rep


# -- the d-dimensional unfolding ---------------------------------------------


class LabeledComplex:
    """Facets with explicit ids, so two facets may share the same vertex set.

    ``gluings`` lists ``(facet_id, facet_id, shared_face)`` pairs; a shared face
    is a d-subset of both facets' vertices.  Without explicit gluings, facets
    sharing a codimension-1 face are glued along it.
    """

    def __init__(self, facets: dict, gluings: Optional[list] = None):
        self.facets = {k: tuple(sorted(v)) for k, v in facets.items()}
        sizes = {len(f) for f in self.facets.values()}
        if len(sizes) != 1:
            raise InvalidComplex("facets of mixed sizes")
        self.d = sizes.pop() - 1
        if gluings is None:
            by_face = defaultdict(list)
            for k, f in sorted(self.facets.items()):
                for r in combinations(f, self.d):
                    by_face[r].append(k)
            gluings = []
            for r, ks in sorted(by_face.items()):
                if len(ks) > 2:
                    raise InvalidComplex(f"face {r} in more than two facets")
                if len(ks) == 2:
                    gluings.append((ks[0], ks[1], r))
        for i, j, r in gluings:
            if not (set(r) <= set(self.facets[i]) and set(r) <= set(self.facets[j])) or len(r) != self.d:
                raise InvalidComplex(f"bad gluing {(i, j, r)}")
        self.gluings = [(i, j, tuple(sorted(r))) for i, j, r in gluings]

    def to_json(self) -> dict:
        return {
            "dim": self.d,
            "facets": {str(k): list(f) for k, f in sorted(self.facets.items(), key=lambda kv: str(kv[0]))},
            "gluings": [[str(i), str(j), list(r)] for i, j, r in self.gluings],
        }

    @classmethod
    def from_pure(cls, c: PureComplex) -> "LabeledComplex":
        return cls(dict(enumerate(c.facets)))


def double_tetrahedron() -> LabeledComplex:
    """Two 3-simplices on the same four vertices glued along all four triangles."""
    f = (1, 2, 3, 4)
    return LabeledComplex({"A": f, "B": f}, [("A", "B", r) for r in combinations(f, 3)])


class _UnionFind(dict):
    def find(self, x):
        self.setdefault(x, x)
        while self[x] != x:
            self[x] = self[self[x]]
            x = self[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self[ra] = rb


@dataclass
class UnfoldingD:
    """Colored facets of a d-complex glued where their colorings agree.

    ``states[i] = (base facet id, colors aligned with the base facet's sorted
    vertices)``; ``labels[i]`` are the unfolded vertices at those corners.
    Faces are counted as gluing classes, so facets sharing a vertex set stay
    distinct when they are not glued.
    """

    d: int
    states: list
    labels: list
    gluings: list  # (state, state, base face)
    base: LabeledComplex
    vertex_projection: dict

    @property
    def facet_projection(self) -> dict:
        return {i: k for i, (k, _) in enumerate(self.states)}

    @property
    def vertices(self) -> list:
        return sorted(self.vertex_projection)

    def _face_classes(self) -> dict:
        """Map (state, base vertex subset) -> class representative."""
        uf = _UnionFind()
        for a, b, r in self.gluings:
            for j in range(1, len(r) + 1):
                for sub in combinations(r, j):
                    uf.union((a, sub), (b, sub))
        out = {}
        for i, (k, _) in enumerate(self.states):
            f = self.base.facets[k]
            for j in range(1, self.d + 2):
                for sub in combinations(f, j):
                    out[(i, sub)] = uf.find((i, sub))
        return out

    def face_count(self, dim: int) -> int:
        classes = self._face_classes()
        return len({c for (i, sub), c in classes.items() if len(sub) == dim + 1})

    def euler_characteristic(self) -> int:
        classes = self._face_classes()
        seen = {}
        for (i, sub), c in classes.items():
            seen[c] = len(sub) - 1
        return sum((-1) ** dim for dim in seen.values())

    def vertex_link_euler(self) -> dict:
        """Euler characteristic of the link of every unfolded vertex."""
        classes = self._face_classes()
        per_vertex: dict = defaultdict(set)
        for (i, sub), c in classes.items():
            if len(sub) < 2:
                continue
            f = self.base.facets[self.states[i][0]]
            lab = dict(zip(f, self.labels[i]))
            for x in sub:
                per_vertex[lab[x]].add((c, len(sub) - 2))
        return {v: sum((-1) ** dim for _, dim in per_vertex[v]) for v in self.vertices}

    def components(self) -> int:
        uf = _UnionFind()
        for i in range(len(self.states)):
            uf.find(i)
        for a, b, _ in self.gluings:
            uf.union(a, b)
        return len({uf.find(i) for i in range(len(self.states))})

    def as_pure_complex(self) -> PureComplex:
        """The unfolding as a simplicial complex; fails if two facets share a vertex set."""
        facets = [tuple(sorted(lab)) for lab in self.labels]
        if len(set(facets)) != len(facets):
            raise InvalidComplex("the unfolding is not simplicial (repeated facet vertex sets)")
        return PureComplex(facets)


def unfolding_d(c) -> UnfoldingD:
    """Colored facets (facet, bijection to 1..d+1) glued where colorings agree on the shared face."""
    lc = c if isinstance(c, LabeledComplex) else LabeledComplex.from_pure(c)
    d = lc.d
    colors = tuple(range(1, d + 2))
    states = [(k, perm) for k in sorted(lc.facets, key=str) for perm in permutations(colors)]
    index = {s: i for i, s in enumerate(states)}
    uf = _UnionFind()
    gluings = []
    for i, j, r in lc.gluings:
        fi, fj = lc.facets[i], lc.facets[j]
        for perm in permutations(colors):
            col = dict(zip(fi, perm))
            col_j = {x: col[x] for x in r}
            free = next(x for x in fj if x not in r)
            col_j[free] = next(c_ for c_ in colors if c_ not in col_j.values())
            a = index[(i, perm)]
            b = index[(j, tuple(col_j[x] for x in fj))]
            gluings.append((a, b, r))
            for x in r:
                uf.union((a, x), (b, x))
    label: dict = {}
    labels = []
    vproj = {}
    for i, (k, _) in enumerate(states):
        row = []
        for x in lc.facets[k]:
            v = label.setdefault(uf.find((i, x)), len(label))
            vproj[v] = x
            row.append(v)
        labels.append(tuple(row))
    return UnfoldingD(d, states, labels, gluings, lc, vproj)


def torus_link_points(u: UnfoldingD) -> list:
    """Vertices of the unfolding whose link has Euler characteristic 0 (a torus, for orientable links)."""
    return [v for v, chi in u.vertex_link_euler().items() if chi == 0]


def non_sphere_link_points(u: UnfoldingD) -> list:
    return [v for v, chi in u.vertex_link_euler().items() if chi != 2]


# -- fixtures -----------------------------------------------------------------


def boundary_simplex(d: int) -> PureComplex:
    """Boundary of the (d+1)-simplex on vertices 0..d+1."""
    return PureComplex(combinations(range(d + 2), d + 1))


def stellar_subdivide(c: PureComplex, facet, new_vertex=None) -> PureComplex:
    """Replace ``facet`` by the cone over its boundary from a new vertex."""
    facet = tuple(sorted(facet))
    if facet not in c.facets:
        raise InvalidComplex(f"{facet} is not a facet")
    w = new_vertex if new_vertex is not None else max(c.vertices) + 1
    rest = [f for f in c.facets if f != facet]
    rest += [r + (w,) for r in combinations(facet, c.d)]
    return PureComplex(rest)


def suspension(c: PureComplex, north=None, south=None) -> PureComplex:
    m = max(c.vertices)
    n = north if north is not None else m + 1
    s = south if south is not None else m + 2
    return PureComplex([f + (n,) for f in c.facets] + [f + (s,) for f in c.facets])


def three_sphere_fixtures(sphere_corpus=(), subdivisions: int = 3) -> list:
    """Deterministic 3-sphere triangulations: boundary of the 4-simplex, stellar
    subdivisions of it, and suspensions of the given 2-spheres."""
    out = [("boundary-4-simplex", boundary_simplex(3))]
    c = boundary_simplex(3)
    for i in range(subdivisions):
        c = stellar_subdivide(c, c.facets[i % len(c.facets)])
        out.append((f"stellar-{i + 1}", c))
    for j, s in enumerate(sphere_corpus):
        out.append((f"suspension-{j}", suspension(PureComplex(s.triangles))))
    return out
