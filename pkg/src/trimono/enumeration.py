"""
Isomorph-free generation of triangulated 2-spheres, and an exhaustive check
of the coloring theorems over the generated corpus.

Spheres on n + 1 vertices come from spheres on n vertices by splitting a
vertex; duplicates are removed by a canonical form taken as the minimum over
all flag-rooted breadth-first relabelings.
"""
from __future__ import annotations

import json
import logging
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .cover import check_belyi_theorem
from .errors import TheoremViolation
from .geometry import one_exceptional
from .monodromy import fisk_check
from .platonic import check_kvert
from .surface import SimplicialSurface, build_surface, edge, third_vertex

log = logging.getLogger(__name__)

CACHE_FORMAT = 1
TETRAHEDRON = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


# -- canonical form ------------------------------------------------------------


def _relabel_from_flag(s: SimplicialSurface, a: int, b: int, c: int) -> tuple:
    """Facet list relabeled in breadth-first discovery order from the flag (a, b, c)."""
    label = {a: 0, b: 1, c: 2}
    queue = deque([(a, b, c)])
    seen = {tuple(sorted((a, b, c)))}
    out = []
    while queue:
        x, y, z = queue.popleft()
        out.append(tuple(sorted((label[x], label[y], label[z]))))
        for p, q in ((x, y), (y, z), (z, x)):
            t = s.adjacent_triangle(tuple(sorted((x, y, z))), edge(p, q))
            if t is None or t in seen:
                continue
            seen.add(t)
            w = third_vertex(t, edge(p, q))
            if w not in label:
                label[w] = len(label)
            # (q, p, w) carries the orientation of (x, y, z) across the edge
            queue.append((q, p, w))
    return tuple(sorted(out))


def canonical_form(s: SimplicialSurface) -> str:
    """A string equal for two connected surfaces exactly when they are isomorphic."""
    s.require_connected()
    dmin = min(s.degree(v) for v in s.vertices)
    best = None
    for t in s.triangles:
        for i in range(3):
            a = t[i]
            if s.degree(a) != dmin:
                continue
            others = [x for x in t if x != a]
            for b, c in (others, others[::-1]):
                code = _relabel_from_flag(s, a, b, c)
                if best is None or code < best:
                    best = code
    return ";".join(",".join(map(str, f)) for f in best)


def from_canonical(code: str) -> SimplicialSurface:
    return build_surface([tuple(int(x) for x in f.split(",")) for f in code.split(";")])


# -- vertex splitting ---------------------------------------------------------------


def vertex_splits(s: SimplicialSurface) -> Iterator[SimplicialSurface]:
    """Every surface obtained by splitting one vertex into an edge.

    The link of ``v`` is cut at two of its vertices ``l_i, l_j``; the arc from
    ``l_i`` to ``l_j`` moves to a new vertex ``w`` and the triangles
    ``(v, w, l_i)``, ``(v, w, l_j)`` fill the gap.
    """
    w = max(s.vertices) + 1
    for v in sorted(s.vertices):
        lk = s.link(v)
        d = len(lk)
        for i, j in combinations(range(d), 2):
            arc = [lk[(i + m) % d] for m in range(j - i + 1)]
            moved = {(v, arc[m], arc[m + 1]) for m in range(len(arc) - 1)}
            tris = [t for t in s.triangles if not (v in t and _ring_match(t, v, moved))]
            tris += [(w, arc[m], arc[m + 1]) for m in range(len(arc) - 1)]
            tris += [(v, w, lk[i]), (v, w, lk[j])]
            yield build_surface(tris)


def _ring_match(t, v, moved) -> bool:
    x, y = (u for u in t if u != v)
    return (v, x, y) in moved or (v, y, x) in moved


def sphere_triangulations(n_max: int, cache_dir: Optional[os.PathLike] = None) -> Iterator[SimplicialSurface]:
    """All triangulated spheres with 4..n_max vertices, once each up to isomorphism.

    Output is sorted by vertex count, then by canonical form.
    """
    for _, s in sphere_corpus(n_max, cache_dir):
        yield s


def sphere_corpus(n_max: int, cache_dir: Optional[os.PathLike] = None) -> list:
    """``(canonical form, surface)`` pairs, optionally cached on disk."""
    if n_max < 4:
        raise ValueError("spheres need at least 4 vertices")
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"spheres-n{n_max}-v{CACHE_FORMAT}.jsonl"
        if path.exists():
            return load_corpus(path)
    out = []
    level = {canonical_form(build_surface(TETRAHEDRON))}
    n = 4
    while True:
        out.extend((code, from_canonical(code)) for code in sorted(level))
        log.info("n=%d: %d spheres", n, len(level))
        if n == n_max:
            break
        nxt = set()
        for code in sorted(level):
            for t in vertex_splits(from_canonical(code)):
                nxt.add(canonical_form(t))
        level = nxt
        n += 1
    if path is not None:
        save_corpus(path, out)
    return out


def save_corpus(path: os.PathLike, corpus: Iterable) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        for code, s in corpus:
            fh.write(code + "\t" + json.dumps(s.to_json(), sort_keys=True) + "\n")
    tmp.replace(path)


def load_corpus(path: os.PathLike) -> list:
    out = []
    with open(path) as fh:
        for line in fh:
            code, payload = line.rstrip("\n").split("\t", 1)
            out.append((code, build_surface(json.loads(payload)["facets"])))
    return out


# -- brute-force oracle ---------------------------------------------------------


def brute_force_spheres(n: int) -> list:
    """Maximal planar graphs on ``n`` vertices, one per isomorphism class.

    Independent of the generator: every edge set of size 3n - 6 with minimum
    degree 3 is tested for planarity, then classes are merged with a graph
    isomorphism test.  For n >= 4 these graphs are 3-connected, so each has a
    unique embedding and the classes match sphere triangulations one to one.
    """
    import networkx as nx

    if n < 4:
        return []
    pairs = list(combinations(range(n), 2))
    m = 3 * n - 6
    reps: list = []
    for es in combinations(pairs, m):
        deg = Counter(x for e in es for x in e)
        if len(deg) < n or min(deg.values()) < 3:
            continue
        g = nx.Graph(es)
        if not nx.check_planarity(g)[0]:
            continue
        if any(nx.faster_could_be_isomorphic(g, h) and nx.is_isomorphic(g, h) for h in reps):
            continue
        reps.append(g)
    return reps


def skeleton_graph(s: SimplicialSurface):
    import networkx as nx

    return nx.Graph(list(s.edges))


# -- exhaustive verification ---------------------------------------------------------


@dataclass
class CorpusReport:
    n_max: int
    ks: tuple
    census: dict = field(default_factory=dict)  # n -> number of spheres
    configurations: Counter = field(default_factory=Counter)
    theorem_violations: list = field(default_factory=list)
    remark_findings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.theorem_violations

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "ks": list(self.ks),
            "census": {str(n): c for n, c in sorted(self.census.items())},
            "configurations": dict(sorted(self.configurations.items())),
            "theorem_violations": self.theorem_violations,
            "remark_findings": self.remark_findings,
            "ok": self.ok,
        }


def _odd_configuration(s: SimplicialSurface) -> str:
    odd = sorted(v for v in s.vertices if s.degree(v) % 2)
    adj = sum(1 for a, b in combinations(odd, 2) if s.has_edge(a, b))
    return f"odd={len(odd)},adjacent_pairs={adj}"


def verify_sphere(s: SimplicialSurface, ks=(2, 3, 4, 5), report: Optional[CorpusReport] = None) -> CorpusReport:
    rep = report if report is not None else CorpusReport(s.num_vertices, tuple(ks))
    code = canonical_form(s)

    def violation(what, err):
        rep.theorem_violations.append({"sphere": code, "check": what, "error": str(err)})

    rep.configurations[_odd_configuration(s)] += 1
    if 2 in ks:
        try:
            fisk_check(s)
        except TheoremViolation as err:
            violation("two odd vertices", err)
    for k in ks:
        if k == 2:
            continue
        try:
            kr = check_kvert(s, k)
        except TheoremViolation as err:
            violation(f"two exceptional vertices k={k}", err)
            continue
        if kr.applies:
            rep.configurations[f"k={k} two exceptional"] += 1
            if not kr.remark_across_edge_ok or not kr.remark_rolling_ok:
                rep.remark_findings.append(
                    {
                        "sphere": code,
                        "k": k,
                        "exceptional": list(kr.exceptional),
                        "across_edge": list(kr.across_edge) if kr.across_edge else None,
                        "rolled_colors": dict(sorted(kr.rolled_colors.items())),
                    }
                )
    for k in ks:
        if one_exceptional(s, k):
            violation(f"one exceptional vertex k={k}", f"exactly one degree not divisible by {k}")
    try:
        check_belyi_theorem(s)
    except TheoremViolation as err:
        violation("colorability", err)
    return rep


def verify_corpus(n_max: int, ks=(2, 3, 4, 5), cache_dir=None) -> CorpusReport:
    """Run every theorem check on every sphere with at most ``n_max`` vertices."""
    rep = CorpusReport(n_max, tuple(ks))
    for s in sphere_triangulations(n_max, cache_dir):
        rep.census[s.num_vertices] = rep.census.get(s.num_vertices, 0) + 1
        verify_sphere(s, ks, rep)
    return rep
