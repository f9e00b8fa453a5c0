"""
Spherical cone metrics built from equilateral triangles with angle 2*pi/k.

Every triangle becomes the spherical equilateral triangle whose angles are
2*pi/k; its side is ``a_k`` with ``cos a_k = cos(2pi/k) / (1 - cos(2pi/k))``.
Developing across an edge reflects the third vertex through the great
circle of that edge.  Holonomy around a vertex is read off from the
developed positions, not from the angle count.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BoundaryVertex,
    NontrivialHolonomyObstruction,
    NotAdjacent,
    NotExactlyTwoExceptional,
    ShapeMismatch,
    TheoremViolation,
    UnsupportedK,
)
from .surface import SimplicialSurface, edge, third_vertex

TOL = 1e-9
LOOP_TOL = 1e-8


class Rotation:
    """Orientation-preserving isometry of the unit sphere, stored as a unit quaternion."""

    __slots__ = ("q",)

    def __init__(self, q):
        q = np.asarray(q, dtype=float)
        n = np.linalg.norm(q)
        if n == 0:
            raise ValueError("zero quaternion")
        q = q / n
        # q and -q are the same rotation; keep w >= 0
        if q[0] < 0:
            q = -q
        self.q = q

    @classmethod
    def identity(cls) -> "Rotation":
        return cls((1.0, 0.0, 0.0, 0.0))

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "Rotation":
        axis = np.asarray(axis, dtype=float)
        axis = axis / np.linalg.norm(axis)
        h = angle / 2.0
        return cls(np.concatenate(([math.cos(h)], math.sin(h) * axis)))

    @classmethod
    def from_matrix(cls, m) -> "Rotation":
        m = np.asarray(m, dtype=float)
        tr = m[0, 0] + m[1, 1] + m[2, 2]
        if tr > 0:
            s = math.sqrt(tr + 1.0) * 2
            q = (0.25 * s, (m[2, 1] - m[1, 2]) / s, (m[0, 2] - m[2, 0]) / s, (m[1, 0] - m[0, 1]) / s)
        elif m[0, 0] > m[1, 1] and m[0, 0] > m[2, 2]:
            s = math.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2]) * 2
            q = ((m[2, 1] - m[1, 2]) / s, 0.25 * s, (m[0, 1] + m[1, 0]) / s, (m[0, 2] + m[2, 0]) / s)
        elif m[1, 1] > m[2, 2]:
            s = math.sqrt(1.0 + m[1, 1] - m[0, 0] - m[2, 2]) * 2
            q = ((m[0, 2] - m[2, 0]) / s, (m[0, 1] + m[1, 0]) / s, 0.25 * s, (m[1, 2] + m[2, 1]) / s)
        else:
            s = math.sqrt(1.0 + m[2, 2] - m[0, 0] - m[1, 1]) * 2
            q = ((m[1, 0] - m[0, 1]) / s, (m[0, 2] + m[2, 0]) / s, (m[1, 2] + m[2, 1]) / s, 0.25 * s)
        return cls(q)

    @classmethod
    def between_frames(cls, src: Sequence, dst: Sequence) -> "Rotation":
        """Rotation taking frame ``(p, u)`` to ``(p', u')``; see :func:`frame`."""
        return cls.from_matrix(frame(*dst) @ frame(*src).T)

    def compose(self, other: "Rotation") -> "Rotation":
        """``self o other`` (apply ``other`` first), renormalized."""
        w1, x1, y1, z1 = self.q
        w2, x2, y2, z2 = other.q
        return Rotation(
            (
                w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
            )
        )

    __matmul__ = compose

    def inverse(self) -> "Rotation":
        w, x, y, z = self.q
        return Rotation((w, -x, -y, -z))

    def as_matrix(self) -> np.ndarray:
        w, x, y, z = self.q
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
                [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
                [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
            ]
        )

    def apply(self, v) -> np.ndarray:
        return self.as_matrix() @ np.asarray(v, dtype=float)

    @property
    def angle(self) -> float:
        """Rotation angle in [0, pi]."""
        return 2.0 * math.atan2(float(np.linalg.norm(self.q[1:])), float(self.q[0]))

    def signed_angle_about(self, axis) -> float:
        """Angle in (-pi, pi] of the rotation about the directed ``axis`` it fixes."""
        axis = np.asarray(axis, dtype=float)
        axis = axis / np.linalg.norm(axis)
        s = float(np.dot(self.q[1:], axis))
        return 2.0 * math.atan2(s, float(self.q[0]))

    def is_identity(self, tol: float = TOL) -> bool:
        return self.angle < tol

    def __repr__(self):
        return f"Rotation(angle={self.angle:.12g}, q={np.round(self.q, 12).tolist()})"


def frame(p, u) -> np.ndarray:
    """Right-handed orthonormal frame (columns) from a point and a second, non-parallel point."""
    p = np.asarray(p, dtype=float)
    p = p / np.linalg.norm(p)
    t = np.asarray(u, dtype=float) - np.dot(u, p) * p
    t = t / np.linalg.norm(t)
    return np.column_stack((p, t, np.cross(p, t)))


def _wrap(angle: float) -> float:
    """Reduce to (-pi, pi]."""
    a = math.fmod(angle, 2 * math.pi)
    if a <= -math.pi:
        a += 2 * math.pi
    elif a > math.pi:
        a -= 2 * math.pi
    return a


# -- triangle shapes ---------------------------------------------------------


def equilateral_side(k: int) -> float:
    """Side ``a_k`` of the spherical equilateral triangle with angles 2*pi/k."""
    if k not in (2, 3, 4, 5):
        raise UnsupportedK(f"spherical equilateral shapes exist for k = 2..5, not {k}")
    if k == 2:
        # hemisphere: three points equally spaced on a great circle
        return 2 * math.pi / 3
    c = math.cos(2 * math.pi / k)
    return math.acos(c / (1 - c))


@dataclass(frozen=True)
class TriangleShape:
    k: int

    @property
    def angle(self) -> float:
        return 2 * math.pi / self.k

    @property
    def side(self) -> float:
        return equilateral_side(self.k)


def central_angle(p, q) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return math.atan2(float(np.linalg.norm(np.cross(p, q))), float(np.dot(p, q)))


def vertex_angle(p, q, r) -> float:
    """Angle at ``p`` of the spherical triangle ``p q r`` (in [0, pi])."""
    p = np.asarray(p, dtype=float)
    tq = q - np.dot(q, p) * p
    tr = r - np.dot(r, p) * p
    return math.atan2(float(np.linalg.norm(np.cross(tq, tr))), float(np.dot(tq, tr)))


def standard_placement(k: int) -> tuple:
    """Three unit vectors forming the equilateral triangle of angle 2*pi/k, symmetric about +z."""
    c = math.cos(equilateral_side(k))
    # k = 2 puts the triangle on the equator
    h = 0.0 if k == 2 else math.sqrt((1 + 2 * c) / 3)
    r = math.sqrt(1 - h * h)
    return tuple(
        np.array([r * math.cos(2 * math.pi * i / 3), r * math.sin(2 * math.pi * i / 3), h]) for i in range(3)
    )


def check_shape(points, k: int, tol: float = TOL) -> None:
    a = equilateral_side(k)
    for i in range(3):
        p = np.asarray(points[i], dtype=float)
        if abs(np.linalg.norm(p) - 1) > tol:
            raise ShapeMismatch("placement vectors must be unit vectors")
        if abs(central_angle(points[i], points[(i + 1) % 3]) - a) > tol:
            raise ShapeMismatch(f"side {central_angle(points[i], points[(i + 1) % 3])} differs from a_k = {a}")


def reflect_across(p, u, v) -> np.ndarray:
    """Mirror ``p`` through the plane of the great circle through ``u`` and ``v``."""
    n = np.cross(u, v)
    n = n / np.linalg.norm(n)
    out = p - 2 * np.dot(p, n) * n
    return out / np.linalg.norm(out)


# -- developing ----------------------------------------------------------------


@dataclass
class SphericalPlacement:
    """Developed positions per triangle over a spanning tree of the dual graph."""

    k: int
    triangle_positions: dict  # triangle -> {vertex: unit vector}
    tree_edges: list = field(default_factory=list)

    @property
    def vertex_positions(self) -> dict:
        """First position assigned to each vertex (in tree order)."""
        out = {}
        for pos in self.triangle_positions.values():
            for v, p in pos.items():
                out.setdefault(v, p)
        return out

    def discrepancies(self, s: SimplicialSurface, skip=()) -> list:
        """Glued edges (outside ``skip``) whose two sides were developed differently."""
        bad = []
        skip = {edge(*e) for e in skip}
        for e in s.edges:
            pair = s.edge_triangles(e)
            if len(pair) != 2 or e in skip:
                continue
            t1, t2 = pair
            if t1 not in self.triangle_positions or t2 not in self.triangle_positions:
                continue
            p1, p2 = self.triangle_positions[t1], self.triangle_positions[t2]
            err = max(np.linalg.norm(p1[x] - p2[x]) for x in e)
            if err > LOOP_TOL:
                bad.append((e, err))
        return bad

    def is_consistent(self, s: SimplicialSurface) -> bool:
        if self.discrepancies(s):
            return False
        pos = {}
        for tpos in self.triangle_positions.values():
            for v, p in tpos.items():
                if v in pos and np.linalg.norm(pos[v] - p) > LOOP_TOL:
                    return False
                pos.setdefault(v, p)
        return True

    def to_json(self) -> dict:
        return {str(v): [float(f"{x:.12g}") for x in p] for v, p in sorted(self.vertex_positions.items())}


def develop(
    s: SimplicialSurface,
    k: int,
    root=None,
    root_placement: Optional[Sequence] = None,
    cut_edges=(),
) -> SphericalPlacement:
    """Place triangles across a breadth-first spanning tree of the dual graph.

    ``root_placement`` gives positions for the sorted vertices of ``root``.
    Edges in ``cut_edges`` are never crossed.
    """
    s.require_connected()
    root = tuple(sorted(root)) if root is not None else s.triangles[0]
    pts = tuple(np.asarray(p, dtype=float) for p in (root_placement or standard_placement(k)))
    check_shape(pts, k)
    cut = {edge(*e) for e in cut_edges}
    positions = {root: dict(zip(root, pts))}
    tree = []
    queue = deque([root])
    while queue:
        t = queue.popleft()
        pos = positions[t]
        for e, other in sorted(s.triangle_neighbors(t)):
            if other in positions or e in cut:
                continue
            w = third_vertex(t, e)
            x = third_vertex(other, e)
            positions[other] = {
                e[0]: pos[e[0]],
                e[1]: pos[e[1]],
                x: reflect_across(pos[w], pos[e[0]], pos[e[1]]),
            }
            tree.append((t, other))
            queue.append(other)
    return SphericalPlacement(k, positions, tree)


def holonomy_around_vertex(s: SimplicialSurface, k: int, v: int, placement=None) -> Rotation:
    """Composite of the edge-to-edge rotations going once around interior vertex ``v``.

    Triangles around ``v`` are developed one after another by reflection; each
    step contributes the rotation between consecutive frames at ``v``, and the
    product is compared against the developed image of the first triangle.
    """
    if not s.is_interior(v):
        raise BoundaryVertex(f"vertex {v} is on the boundary")
    lk = s.link(v)
    d = len(lk)
    pts = placement or standard_placement(k)
    t0 = tuple(sorted((v, lk[0], lk[1])))
    pos = dict(zip(t0, (np.asarray(p, dtype=float) for p in pts)))
    pv = pos[v]
    # triangle i is (v, lk[i], lk[i+1]); we cross edge (v, lk[i+1]) into triangle i+1
    cur = {lk[0]: pos[lk[0]], lk[1]: pos[lk[1]]}
    total = Rotation.identity()
    start_frame = (pv, cur[lk[0]])
    for i in range(d):
        a, b = lk[i], lk[(i + 1) % d]
        c = lk[(i + 2) % d]
        pc = reflect_across(cur[a], pv, cur[b])
        step = Rotation.between_frames((pv, cur[a]), (pv, cur[b]))
        total = step.compose(total)
        cur = {b: cur[b], c: pc}
    end_frame = (pv, cur[lk[0]])
    direct = Rotation.between_frames(start_frame, end_frame)
    if total.inverse().compose(direct).angle > LOOP_TOL:
        raise TheoremViolation("stepwise holonomy disagrees with the developed loop")
    return total


def holonomy_angle(rot: Rotation, axis) -> float:
    """Signed rotation angle about ``axis`` in (-pi, pi]."""
    return _wrap(rot.signed_angle_about(axis))


def expected_holonomy_angle(degree: int, k: int) -> float:
    return _wrap(degree * 2 * math.pi / k)


# -- theorem witnesses -------------------------------------------------------


@dataclass
class SlitReport:
    a: int
    b: int
    k: int
    arcs: tuple  # ((dev a, dev b) on one side, (dev a, dev b) on the other)
    lengths: tuple
    coincide: bool
    antipodal: bool


def slit_geodesic_images(
    s: SimplicialSurface, k: int, a: int, b: int, require_exceptional: bool = True
) -> SlitReport:
    """Develop ``s`` cut along edge ``ab`` and compare the images of the two sides."""
    if require_exceptional:
        exc = sorted(v for v in s.vertices if s.is_interior(v) and s.degree(v) % k)
        if len(exc) != 2 or set(exc) != {a, b}:
            raise NotExactlyTwoExceptional(f"exceptional vertices are {exc}, not {{{a}, {b}}}")
    if not s.has_edge(a, b):
        raise NotAdjacent(f"{a} and {b} are not adjacent")
    t1, t2 = s.edge_triangles((a, b))
    placement = develop(s, k, root=t1, cut_edges=[(a, b)])
    p1, p2 = placement.triangle_positions[t1], placement.triangle_positions[t2]
    arcs = ((p1[a], p1[b]), (p2[a], p2[b]))
    lengths = (central_angle(*arcs[0]), central_angle(*arcs[1]))
    coincide = bool(np.linalg.norm(p1[a] - p2[a]) < TOL and np.linalg.norm(p1[b] - p2[b]) < TOL)
    report = SlitReport(
        a,
        b,
        k,
        arcs,
        lengths,
        coincide,
        antipodal=bool(np.linalg.norm(p1[a] + p1[b]) < TOL),
    )
    bad = placement.discrepancies(s, skip=[(a, b)])
    if bad:
        raise NontrivialHolonomyObstruction(
            f"developing is inconsistent across {len(bad)} edges", partial=report
        )
    return report


@dataclass
class PentaReport:
    counts: dict  # k -> number of spheres with exactly one exceptional vertex
    examined: int
    witnesses: dict


def one_exceptional(s: SimplicialSurface, k: int) -> bool:
    return sum(1 for v in s.vertices if s.degree(v) % k) == 1


def check_penta_absence(corpus, ks=(2, 3, 4, 5)) -> PentaReport:
    """No sphere has exactly one vertex whose degree is not divisible by k."""
    counts = dict.fromkeys(ks, 0)
    witnesses: dict = {}
    n = 0
    for s in corpus:
        n += 1
        for k in ks:
            if one_exceptional(s, k):
                counts[k] += 1
                witnesses.setdefault(k, s)
    report = PentaReport(counts, n, witnesses)
    if any(counts.values()):
        raise TheoremViolation(f"spheres with exactly one exceptional vertex: {counts}")
    return report


def degree_sum_excludes_one_exceptional(n: int, k: int) -> bool:
    """Arithmetic reason: degrees sum to 6n - 12, so a lone exceptional degree would be 0 mod k.

    True for k dividing 6 (k = 2, 3); other k need the geometric argument.
    """
    return 6 % k == 0 and (6 * n - 12) % k == 0
